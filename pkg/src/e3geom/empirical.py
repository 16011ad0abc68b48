"""Quantum empirical distance, angle, volume and uncertainty.

A placed state is a basis state sY_jm / P moved by a rotation R (Euler
angles) and a translation xi.  Expectation values of placed states follow
from body-frame moments through the linear map

    p -> R p,    J -> R J + xi x (R p),

applied to every factor of a monomial.  The body-frame moments come from
the sparse operator algebra in ``operators``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .classical import Line3, clamped_arccos, euclidean_line_distance
from .errors import (DomainError, InternalConsistencyError,
                     UndefinedUncertaintyError)
from .operators import (ElementaryParams, StateVector, apply,
                        second_moments_closed)
from .qnum import HalfInt, QNum

LETTERS6 = ("P_x", "P_y", "P_z", "J_x", "J_y", "J_z")


@dataclass(frozen=True)
class E3Placement:
    """Euler angles (alpha, beta, gamma) in radians and a translation xi."""

    euler: tuple = (0.0, 0.0, 0.0)
    xi: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        euler = tuple(float(x) for x in self.euler)
        xi = tuple(float(x) for x in self.xi)
        if len(euler) != 3 or len(xi) != 3:
            raise DomainError("euler and xi need three components each")
        if not all(math.isfinite(x) for x in euler + xi):
            raise DomainError("placement must be finite")
        object.__setattr__(self, "euler", euler)
        object.__setattr__(self, "xi", xi)

    @property
    def rotation(self) -> np.ndarray:
        return euler_to_rotation(self.euler)

    @property
    def axis(self) -> np.ndarray:
        """Image of the body z axis, R e_z."""
        return self.rotation[:, 2]


@dataclass(frozen=True)
class PlacedState:
    """Basis state sY_jm / P of the representation ``params``, placed in space."""

    q: QNum
    params: ElementaryParams
    placement: E3Placement = field(default_factory=E3Placement)

    def __post_init__(self):
        if self.q.s != self.params.s:
            raise DomainError(f"state {self.q} does not have spin weight s={self.params.s}")


@dataclass(frozen=True)
class PairGeometry:
    """Empirical distance of a pair and its ingredients.

    ``d12`` splits as ``classical_part + quantum_part``: the first is the
    xi-dependent piece, the second the term proportional to hbar.
    ``uncertainty`` is NaN when the numerator vanishes.
    """

    d12: float
    numerator: float
    Dsq: float
    beta12: float
    uncertainty: float
    classical_ref: float
    classical_part: float
    quantum_part: float


@dataclass(frozen=True)
class UncertaintyTerms:
    """The two relative terms of the distance uncertainty and their inputs."""

    a_term: float
    b_term: float
    d12: float
    mean_A: float
    var_A: float
    mean_B: float
    var_B: float

    @property
    def total(self) -> float:
        return (self.a_term + self.b_term) * abs(self.d12)


# ---------------------------------------------------------------------------
# placements


def euler_to_rotation(euler) -> np.ndarray:
    """Rotation matrix of the Euler angles (alpha, beta, gamma)."""
    a, b, g = (float(x) for x in euler)
    ca, sa, cb, sb, cg, sg = (math.cos(a), math.sin(a), math.cos(b),
                              math.sin(b), math.cos(g), math.sin(g))
    return np.array([
        [ca * cg - sa * cb * sg, -sa * cg - ca * cb * sg, sb * sg],
        [ca * sg + sa * cb * cg, -sa * sg + ca * cb * cg, -sb * cg],
        [sa * sb, ca * sb, cb],
    ])


def cos_beta12(e1: E3Placement, e2: E3Placement) -> float:
    """(R1^-1 R2)_33, the cosine of the relative tilt of the two z axes."""
    return float((e1.rotation.T @ e2.rotation)[2, 2])


def cos_beta12_from_angles(e1: E3Placement, e2: E3Placement) -> float:
    """Same quantity from the Euler angles directly."""
    _, b1, g1 = e1.euler
    _, b2, g2 = e2.euler
    return math.cos(b1) * math.cos(b2) + math.cos(g1 - g2) * math.sin(b1) * math.sin(b2)


def line_to_placement(line: Line3) -> E3Placement:
    """Placement whose rotated z axis is the line direction, xi its foot point."""
    dx, dy, dz = line.dir
    beta = math.acos(max(-1.0, min(1.0, dz)))
    gamma = math.atan2(dx, -dy) if math.hypot(dx, dy) > 0 else 0.0
    return E3Placement((0.0, beta, gamma), tuple(line.foot()))


def placement_transform(placement: E3Placement) -> np.ndarray:
    """6x6 map of (p, J) under rotation then translation."""
    R = placement.rotation
    x, y, z = placement.xi
    cross = np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])
    L = np.zeros((6, 6))
    L[:3, :3] = R
    L[3:, 3:] = R
    L[3:, :3] = cross @ R
    return L


# ---------------------------------------------------------------------------
# body-frame moments by sparse operator application


@functools.lru_cache(maxsize=4096)
def _letter_images(q: QNum, params: ElementaryParams):
    psi = StateVector(params, {q: 1.0})
    return psi, tuple(apply([x], psi) for x in LETTERS6)


def body_first_moments(q: QNum, params: ElementaryParams) -> np.ndarray:
    """(<p>, <J>) of sY_jm / P as a length-6 real vector."""
    psi, images = _letter_images(q, params)
    return np.array([psi.inner(x).real for x in images])


@functools.lru_cache(maxsize=4096)
def body_second_moments(q: QNum, params: ElementaryParams) -> np.ndarray:
    """<X_a X_b> for X = (p, J) in sY_jm / P; complex 6x6."""
    _, images = _letter_images(q, params)
    # all letters are self-adjoint: <psi|X_a X_b psi> = <X_a psi|X_b psi>
    return np.array([[xa.inner(xb) for xb in images] for xa in images])


@functools.lru_cache(maxsize=4096)
def body_fourth_p_moments(q: QNum, params: ElementaryParams) -> np.ndarray:
    """<p_a p_b p_c p_d> in sY_jm / P; complex 3x3x3x3."""
    psi, images = _letter_images(q, params)
    pairs = [[apply([LETTERS6[a]], images[b]) for b in range(3)] for a in range(3)]
    out = np.empty((3, 3, 3, 3), dtype=complex)
    for a in range(3):
        for b in range(3):
            left = pairs[b][a]  # p_b p_a psi
            for c in range(3):
                for d in range(3):
                    out[a, b, c, d] = left.inner(pairs[c][d])
    return out


def _quantum_numbers(state: PlacedState):
    return state.q.s.frac, state.q.j.frac, state.q.m.frac


def _jj(j: Fraction) -> Fraction:
    return j * (j + 1)


# ---------------------------------------------------------------------------
# numerator and denominator


def pair_numerator_general(st1: PlacedState, st2: PlacedState) -> float:
    """Numerator from first moments of the placed states (sparse route)."""
    R1, R2 = st1.placement.rotation, st2.placement.rotation
    m1 = body_first_moments(st1.q, st1.params)
    m2 = body_first_moments(st2.q, st2.params)
    p1, J1, p2, J2 = m1[:3], m1[3:], m2[:3], m2[3:]
    rel = R1.T @ R2
    dxi = np.subtract(st1.placement.xi, st2.placement.xi)
    w12 = float(np.dot(dxi, np.cross(R1 @ p1, R2 @ p2)) + p1 @ rel @ J2 + J1 @ rel @ p2)
    p12 = float(p1 @ rel @ p2)
    kappa = st1.params.hbar * (st1.params.s.value / st1.params.P + st2.params.s.value / st2.params.P)
    return w12 - kappa * p12


def _numerator_parts(st1: PlacedState, st2: PlacedState):
    """(classical, quantum) parts of the closed-form numerator; needs s1 s2 != 0."""
    s1, j1, m1 = _quantum_numbers(st1)
    s2, j2, m2 = _quantum_numbers(st2)
    P1, P2 = st1.params.P, st2.params.P
    n1, n2 = st1.placement.axis, st2.placement.axis
    dxi = np.subtract(st1.placement.xi, st2.placement.xi)
    factor = float(s1 * s2 * m1 * m2 / (_jj(j1) * _jj(j2)))
    cb = cos_beta12(st1.placement, st2.placement)
    quantum = cb * st1.params.hbar * (float((_jj(j2) - s2 * s2) / s2) / P2
                                      + float((_jj(j1) - s1 * s1) / s1) / P1)
    classical = float(np.dot(dxi, np.cross(n1, n2)))
    return P1 * P2 * classical * factor, P1 * P2 * quantum * factor


def pair_numerator(st1: PlacedState, st2: PlacedState) -> float:
    """<W12 - hbar (s1/P1 + s2/P2) P12^2> in the product of two placed states."""
    if st1.q.s == 0 or st2.q.s == 0:
        return pair_numerator_general(st1, st2)
    c, q = _numerator_parts(st1, st2)
    return c + q


def pair_Dsq(q1: QNum, q2: QNum, beta12: float) -> float:
    """D^2 for two basis states at relative tilt beta12 (general j).

    When either j is 0 or 1/2 the second moments are isotropic and
    D^2 = 2/3 exactly.
    """
    const, slope = _dsq_coefficients(q1, q2)
    return const - slope * math.cos(beta12) ** 2


@functools.lru_cache(maxsize=65536)
def _dsq_coefficients(q1: QNum, q2: QNum):
    """(a, b) with D^2 = a - b cos^2(beta12), from exact rationals."""
    half = Fraction(1, 2)
    if q1.j <= half or q2.j <= half:
        return 2.0 / 3.0, 0.0
    s1, j1, m1 = q1.s.frac, q1.j.frac, q1.m.frac
    s2, j2, m2 = q2.s.frac, q2.j.frac, q2.m.frac
    J1, J2 = _jj(j1), _jj(j2)
    den = (2 * j1 - 1) * (2 * j1 + 3) * (2 * j2 - 1) * (2 * j2 + 3)
    first = (5 * J1 * J2 + (s1**2 - 4) * J2 + (s2**2 - 4) * J1 - 3 * s1**2 * s2**2 + 3) / den
    a1, a2 = J1 - 3 * s1**2, J2 - 3 * s2**2
    second = a1 * a2 / den * (m1**2 / J1 + m2**2 / J2 - 3 * m1**2 * m2**2 / (J1 * J2))
    third = a1 * (J1 - 3 * m1**2) * a2 * (J2 - 3 * m2**2) / (J1 * J2 * den)
    return float(1 - first - second), float(third)


def pair_Dsq_com(q1: QNum, q2: QNum, beta12: float) -> float:
    """D^2 for centre-of-mass states (j = |s| for both); beta12 may be an array."""
    if q1.j != abs(q1.s) or q2.j != abs(q2.s):
        raise DomainError("centre-of-mass form needs j = |s| for both states")
    j1, m1, j2, m2 = q1.j.frac, q1.m.frac, q2.j.frac, q2.m.frac
    coef = ((3 * m1**2 - _jj(j1)) * (3 * m2**2 - _jj(j2))
            / (3 * (j1 + 1) * (2 * j1 + 3) * (j2 + 1) * (2 * j2 + 3)))
    if coef == 0:
        # exact, whatever beta12 is
        return np.full(np.shape(beta12), 2.0 / 3.0) if np.ndim(beta12) else 2.0 / 3.0
    return 2.0 / 3.0 + float(coef) * (1.0 - 3.0 * np.cos(beta12) ** 2)


def pair_Dsq_moments(q1: QNum, q2: QNum, beta12: float) -> float:
    """D^2 by contracting closed second moments with the relative rotation."""
    unit = [ElementaryParams(1.0, q.s) for q in (q1, q2)]
    M1 = second_moments_closed(q1, unit[0])
    M2 = second_moments_closed(q2, unit[1])
    rel = euler_to_rotation((0.0, beta12, 0.0))
    return 1.0 - float(np.sum(M1 * (rel @ M2 @ rel.T)))


def _placed_p_second(st: PlacedState) -> np.ndarray:
    R = st.placement.rotation
    M = second_moments_closed(st.q, st.params) / st.params.P**2
    return R @ M @ R.T


def pair_Dsq_placed(st1: PlacedState, st2: PlacedState) -> float:
    """1 - <P12^4>/(P1^2 P2^2) from the second moments of the placed states."""
    q4 = float(np.sum(_placed_p_second(st1) * _placed_p_second(st2)))
    return 1.0 - q4 / (st1.params.P**2 * st2.params.P**2)


# ---------------------------------------------------------------------------
# distance, angle, volume


def _classical_reference(st1: PlacedState, st2: PlacedState) -> float:
    L1 = Line3(st1.placement.xi, st1.placement.axis)
    L2 = Line3(st2.placement.xi, st2.placement.axis)
    return euclidean_line_distance(L1, L2)


def empirical_distance(st1: PlacedState, st2: PlacedState,
                       with_uncertainty: bool = True) -> PairGeometry:
    """Empirical distance of two placed basis states."""
    Dsq = pair_Dsq_placed(st1, st2)
    if not Dsq > 0:
        raise InternalConsistencyError(f"D^2 = {Dsq} is not positive")
    scale = st1.params.P * st2.params.P * math.sqrt(Dsq)
    if st1.q.s == 0 or st2.q.s == 0:
        classical = quantum = 0.0
        numerator = pair_numerator_general(st1, st2)
    else:
        classical, quantum = _numerator_parts(st1, st2)
        numerator = classical + quantum
    d12 = numerator / scale
    beta = clamped_arccos(cos_beta12(st1.placement, st2.placement))
    sigma = math.nan
    if with_uncertainty and numerator != 0.0:
        try:
            sigma = uncertainty_terms(st1, st2).total
        except UndefinedUncertaintyError:
            pass
    return PairGeometry(d12=d12, numerator=numerator, Dsq=Dsq, beta12=beta,
                        uncertainty=sigma, classical_ref=_classical_reference(st1, st2),
                        classical_part=classical / scale, quantum_part=quantum / scale)


def _p_factor(st: PlacedState) -> float:
    s, j, m = _quantum_numbers(st)
    return 0.0 if j == 0 else float(s * m / _jj(j))


def empirical_angle(st1: PlacedState, st2: PlacedState) -> float:
    """Angle whose cosine is <p1 . p2>/(P1 P2), in [0, pi]."""
    c = _p_factor(st1) * _p_factor(st2) * cos_beta12(st1.placement, st2.placement)
    return clamped_arccos(c)


def minimal_empirical_angle(s1, s2) -> float:
    """Smallest empirical angle reachable with spin weights s1, s2 at j = |s|."""
    a1, a2 = abs(HalfInt.of(s1).frac), abs(HalfInt.of(s2).frac)
    return math.acos(float(a1 * a2 / ((a1 + 1) * (a2 + 1))))


def empirical_volume(st1: PlacedState, st2: PlacedState, st3: PlacedState) -> float:
    """(1/6) det[R1 e_z, R2 e_z, R3 e_z] times the product of s m / j(j+1)."""
    det = float(np.linalg.det(np.column_stack([s.placement.axis for s in (st1, st2, st3)])))
    return det / 6.0 * _p_factor(st1) * _p_factor(st2) * _p_factor(st3)


# ---------------------------------------------------------------------------
# uncertainty


def _placed_moments(st: PlacedState):
    L = placement_transform(st.placement)
    first = L @ body_first_moments(st.q, st.params)
    second = L @ body_second_moments(st.q, st.params) @ L.T
    R = st.placement.rotation
    fourth = np.einsum("ai,bj,ck,dl,ijkl->abcd", R, R, R, R,
                       body_fourth_p_moments(st.q, st.params))
    return first, second, fourth


def uncertainty_terms(st1: PlacedState, st2: PlacedState) -> UncertaintyTerms:
    """Both relative terms of the distance uncertainty from exact moments."""
    P1, P2 = st1.params.P, st2.params.P
    kappa = st1.params.hbar * (st1.params.s.value / P1 + st2.params.s.value / P2)
    f1, s1, q1 = _placed_moments(st1)
    f2, s2, q2 = _placed_moments(st2)
    G = np.zeros((6, 6))
    G[:3, :3] = -kappa * np.eye(3)
    G[:3, 3:] = np.eye(3)
    G[3:, :3] = np.eye(3)
    mean_A = float(f1 @ G @ f2)
    if _p_factor(st1) * _p_factor(st2) == 0.0 or mean_A == 0.0:
        raise UndefinedUncertaintyError("numerator vanishes; relative uncertainty undefined")
    sq_A = np.einsum("ab,cd,ac,bd->", G, G, s1, s2).real
    Q = np.sum(s1[:3, :3] * s2[:3, :3]).real
    Q2 = np.sum(q1 * q2).real
    PP = P1**2 * P2**2
    mean_B = PP - Q
    sq_B = PP**2 - 2.0 * PP * Q + Q2
    var_A = max(sq_A - mean_A**2, 0.0)
    var_B = max(sq_B - mean_B**2, 0.0)
    if not mean_B > 0:
        raise InternalConsistencyError(f"<B> = {mean_B} is not positive")
    d12 = mean_A / math.sqrt(mean_B)
    return UncertaintyTerms(a_term=math.sqrt(var_A) / abs(mean_A),
                            b_term=0.5 * math.sqrt(var_B) / mean_B,
                            d12=d12, mean_A=mean_A, var_A=var_A,
                            mean_B=mean_B, var_B=var_B)


def uncertainty(st1: PlacedState, st2: PlacedState) -> float:
    """Uncertainty of the empirical distance (same units as the distance)."""
    return uncertainty_terms(st1, st2).total


# ---------------------------------------------------------------------------
# classical limit


def classical_limit_states(line1: Line3, line2: Line3, j, p_scale: float, hbar: float = 1.0):
    """Placed states with s = m = j and P = p_scale * j realizing two lines."""
    j = HalfInt.of(j)
    if j <= 0:
        raise DomainError("j must be positive")
    params = ElementaryParams(p_scale * j.value, j, hbar)
    q = QNum(j, j, j)
    return (PlacedState(q, params, line_to_placement(line1)),
            PlacedState(q, params, line_to_placement(line2)))


def classical_limit_distance(line1: Line3, line2: Line3, j, p_scale: float,
                             hbar: float = 1.0, with_uncertainty: bool = True) -> PairGeometry:
    """Empirical distance along the sequence s = m = j, P = p_scale * j."""
    if np.linalg.norm(np.cross(line1.dir, line2.dir)) < 1e-9:
        raise DomainError("classical limit needs non-parallel lines")
    st1, st2 = classical_limit_states(line1, line2, j, p_scale, hbar)
    return empirical_distance(st1, st2, with_uncertainty=with_uncertainty)


def large_j_distance_limit(s1, s2, P1: float, P2: float, beta12: float,
                           hbar: float = 1.0, sign: int = 1) -> float:
    """Limit of d12 for fixed s, j1 = j2 -> infinity and |m1| = |m2| = j.

    ``sign`` is sign(m1 m2).  The momenta pair crosswise: s1 with P2 and
    s2 with P1.
    """
    c = math.cos(beta12)
    s1, s2 = HalfInt.of(s1).value, HalfInt.of(s2).value
    return sign * 2.0 * hbar * c * (s1 / P2 + s2 / P1) / math.sqrt(3.0 - c * c)
