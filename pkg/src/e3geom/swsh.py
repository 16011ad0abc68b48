"""Spin-weighted spherical harmonics on the momentum sphere.

Harmonics are normalized on the unit sphere.  States on the sphere of
radius P are ``Y / P``; that rescaling is left to callers.

The phase convention is the one generated by the symmetrized spinor
products of the Newman-Penrose dyad

    o = -i (zeta, 1) / sqrt(1 + |zeta|^2),   iota = -i (1, -conj(zeta)) / sqrt(1 + |zeta|^2)

which in closed form reads

    sY_jm(theta, phi) = (-i)^(2j) (-1)^(j-s) sqrt((2j+1)/4pi) exp(i(m+s)phi) d^j_{m,s}(theta).

For s = 0 this is the Condon-Shortley Y_jm.  The tests pin the convention
three ways (s = 0 agreement, edth ladder signs, orthonormality).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np
from scipy.special import eval_jacobi

from .errors import DomainError
from .qnum import HalfInt, QNum

SQRT2 = math.sqrt(2.0)


def sqrt_frac(x: Fraction) -> float:
    """sign(x) * sqrt(|x|) with a single rounding from the exact rational."""
    if x == 0:
        return 0.0
    root = math.sqrt(float(abs(x)))
    return root if x > 0 else -root


@dataclass(frozen=True)
class SpherePoint:
    """Point of the sphere away from the poles, in polar angles (radians)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 < self.theta < math.pi):
            raise DomainError(f"theta={self.theta} must lie strictly between 0 and pi")
        object.__setattr__(self, "phi", float(self.phi) % (2 * math.pi))
        object.__setattr__(self, "theta", float(self.theta))

    @classmethod
    def from_zeta(cls, zeta: complex) -> SpherePoint:
        if zeta == 0:
            raise DomainError("zeta = 0 is the pole theta = pi")
        return cls(2.0 * math.atan(1.0 / abs(zeta)), cmath.phase(zeta))

    @property
    def zeta(self) -> complex:
        return cmath.exp(1j * self.phi) / math.tan(self.theta / 2.0)


def _check_angles(theta):
    theta = np.asarray(theta, dtype=float)
    if np.any((theta <= 0.0) | (theta >= math.pi)):
        raise DomainError("poles (theta = 0 or pi) are excluded")
    return theta


def wigner_small_d(j, mp, m, beta):
    """Wigner d^j_{mp,m}(beta) via the Jacobi-polynomial representation.

    Indices are anything HalfInt.of accepts; beta may be an array.
    """
    j2, mp2, m2 = (HalfInt.of(x).doubled for x in (j, mp, m))
    if abs(mp2) > j2 or abs(m2) > j2 or (j2 - m2) % 2 or (j2 - mp2) % 2:
        raise DomainError(f"invalid Wigner indices j={j}, m'={mp}, m={m}")
    jpm, jmm = (j2 + m2) // 2, (j2 - m2) // 2
    jpmp, jmmp = (j2 + mp2) // 2, (j2 - mp2) // 2
    k = min(jpm, jmm, jpmp, jmmp)
    if k == jpm:
        a, lam = (mp2 - m2) // 2, (mp2 - m2) // 2
    elif k == jmm:
        a, lam = (m2 - mp2) // 2, 0
    elif k == jpmp:
        a, lam = (m2 - mp2) // 2, 0
    else:
        a, lam = (mp2 - m2) // 2, (mp2 - m2) // 2
    b = j2 - 2 * k - a
    pref = math.sqrt(comb(j2 - k, k + a) / comb(k + b, b))
    beta = np.asarray(beta, dtype=float)
    half = beta / 2.0
    return ((-1) ** lam * pref * np.sin(half) ** a * np.cos(half) ** b
            * eval_jacobi(k, a, b, np.cos(beta)))


def harmonic_values(q: QNum, theta, phi):
    """Vectorized sY_jm on arrays of polar angles (poles rejected)."""
    theta = _check_angles(theta)
    phi = np.asarray(phi, dtype=float)
    j2, s2, m2 = q.j.doubled, q.s.doubled, q.m.doubled
    phase = (-1j) ** (j2 % 4) * (-1) ** ((j2 - s2) // 2)
    norm = math.sqrt((j2 + 1) / (4.0 * math.pi))
    return (phase * norm * np.exp(0.5j * (m2 + s2) * phi)
            * wigner_small_d(q.j, q.m, q.s, theta))


def eval_harmonic(q: QNum, pt: SpherePoint) -> complex:
    """Value of sY_jm at one point, unit-sphere normalized."""
    if not isinstance(q, QNum):
        raise DomainError(f"expected a QNum, got {q!r}")
    return complex(harmonic_values(q, pt.theta, pt.phi))


def edth_ladder(q: QNum, prime: bool, P: float):
    """Coefficient and target of edth (prime=False) or edth' on sY_jm.

    Returns ``(c, q_out)`` with edth sY_jm = c * (s+1)Y_jm, or
    edth' sY_jm = c * (s-1)Y_jm.  When the ladder annihilates the state the
    result is ``(0.0, None)``.
    """
    if P <= 0:
        raise DomainError("P must be positive")
    s, j = q.s.frac, q.j.frac
    if not prime:
        if j - s == 0:
            return 0.0, None
        return -sqrt_frac((j + s + 1) * (j - s) / 2) / P, QNum(q.s + 1, q.j, q.m)
    if j + s == 0:
        return 0.0, None
    return sqrt_frac((j - s + 1) * (j + s) / 2) / P, QNum(q.s - 1, q.j, q.m)


def momentum_components(theta, phi, P=1.0):
    """p^a in the stereographic chart, shape (3, ...)."""
    theta = _check_angles(theta)
    zeta = np.exp(1j * np.asarray(phi, dtype=float)) / np.tan(theta / 2.0)
    zz = (zeta * np.conj(zeta)).real
    den = 1.0 + zz
    return P * np.array([
        (2.0 * zeta.real) / den,
        (1j * (np.conj(zeta) - zeta)).real / den,
        (zz - 1.0) / den,
    ])


def null_tangent_components(theta, phi):
    """m^a in the stereographic chart, shape (3, ...), complex."""
    theta = _check_angles(theta)
    zeta = np.exp(1j * np.asarray(phi, dtype=float)) / np.tan(theta / 2.0)
    den = SQRT2 * (1.0 + (zeta * np.conj(zeta)).real)
    return np.array([(1.0 - zeta**2) / den, 1j * (1.0 + zeta**2) / den, 2.0 * zeta / den])


def momentum_direction(pt: SpherePoint, P: float) -> np.ndarray:
    """Cartesian p^a of the point on the sphere of radius P."""
    return momentum_components(pt.theta, pt.phi, P)


def null_tangent(pt: SpherePoint) -> np.ndarray:
    """Complex null tangent m^a, with m . conj(m) = 1 and m . p = 0."""
    return null_tangent_components(pt.theta, pt.phi)


@dataclass(frozen=True)
class SphereQuadrature:
    """Tensor-product rule on the unit sphere (flattened node arrays)."""

    theta: np.ndarray
    phi: np.ndarray
    weights: np.ndarray
    order: int

    @property
    def nodes(self):
        return [SpherePoint(t, p) for t, p in zip(self.theta, self.phi)]

    def integrate(self, values) -> complex:
        """Sum of weights * values over the nodes (last axis)."""
        return np.tensordot(np.asarray(values), self.weights, axes=([-1], [0]))


def build_quadrature(order: int) -> SphereQuadrature:
    """Gauss-Legendre in cos(theta) times a uniform phi grid.

    Exact for integrands that are polynomials of total degree <= order in
    cos(theta) and exp(+-i phi).
    """
    if order < 0:
        raise DomainError("quadrature order must be non-negative")
    order = max(int(order), 1)
    n_theta = order // 2 + 1
    n_phi = order + 1
    x, w = np.polynomial.legendre.leggauss(n_theta)
    theta = np.arccos(x)
    phi = np.arange(n_phi) * (2.0 * math.pi / n_phi)
    T, F = np.meshgrid(theta, phi, indexing="ij")
    W = np.outer(w, np.full(n_phi, 2.0 * math.pi / n_phi))
    return SphereQuadrature(T.ravel(), F.ravel(), W.ravel(), order)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _y1_terms(mu, s, j, m):
    """Terms of 0Y_{1,mu} * sY_jm as (j shift, sign, radicand).

    The coefficient is sign * sqrt(radicand) * sqrt(3/4pi); radicands are
    exact non-negative rationals.
    """
    terms = []
    up = (2 * j + 1) * (2 * j + 3) * (j + 1) ** 2
    low = (2 * j - 1) * (2 * j + 1) * j**2 if j > Fraction(1, 2) else None
    if mu == 0:
        terms.append((1, 1, (j + 1 + s) * (j + 1 - s) * (j + 1 + m) * (j + 1 - m) / up))
        if j > 0:
            c = s * m / (j * (j + 1))
            terms.append((0, _sign(c), c * c))
        if low is not None:
            terms.append((-1, 1, (j - s) * (j + s) * (j + m) * (j - m) / low))
        return terms
    # sqrt(3/8pi) = sqrt(1/2) * sqrt(3/4pi): the 1/2 goes into the radicands
    if mu == 1:
        terms.append((1, 1, (j - s + 1) * (j + s + 1) * (j + m + 1) * (j + m + 2) / (2 * up)))
        if j > 0:
            terms.append((0, -_sign(s), s * s * (j + m + 1) * (j - m) / (2 * j**2 * (j + 1) ** 2)))
        if low is not None:
            terms.append((-1, -1, (j - s) * (j + s) * (j - m - 1) * (j - m) / (2 * low)))
        return terms
    terms.append((1, 1, (j + 1 + s) * (j + 1 - s) * (j - m + 1) * (j - m + 2) / (2 * up)))
    if j > 0:
        terms.append((0, _sign(s), s * s * (j + m) * (j - m + 1) / (2 * j**2 * (j + 1) ** 2)))
    if low is not None:
        terms.append((-1, -1, (j + s) * (j - s) * (j + m) * (j + m - 1) / (2 * low)))
    return terms


def product_expand_y1(mu: int, q: QNum):
    """Expansion of 0Y_{1,mu} * sY_jm into sY_{j',m+mu}, j' in {j-1, j, j+1}.

    Returns a list of ``(QNum, coefficient)`` ordered by j'; targets outside
    the valid index range and exactly vanishing coefficients are omitted.
    """
    if mu not in (-1, 0, 1):
        raise DomainError(f"mu must be -1, 0 or 1, got {mu}")
    s, j, m = q.s.frac, q.j.frac, q.m.frac
    root = math.sqrt(3.0 / (4.0 * math.pi))
    out = []
    for dj, sign, rad in _y1_terms(mu, s, j, m):
        if rad == 0 or sign == 0:
            continue
        target = QNum.try_make(q.s, q.j + dj, q.m + mu)
        if target is None:
            continue
        out.append((target, sign * math.sqrt(float(rad)) * root))
    out.sort(key=lambda t: t[0].j.doubled)
    return out


def laplacian_eigenvalue(q: QNum, P: float) -> float:
    """Eigenvalue -(j^2 + j - s^2)/P^2 of edth edth' + edth' edth."""
    if P <= 0:
        raise DomainError("P must be positive")
    s, j = q.s.frac, q.j.frac
    return -float(j * j + j - s * s) / (P * P)
