"""Classical E(3) elementary systems and their empirical geometry.

Orientation is right-handed (eps_123 = +1).  The angular momentum vector is
J_a = (1/2) eps_abc J^bc, the centre-of-mass moment is M^a = J^ab p_b,
which with this orientation is the cross product p x J.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from .errors import DegenerateSystemError, DomainError, UndefinedAngleError

PARALLEL_TOL = 1e-9
CLAMP_TOL = 1e-12


def _vec(x) -> np.ndarray:
    v = np.array(x, dtype=float).reshape(3)
    if not np.all(np.isfinite(v)):
        raise DomainError(f"non-finite vector {x!r}")
    return v


def clamped_arccos(x: float) -> float:
    """arccos with float-dust clamping; larger excursions are errors."""
    if abs(x) > 1.0 + CLAMP_TOL or not math.isfinite(x):
        raise DomainError(f"cosine {x!r} outside [-1, 1]")
    return math.acos(max(-1.0, min(1.0, x)))


@dataclass(frozen=True, eq=False)
class ClassicalSystem:
    """Linear momentum p and angular momentum pseudo-vector J."""

    p: np.ndarray
    J: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p", _vec(self.p))
        object.__setattr__(self, "J", _vec(self.J))

    @property
    def J_tensor(self) -> np.ndarray:
        """J^ab = eps^abc J_c."""
        x, y, z = self.J
        return np.array([[0.0, z, -y], [-z, 0.0, x], [y, -x, 0.0]])

    @property
    def M(self) -> np.ndarray:
        """M^a = J^ab p_b."""
        return np.cross(self.p, self.J)

    def translated(self, xi) -> ClassicalSystem:
        """Translation: J^ab -> J^ab + xi^a p^b - xi^b p^a."""
        return ClassicalSystem(self.p, self.J + np.cross(_vec(xi), self.p))

    def rotated(self, R) -> ClassicalSystem:
        R = np.asarray(R, dtype=float)
        return ClassicalSystem(R @ self.p, R @ self.J)


@dataclass(frozen=True, eq=False)
class Line3:
    """Directed straight line through ``point`` with unit tangent ``dir``."""

    point: np.ndarray
    dir: np.ndarray

    def __post_init__(self):
        d = _vec(self.dir)
        n = np.linalg.norm(d)
        if n == 0:
            raise DomainError("line direction must be nonzero")
        object.__setattr__(self, "point", _vec(self.point))
        object.__setattr__(self, "dir", d / n)

    def at(self, u: float) -> np.ndarray:
        return self.point + u * self.dir

    def foot(self) -> np.ndarray:
        """Intersection with the plane through the origin orthogonal to dir."""
        return self.point - np.dot(self.point, self.dir) * self.dir

    def same_set(self, other: Line3, tol: float = 1e-10) -> bool:
        """True when both lines are the same point set (either direction)."""
        parallel = np.linalg.norm(np.cross(self.dir, other.dir)) < tol
        return parallel and np.linalg.norm(np.cross(other.point - self.point, self.dir)) < tol


def _momentum(sys: ClassicalSystem) -> float:
    P = float(np.linalg.norm(sys.p))
    if P == 0.0:
        raise DegenerateSystemError("system has vanishing linear momentum")
    return P


def casimirs(sys: ClassicalSystem):
    """(P^2, W) = (p.p, J.p)."""
    return float(np.dot(sys.p, sys.p)), float(np.dot(sys.J, sys.p))


def com_line(sys: ClassicalSystem) -> Line3:
    """Centre-of-mass line q(u) = M/P^2 + u p (unit-speed parametrization)."""
    P = _momentum(sys)
    return Line3(sys.M / P**2, sys.p / P)


def system_from_line(L: Line3, P: float, W: float) -> ClassicalSystem:
    """System with momentum P along L, centre-of-mass line L and helicity W."""
    if not P > 0:
        raise DomainError("P must be positive")
    p = P * L.dir
    J = np.cross(L.foot(), p) + (W / P**2) * p
    return ClassicalSystem(p, J)


# ---------------------------------------------------------------------------
# the e(3) bracket on the basis p^a, J^ab


def _j_label(a, b):
    """Canonical (sign, label) for J^ab with a < b; None when a == b."""
    if a == b:
        return 0, None
    return (1, ("J", a, b)) if a < b else (-1, ("J", b, a))


@dataclass(frozen=True, eq=False)
class E3Element:
    """Real linear combination of p^a and J^ab (a < b), axes numbered 1..3."""

    terms: MappingProxyType

    def __post_init__(self):
        clean = {k: float(v) for k, v in dict(self.terms).items() if v != 0}
        object.__setattr__(self, "terms", MappingProxyType(clean))

    @classmethod
    def p(cls, a: int) -> E3Element:
        return cls({("p", a): 1.0})

    @classmethod
    def J(cls, a: int, b: int) -> E3Element:
        sign, label = _j_label(a, b)
        return cls({label: float(sign)} if label else {})

    @classmethod
    def basis(cls):
        return [cls.p(a) for a in (1, 2, 3)] + [cls.J(1, 2), cls.J(1, 3), cls.J(2, 3)]

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0.0) + v
        return E3Element(out)

    def __mul__(self, scalar):
        return E3Element({k: scalar * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + (-1.0) * other

    def __eq__(self, other):
        if not isinstance(other, E3Element):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(abs(self.terms.get(k, 0.0) - other.terms.get(k, 0.0)) < 1e-12 for k in keys)

    def is_zero(self, tol: float = 1e-12) -> bool:
        return all(abs(v) < tol for v in self.terms.values())

    def __repr__(self):
        parts = [f"{v:+g}*{k[0]}{''.join(map(str, k[1:]))}" for k, v in sorted(self.terms.items())]
        return "E3Element(" + (" ".join(parts) or "0") + ")"


def _delta(a, b):
    return 1.0 if a == b else 0.0


def _bracket_basis(x, y):
    """Bracket of two basis labels as a dict of labels."""
    out = {}

    def add_p(c, coef):
        if coef:
            out[("p", c)] = out.get(("p", c), 0.0) + coef

    def add_j(a, b, coef):
        sign, label = _j_label(a, b)
        if coef and label:
            out[label] = out.get(label, 0.0) + sign * coef

    if x[0] == "p" and y[0] == "p":
        return out
    if x[0] == "p":
        a, (b, c) = x[1], y[1:]
        add_p(c, _delta(a, b))
        add_p(b, -_delta(a, c))
        return out
    if y[0] == "p":
        return {k: -v for k, v in _bracket_basis(y, x).items()}
    a, b = x[1:]
    c, d = y[1:]
    add_j(a, d, _delta(b, c))
    add_j(a, c, -_delta(b, d))
    add_j(b, c, _delta(a, d))
    add_j(b, d, -_delta(a, c))
    return out


def e3_bracket(X: E3Element, Y: E3Element) -> E3Element:
    """Lie bracket of e(3) extended bilinearly from the basis."""
    out = {}
    for kx, vx in X.terms.items():
        for ky, vy in Y.terms.items():
            for k, v in _bracket_basis(kx, ky).items():
                out[k] = out.get(k, 0.0) + vx * vy * v
    return E3Element(out)


# ---------------------------------------------------------------------------
# empirical geometry


def _pair_invariants(sys1, sys2):
    P1, P2 = _momentum(sys1), _momentum(sys2)
    P12 = float(np.dot(sys1.p, sys2.p))
    W1 = float(np.dot(sys1.J, sys1.p))
    W2 = float(np.dot(sys2.J, sys2.p))
    W12 = float(np.dot(sys1.p, sys2.J) + np.dot(sys1.J, sys2.p))
    return P1, P2, P12, W1, W2, W12


def _parallel(u, v) -> bool:
    return np.linalg.norm(np.cross(u / np.linalg.norm(u), v / np.linalg.norm(v))) < PARALLEL_TOL


def empirical_distance_classical(sys1: ClassicalSystem, sys2: ClassicalSystem) -> float:
    """Signed distance of the centre-of-mass lines from Casimir-type invariants.

    Parallel momenta use the limit formula; its sign depends on an
    arbitrary choice of the auxiliary normal, so only |d| is meaningful there.
    """
    P1, P2, P12, W1, W2, W12 = _pair_invariants(sys1, sys2)
    if _parallel(sys1.p, sys2.p):
        v = sys1.p / P1
        delta = sys1.M / P1**2 - sys2.M / P2**2
        delta = delta - np.dot(delta, v) * v
        if np.linalg.norm(delta) == 0.0:
            return 0.0
        w = np.cross(delta, v)
        w /= np.linalg.norm(w)
        return float(np.dot(delta, np.cross(v, w)))
    numer = W12 - W1 * P12 / P1**2 - W2 * P12 / P2**2
    return numer / math.sqrt(P1**2 * P2**2 - P12**2)


def relative_position(sys1: ClassicalSystem, sys2: ClassicalSystem) -> np.ndarray:
    """Vector orthogonal to both momenta, from line 2 to line 1."""
    P1, P2, P12, W1, W2, W12 = _pair_invariants(sys1, sys2)
    if _parallel(sys1.p, sys2.p):
        raise DegenerateSystemError("parallel momenta: relative position is not unique")
    numer = W12 - W1 * P12 / P1**2 - W2 * P12 / P2**2
    return numer / (P1**2 * P2**2 - P12**2) * np.cross(sys1.p, sys2.p)


def euclidean_line_distance(L1: Line3, L2: Line3) -> float:
    """Minimal distance between two straight lines."""
    diff = L2.point - L1.point
    n = np.cross(L1.dir, L2.dir)
    nn = np.linalg.norm(n)
    if nn < PARALLEL_TOL:
        return float(np.linalg.norm(np.cross(diff, L1.dir)))
    return float(abs(np.dot(diff, n)) / nn)


def empirical_angle_classical(sys1: ClassicalSystem, sys2: ClassicalSystem) -> float:
    """Angle between the two linear momenta, in [0, pi]."""
    P1, P2 = _momentum(sys1), _momentum(sys2)
    return clamped_arccos(float(np.dot(sys1.p, sys2.p)) / (P1 * P2))


def empirical_volume_classical(sys1, sys2, sys3) -> float:
    """Signed volume of the tetrahedron spanned by the unit momenta."""
    P = [_momentum(s) for s in (sys1, sys2, sys3)]
    mat = np.column_stack([sys1.p / P[0], sys2.p / P[1], sys3.p / P[2]])
    return float(np.linalg.det(mat)) / 6.0


def varpi_angle(sys1, sys2, sys3) -> float:
    """Angle between eps p1 p2 and eps p3 p2, from Casimir-type invariants.

    It equals the angle between the relative position vectors d12 and d32
    when the signed distances d12, d32 have equal signs, and its supplement
    otherwise.
    """
    P1, P2, P3 = (_momentum(s) for s in (sys1, sys2, sys3))
    P12 = float(np.dot(sys1.p, sys2.p))
    P13 = float(np.dot(sys1.p, sys3.p))
    P23 = float(np.dot(sys2.p, sys3.p))
    g12 = P1**2 * P2**2 - P12**2
    g32 = P2**2 * P3**2 - P23**2
    if _parallel(sys1.p, sys2.p) or _parallel(sys3.p, sys2.p):
        raise UndefinedAngleError("varpi needs p1, p3 non-parallel to p2")
    return clamped_arccos((P2**2 * P13 - P12 * P23) / math.sqrt(g12 * g32))
