"""Momentum, angular momentum, centre-of-mass and helicity operators.

Two conventions are exposed:

* ``p_element`` / ``j_element`` are integrals over the sphere of radius P
  of unit-sphere-normalized harmonics, so they carry factors P^3 and
  hbar P^2 exactly as the closed forms do.
* ``apply`` / ``moment`` act on the orthonormal states ``sY_jm / P``;
  there the p letters scale as P and the J letters as hbar.
"""

from __future__ import annotations

import functools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

import numpy as np

from .errors import DomainError
from .qnum import HalfInt, QNum

DROP_RELATIVE = 1e-15

EPS = np.zeros((3, 3, 3))
for _a, _b, _c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    EPS[_a, _b, _c] = 1.0
    EPS[_a, _c, _b] = -1.0

_AXIS_NAMES = {"x": 0, "y": 1, "z": 2, "1": 0, "2": 1, "3": 2}


def axis_index(a) -> int:
    """Map 'x'/'y'/'z' (or 0, 1, 2) to 0, 1, 2."""
    if isinstance(a, (int, np.integer)) and 0 <= a <= 2:
        return int(a)
    key = str(a).lower()
    if key in _AXIS_NAMES:
        return _AXIS_NAMES[key]
    raise DomainError(f"unknown axis {a!r}")


@dataclass(frozen=True)
class ElementaryParams:
    """Casimir data of one irreducible representation: radius P, spin weight s."""

    P: float
    s: HalfInt
    hbar: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "s", HalfInt.of(self.s))
        if not (self.P > 0 and math.isfinite(self.P)):
            raise DomainError(f"P must be positive and finite, got {self.P}")
        if not (self.hbar > 0 and math.isfinite(self.hbar)):
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        object.__setattr__(self, "P", float(self.P))
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def W(self) -> float:
        """Value of the helicity Casimir, hbar P s."""
        return self.hbar * self.P * self.s.value


# ---------------------------------------------------------------------------
# closed-form matrix elements (dimensionless columns)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


@functools.lru_cache(maxsize=200_000)
def _p_column(a: int, ket: QNum):
    """Non-zero <bra| p_a |ket> / P^3 as a tuple of (bra, value)."""
    s, j, m = ket.s.frac, ket.j.frac, ket.m.frac
    half = Fraction(1, 2)
    # (dj, dm, phase, signed radicand): value = phase * sign * sqrt(|radicand|)
    raw = []
    up = (j + s + 1) * (j - s + 1) / ((2 * j + 1) * (2 * j + 3) * 4 * (j + 1) ** 2)
    if a == 0:
        raw += [(1, -1, 1, up * (j - m + 1) * (j - m + 2)),
                (1, 1, -1, up * (j + m + 1) * (j + m + 2))]
    elif a == 1:
        raw += [(1, 1, 1j, up * (j + m + 1) * (j + m + 2)),
                (1, -1, 1j, up * (j - m + 1) * (j - m + 2))]
    else:
        raw += [(1, 0, 1, 4 * up * (j + m + 1) * (j - m + 1))]
    if j > 0:
        mid = s * s / (4 * j**2 * (j + 1) ** 2)
        sg = _sgn(s)
        if a == 0:
            raw += [(0, -1, sg, mid * (j + m) * (j - m + 1)),
                    (0, 1, sg, mid * (j - m) * (j + m + 1))]
        elif a == 1:
            raw += [(0, -1, 1j * sg, mid * (j + m) * (j - m + 1)),
                    (0, 1, -1j * sg, mid * (j - m) * (j + m + 1))]
        else:
            c = m * s / (j * (j + 1))
            raw += [(0, 0, _sgn(c), c * c)]
    if j > half:
        low = (j + s) * (j - s) / ((2 * j - 1) * (2 * j + 1) * 4 * j**2)
        if a == 0:
            raw += [(-1, 1, 1, low * (j - m) * (j - m - 1)),
                    (-1, -1, -1, low * (j + m) * (j + m - 1))]
        elif a == 1:
            raw += [(-1, -1, -1j, low * (j + m) * (j + m - 1)),
                    (-1, 1, -1j, low * (j - m) * (j - m - 1))]
        else:
            raw += [(-1, 0, 1, 4 * low * (j + m) * (j - m))]
    out = []
    for dj, dm, phase, rad in raw:
        if rad == 0 or phase == 0:
            continue
        bra = QNum.try_make(ket.s, ket.j + dj, ket.m + dm)
        if bra is None:
            continue
        out.append((bra, complex(phase) * math.sqrt(float(rad))))
    return tuple(out)


@functools.lru_cache(maxsize=200_000)
def _j_column(a: int, ket: QNum):
    """Non-zero <bra| J_a |ket> / (hbar P^2) as a tuple of (bra, value)."""
    j, m = ket.j.frac, ket.m.frac
    lower = math.sqrt(float((j + m) * (j - m + 1)))  # couples to m - 1
    raise_ = math.sqrt(float((j - m) * (j + m + 1)))  # couples to m + 1
    if a == 2:
        return ((ket, complex(float(m))),) if m != 0 else ()
    out = []
    if lower:
        bra = QNum(ket.s, ket.j, ket.m - 1)
        out.append((bra, 0.5 * lower if a == 0 else 0.5j * lower))
    if raise_:
        bra = QNum(ket.s, ket.j, ket.m + 1)
        out.append((bra, 0.5 * raise_ if a == 0 else -0.5j * raise_))
    return tuple(out)


def _check_pair(bra: QNum, ket: QNum, params: ElementaryParams):
    if bra.s != params.s or ket.s != params.s:
        raise DomainError(f"spin weights of {bra} and {ket} must equal s={params.s}")


def p_element(a, bra: QNum, ket: QNum, params: ElementaryParams) -> complex:
    """<sY_bra| p_a |sY_ket> over the sphere of radius P (carries P^3)."""
    _check_pair(bra, ket, params)
    for target, value in _p_column(axis_index(a), ket):
        if target == bra:
            return params.P**3 * value
    return 0j


def j_element(a, bra: QNum, ket: QNum, params: ElementaryParams) -> complex:
    """<sY_bra| J_a |sY_ket> over the sphere of radius P (carries hbar P^2)."""
    _check_pair(bra, ket, params)
    for target, value in _j_column(axis_index(a), ket):
        if target == bra:
            return params.hbar * params.P**2 * value
    return 0j


# ---------------------------------------------------------------------------
# states and sparse application


@dataclass(frozen=True)
class StateVector:
    """Finite expansion over the orthonormal states sY_jm / P at fixed s."""

    params: ElementaryParams
    coeffs: MappingProxyType = field(default_factory=dict)

    def __post_init__(self):
        items = {}
        for q, c in dict(self.coeffs).items():
            if not isinstance(q, QNum):
                q = QNum(*q)
            if q.s != self.params.s:
                raise DomainError(f"component {q} has spin weight other than s={self.params.s}")
            items[q] = complex(c)
        object.__setattr__(self, "coeffs", MappingProxyType(items))

    @classmethod
    def basis(cls, params: ElementaryParams, j, m) -> StateVector:
        return cls(params, {QNum(params.s, j, m): 1.0})

    def norm(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self.coeffs.values()))

    def inner(self, other: StateVector) -> complex:
        """<self|other>, antilinear in self."""
        small, large = (self, other) if len(self.coeffs) <= len(other.coeffs) else (other, self)
        total = 0j
        for q, c in small.coeffs.items():
            d = large.coeffs.get(q)
            if d is not None:
                total += c.conjugate() * d if small is self else d.conjugate() * c
        return total

    def _combine(self, other, sign):
        if other.params != self.params:
            raise DomainError("states belong to different representations")
        out = defaultdict(complex, self.coeffs)
        for q, c in other.coeffs.items():
            out[q] += sign * c
        return StateVector(self.params, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __mul__(self, scalar):
        return StateVector(self.params, {q: scalar * c for q, c in self.coeffs.items()})

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coeffs.values()), default=0.0)


LETTERS = ("P_x", "P_y", "P_z", "J_x", "J_y", "J_z", "C_x", "C_y", "C_z", "W")


def parse_letter(letter) -> str:
    """Canonical letter name; accepts 'Px', 'p_x', 'P_x', 'W' and similar."""
    text = str(letter).strip().replace("_", "")
    if text.upper() == "W":
        return "W"
    if len(text) == 2 and text[0].upper() in "PJC" and text[1].lower() in "xyz123":
        axis = "xyz"[axis_index(text[1])]
        return f"{text[0].upper()}_{axis}"
    raise DomainError(f"unknown operator letter {letter!r}")


def parse_word(word):
    """Tuple of canonical letters from a sequence or a space/comma separated string."""
    if isinstance(word, str):
        word = word.replace(",", " ").split()
    letters = tuple(parse_letter(x) for x in word)
    if not letters:
        raise DomainError("operator word must be non-empty")
    return letters


def _prune(coeffs):
    if not coeffs:
        return {}
    norm = math.sqrt(sum(abs(c) ** 2 for c in coeffs.values()))
    cut = DROP_RELATIVE * norm
    return {q: c for q, c in coeffs.items() if abs(c) > cut}


def _apply_p(a, coeffs, params):
    out = defaultdict(complex)
    for q, c in coeffs.items():
        for t, v in _p_column(a, q):
            out[t] += c * v
    return {q: params.P * c for q, c in out.items()}


def _apply_j(a, coeffs, params):
    out = defaultdict(complex)
    for q, c in coeffs.items():
        for t, v in _j_column(a, q):
            out[t] += c * v
    return {q: params.hbar * c for q, c in out.items()}


def _add_into(acc, coeffs, scale=1.0):
    for q, c in coeffs.items():
        acc[q] += scale * c


def _apply_letter(letter, coeffs, params):
    kind = letter[0]
    if kind == "W":
        out = defaultdict(complex)
        for c in range(3):
            _add_into(out, _apply_j(c, _apply_p(c, coeffs, params), params))
        return dict(out)
    a = axis_index(letter[-1])
    if kind == "P":
        return _apply_p(a, coeffs, params)
    if kind == "J":
        return _apply_j(a, coeffs, params)
    # C_a = eps_abc J_c p_b + i hbar p_a, with p applied first
    out = defaultdict(complex)
    for b in range(3):
        for c in range(3):
            if EPS[a, b, c]:
                _add_into(out, _apply_j(c, _apply_p(b, coeffs, params), params), EPS[a, b, c])
    _add_into(out, _apply_p(a, coeffs, params), 1j * params.hbar)
    return dict(out)


def apply(word, state: StateVector) -> StateVector:
    """Image of ``state`` under the operator product ``word``.

    The rightmost letter acts first, so ``apply(['J_z', 'P_x'], psi)`` is
    J_z (p_x psi).
    """
    coeffs = dict(state.coeffs)
    for letter in reversed(parse_word(word)):
        coeffs = _prune(_apply_letter(letter, coeffs, state.params))
    return StateVector(state.params, coeffs)


def apply_sum(terms, state: StateVector) -> StateVector:
    """Image under a linear combination ``[(coefficient, word), ...]``."""
    out = defaultdict(complex)
    for coef, word in terms:
        _add_into(out, apply(word, state).coeffs, coef)
    return StateVector(state.params, out)


def moment(state: StateVector, word) -> complex:
    """<state| word |state> for a normalized state."""
    if abs(state.norm() - 1.0) > 1e-12:
        raise DomainError(f"state must be normalized, norm is {state.norm()!r}")
    return state.inner(apply(word, state))


# ---------------------------------------------------------------------------
# closed forms


def second_moments_closed(q: QNum, params: ElementaryParams) -> np.ndarray:
    """<sY_jm| p^a p^b |sY_jm> over the sphere of radius P (carries P^4).

    Diagonal with xx = yy; trace P^4.  For j in {0, 1/2} the value is
    P^4/3 times the identity (the apparent singularity is removable).
    """
    if q.s != params.s:
        raise DomainError("spin weight mismatch")
    P4 = params.P**4
    s, j, m = q.s.frac, q.j.frac, q.m.frac
    if j <= Fraction(1, 2):
        return np.eye(3) * (P4 / 3.0)
    jj = j * (j + 1)
    den = jj * (2 * j - 1) * (2 * j + 3)
    xx = (-3 * s * s * m * m + jj * (s * s + m * m) + jj * (j * j + j - 1)) / den
    zz = (6 * s * s * m * m - 2 * jj * (s * s + m * m) + jj * (2 * j * j + 2 * j - 1)) / den
    return np.diag([float(xx), float(xx), float(zz)]) * P4


def first_moments_closed(q: QNum, params: ElementaryParams):
    """(<p>, <J>) in the normalized state sY_jm / P; both along z."""
    s, j, m = q.s.frac, q.j.frac, q.m.frac
    pz = 0.0 if j == 0 else params.P * float(m * s / (j * (j + 1)))
    return np.array([0.0, 0.0, pz]), np.array([0.0, 0.0, params.hbar * float(m)])


def pj_jj_moments_closed(j, sign: int, params: ElementaryParams):
    """<p^a J^b> and <J^a J^b> in the normalized state (sign j)Y_jj / P.

    The antisymmetric part is +i in the (x, y) entry and -i in (y, x).
    """
    j = HalfInt.of(j)
    if j < Fraction(1, 2):
        raise DomainError("j must be at least 1/2")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    jv = j.value
    bracket = np.array([[1.0, 1j, 0.0], [-1j, 1.0, 0.0], [0.0, 0.0, 2.0 * jv]])
    pj = sign * params.hbar * params.P * jv / (2.0 * (jv + 1.0)) * bracket
    jj = 0.5 * params.hbar**2 * jv * bracket
    return pj, jj


@dataclass(frozen=True)
class Spectra:
    """Eigenvalues of C_a C^a, J_a J^a and L_a L^a on the j eigenspace."""

    c2: float
    j2: float
    l2: float


def spectra(params: ElementaryParams, j) -> Spectra:
    j = HalfInt.of(j)
    if j < abs(params.s) or (j - params.s).doubled % 2:
        raise DomainError(f"j={j} not allowed for s={params.s}")
    s, jf = params.s.frac, j.frac
    h2 = params.hbar**2
    l2 = float(jf * jf + jf - s * s)
    return Spectra(c2=params.P**2 * h2 * (1.0 + l2), j2=h2 * float(jf * (jf + 1)), l2=h2 * l2)


def com_expectation(q: QNum, params: ElementaryParams) -> np.ndarray:
    """<C_a> in the normalized basis state, computed by sparse application."""
    psi = StateVector(params, {q: 1.0})
    vals = [moment(psi, [f"C_{x}"]) for x in "xyz"]
    return np.array(vals)
