"""Brute-force verification of the closed forms.

Everything here is computed a second way: harmonics from spinor products,
derivatives by finite differences or pointwise ladder images, matrix
elements by sphere quadrature, operator identities by sparse application
on basis states.  ``run_suite`` collects every check into a report; checks
never raise, they record their error and a pass flag.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from . import empirical as emp
from .errors import RangeError
from .operators import (EPS, ElementaryParams, StateVector, apply,
                        j_element, p_element, parse_letter, second_moments_closed,
                        spectra)
from .qnum import HalfInt, QNum, basis_indices
from .swsh import (build_quadrature, edth_ladder, harmonic_values,
                   laplacian_eigenvalue, momentum_components,
                   null_tangent_components, product_expand_y1)

QUAD_S_MAX = HalfInt.of(3)
QUAD_J_MAX = HalfInt.of(8)
FD_STEP = 1e-5
FD_TOL_FLOOR = 1e-7
SUITE_P = 1.3
SUITE_HBAR = 0.7
AXES = "xyz"


@dataclass(frozen=True)
class CheckRecord:
    name: str
    range: str
    max_abs_err: float
    max_rel_err: float
    passed: bool
    tol: float


@dataclass(frozen=True)
class VerificationReport:
    records: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self):
        return [r for r in self.records if not r.passed]

    def to_dict(self):
        return {"passed": self.passed, "records": [asdict(r) for r in self.records]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = []
        for r in self.records:
            flag = "PASS" if r.passed else "FAIL"
            lines.append(f"{flag} {r.name:<28} {r.range:<22} abs={r.max_abs_err:.3e} "
                         f"rel={r.max_rel_err:.3e} tol={r.tol:.1e}")
        lines.append("ALL PASS" if self.passed else f"{len(self.failures())} FAILED")
        return "\n".join(lines)


def _record(name, rng, errs, scale, tol):
    abs_err = float(max(errs, default=0.0))
    rel_err = abs_err / float(scale) if scale > 0 else abs_err
    return CheckRecord(name, rng, abs_err, rel_err, bool(abs_err <= tol), tol)


# ---------------------------------------------------------------------------
# independent pointwise constructions


def spinor_harmonic(q: QNum, theta: float, phi: float) -> complex:
    """sY_jm from symmetrized products of the normalized spinor dyad."""
    zeta = complex(math.cos(phi), math.sin(phi)) / math.tan(theta / 2.0)
    n = 1.0 / math.sqrt(1.0 + abs(zeta) ** 2)
    o = (-1j * n * zeta, -1j * n)
    iota = (-1j * n, 1j * n * zeta.conjugate())
    # contract with the lowered basis O = (0, 1), I = (-1, 0)
    a, b, c, d = o[1], iota[1], -o[0], -iota[0]
    j2, s2, m2 = q.j.doubled, q.s.doubled, q.m.doubled
    n_O, n_o, n_i = (j2 - m2) // 2, (j2 + s2) // 2, (j2 - s2) // 2
    total = 0j
    for k in range(0, min(n_O, n_o) + 1):
        rest = n_O - k
        if rest > n_i:
            continue
        total += (comb(n_o, k) * comb(n_i, rest) / comb(j2, n_O)
                  * a**k * b**rest * c ** (n_o - k) * d ** (n_i - rest))
    norm = ((-1) ** ((j2 + m2) // 2) * math.sqrt((j2 + 1) / (4 * math.pi)) * factorial(j2)
            / math.sqrt(factorial((j2 - m2) // 2) * factorial((j2 + m2) // 2)
                        * factorial(n_i) * factorial(n_o)))
    return norm * total


def _harmonic_at_zeta(q: QNum, zeta: complex) -> complex:
    theta = 2.0 * math.atan(1.0 / abs(zeta))
    return complex(harmonic_values(q, theta, math.atan2(zeta.imag, zeta.real)))


def edth_finite_difference(q: QNum, zeta: complex, P: float, prime: bool = False,
                           h: float = FD_STEP) -> complex:
    """edth (or edth') of sY_jm at zeta by central differences in the chart.

    edth f = ((1 + |zeta|^2) df/dzetabar + s zeta f) / (sqrt2 P), and
    edth' f = ((1 + |zeta|^2) df/dzeta - s zetabar f) / (sqrt2 P).
    """
    f = functools.partial(_harmonic_at_zeta, q)
    dx = (f(zeta + h) - f(zeta - h)) / (2 * h)
    dy = (f(zeta + 1j * h) - f(zeta - 1j * h)) / (2 * h)
    s = q.s.value
    conf = 1.0 + abs(zeta) ** 2
    if prime:
        return (conf * 0.5 * (dx - 1j * dy) - s * zeta.conjugate() * f(zeta)) / (math.sqrt(2) * P)
    return (conf * 0.5 * (dx + 1j * dy) + s * zeta * f(zeta)) / (math.sqrt(2) * P)


def _ladder_values(q: QNum, prime: bool, P: float, theta, phi):
    coef, target = edth_ladder(q, prime, P)
    if target is None:
        return np.zeros(np.shape(theta), dtype=complex)
    return coef * harmonic_values(target, theta, phi)


@dataclass(frozen=True)
class _Grid:
    theta: np.ndarray
    phi: np.ndarray
    weights: np.ndarray
    n: np.ndarray   # unit momentum direction, (3, N)
    m: np.ndarray   # unit null tangent, (3, N)


@functools.lru_cache(maxsize=64)
def _grid(order: int) -> _Grid:
    quad = build_quadrature(order)
    return _Grid(quad.theta, quad.phi, quad.weights,
                 momentum_components(quad.theta, quad.phi, 1.0),
                 null_tangent_components(quad.theta, quad.phi))


def _operator_image(letter: str, ket: QNum, params: ElementaryParams, g: _Grid):
    """Pointwise values of (O sY_jm) on the grid, O one of the letters."""
    P, hb, s = params.P, params.hbar, params.s.value
    Y = harmonic_values(ket, g.theta, g.phi)
    eth = _ladder_values(ket, False, P, g.theta, g.phi)
    ethp = _ladder_values(ket, True, P, g.theta, g.phi)
    p = P * g.n
    m, mb = g.m, np.conj(g.m)
    if letter == "W":
        # J_a (p_a Y), with edth p_a = m_a and edth' p_a = conj(m_a)
        out = np.zeros_like(Y)
        for a in range(3):
            e = m[a] * Y + p[a] * eth
            ep = mb[a] * Y + p[a] * ethp
            out += P * hb * (m[a] * ep - mb[a] * e) + s * hb * p[a] / P * p[a] * Y
        return out
    a = "xyz".index(letter[-1])
    if letter[0] == "P":
        return p[a] * Y
    if letter[0] == "J":
        return P * hb * (m[a] * ethp - mb[a] * eth) + s * hb * p[a] / P * Y
    return 1j * hb * (P * P * m[a] * ethp + P * P * mb[a] * eth - p[a] * Y)


def _check_regime(*qs):
    for q in qs:
        if abs(q.s) > QUAD_S_MAX or q.j > QUAD_J_MAX:
            raise RangeError(f"{q} outside the quadrature regime |s| <= 3, j <= 8")


def quadrature_matrix_element(kind, bra: QNum, ket: QNum, params: ElementaryParams) -> complex:
    """<bra| O |ket> over the sphere of radius P by quadrature.

    ``kind`` is an operator letter ('P_x', 'J_z', 'C_y', 'W', ...).
    The p letters act by multiplication, J and C pointwise through the
    edth ladder.  Values carry the same powers of P as the closed forms.
    """
    letter = parse_letter(kind)
    _check_regime(bra, ket)
    if bra.s != params.s or ket.s != params.s:
        raise RangeError("bra and ket must have the spin weight of params")
    g = _grid(int(2 * (bra.j.frac + ket.j.frac + 2)))
    integrand = np.conj(harmonic_values(bra, g.theta, g.phi)) * _operator_image(letter, ket, params, g)
    return complex(params.P**2 * np.sum(g.weights * integrand))


def j_element_from_p(a, bra: QNum, ket: QNum, params: ElementaryParams) -> complex:
    """<bra| J_a |ket> assembled from p elements at spin weights s-1, s, s+1."""
    s, k, j = params.s.frac, bra.j.frac, ket.j.frac
    total = 4 * float(s) * p_element(a, bra, ket, params)
    for shift, sign in ((1, 1.0), (-1, -1.0)):
        sb = QNum.try_make(bra.s + shift, bra.j, bra.m)
        sk = QNum.try_make(ket.s + shift, ket.j, ket.m)
        if sb is None or sk is None:
            continue
        if shift == 1:
            rad = (k + s + 1) * (k - s) * (j + s + 1) * (j - s)
        else:
            rad = (k - s + 1) * (k + s) * (j - s + 1) * (j + s)
        shifted = ElementaryParams(params.P, params.s + shift, params.hbar)
        total += sign * math.sqrt(float(rad)) * p_element(a, sb, sk, shifted)
    return params.hbar / (2 * params.P) * total


# ---------------------------------------------------------------------------
# individual checks


def _spin_weights(s_max, j_max):
    top = min(HalfInt.of(s_max).doubled, HalfInt.of(j_max).doubled)
    return [HalfInt(d) for d in range(-top, top + 1)]


def _range(s_vals, j_max):
    if not s_vals:
        return "empty"
    return f"|s|<={max(abs(s) for s in s_vals)} j<={j_max}"


def _quad_setup(s: HalfInt, j_max: HalfInt):
    basis = basis_indices(s, j_max)
    g = _grid(int(2 * (2 * j_max.frac + 3)))
    Y = np.array([harmonic_values(q, g.theta, g.phi) for q in basis])
    return basis, g, Y


def _quad_limits(s_max, j_max):
    s_max = min(HalfInt.of(s_max), QUAD_S_MAX)
    j_max = min(HalfInt.of(j_max), QUAD_J_MAX)
    return s_max, j_max


def check_spinor_harmonics(s_max, j_max, tol):
    rng = np.random.default_rng(7)
    errs, svals = [], _spin_weights(s_max, j_max)
    for s in svals:
        for q in basis_indices(s, j_max):
            th, ph = rng.uniform(0.05, math.pi - 0.05), rng.uniform(0, 2 * math.pi)
            errs.append(abs(spinor_harmonic(q, th, ph) - complex(harmonic_values(q, th, ph))))
    return _record("harmonic_spinor_form", _range(svals, j_max), errs, 1.0, tol)


def check_orthonormality(s_max, j_max, tol):
    s_max, j_max = _quad_limits(s_max, j_max)
    errs, svals = [], _spin_weights(s_max, j_max)
    for s in svals:
        _, g, Y = _quad_setup(s, j_max)
        gram = (np.conj(Y) * g.weights) @ Y.T
        errs.append(np.max(np.abs(gram - np.eye(len(Y)))))
    return _record("orthonormality", _range(svals, j_max), errs, 1.0, tol)


def check_edth_finite_difference(s_max, j_max, tol):
    rng = np.random.default_rng(11)
    P = SUITE_P
    errs, svals = [], _spin_weights(s_max, j_max)
    for s in svals:
        for q in basis_indices(s, j_max):
            zeta = complex(*rng.uniform(-1.5, 1.5, 2))
            th = 2.0 * math.atan(1.0 / abs(zeta))
            ph = math.atan2(zeta.imag, zeta.real)
            for prime in (False, True):
                exact = complex(_ladder_values(q, prime, P, th, ph))
                errs.append(abs(edth_finite_difference(q, zeta, P, prime) - exact))
    tol = max(tol, FD_TOL_FLOOR)
    return _record("edth_finite_difference", _range(svals, j_max), errs, 1.0, tol)


def check_ladder_identities(s_max, j_max, tol):
    """edth' edth - edth edth' = s/P^2 and their sum is the Laplacian eigenvalue."""
    P = SUITE_P
    errs, svals = [], _spin_weights(s_max, j_max)
    for s in svals:
        for q in basis_indices(s, j_max):
            c_up, t_up = edth_ladder(q, False, P)
            c_dn, t_dn = edth_ladder(q, True, P)
            down_up = c_up * edth_ladder(t_up, True, P)[0] if t_up else 0.0
            up_down = c_dn * edth_ladder(t_dn, False, P)[0] if t_dn else 0.0
            errs.append(abs(down_up - up_down - s.value / P**2))
            errs.append(abs(down_up + up_down - laplacian_eigenvalue(q, P)))
    return _record("edth_commutator_laplacian", _range(svals, j_max), errs, 1.0, tol)


def check_product_expansion(s_max, j_max, tol):
    s_max, j_max = _quad_limits(s_max, j_max)
    errs, svals = [], _spin_weights(s_max, j_max)
    for s in svals:
        basis, g, Y = _quad_setup(s, j_max)
        index = {q: i for i, q in enumerate(basis)}
        for mu in (-1, 0, 1):
            y1 = harmonic_values(QNum(0, 1, mu), g.theta, g.phi)
            for i, q in enumerate(basis):
                if q.j + 1 > j_max:
                    continue
                proj = (np.conj(Y) * g.weights) @ (y1 * Y[i])
                expect = np.zeros(len(basis), dtype=complex)
                for target, c in product_expand_y1(mu, q):
                    expect[index[target]] = c
                errs.append(np.max(np.abs(proj - expect)))
    return _record("product_expansion_y1", _range(svals, j_max), errs, 1.0, tol)


def _quad_matrices(letter, s, j_max, params):
    basis, g, Y = _quad_setup(s, j_max)
    images = np.array([_operator_image(letter, q, params, g) for q in basis])
    return basis, params.P**2 * (np.conj(Y) * g.weights) @ images.T


def _element_check(name, letters, closed, s_max, j_max, tol):
    s_max, j_max = _quad_limits(s_max, j_max)
    errs, scale, svals = [], 0.0, _spin_weights(s_max, j_max)
    for s in svals:
        params = ElementaryParams(SUITE_P, s, SUITE_HBAR)
        for letter in letters:
            basis, quad = _quad_matrices(letter, s, j_max, params)
            ref = np.array([[closed(letter, b, k, params) for k in basis] for b in basis])
            errs.append(np.max(np.abs(quad - ref)))
            scale = max(scale, np.max(np.abs(ref)))
    return _record(name, _range(svals, j_max), errs, scale, tol)


def check_p_elements(s_max, j_max, tol):
    return _element_check("p_elements_quadrature", ("P_x", "P_y", "P_z"),
                          lambda L, b, k, pr: p_element(L[-1], b, k, pr), s_max, j_max, tol)


def check_j_elements(s_max, j_max, tol):
    return _element_check("j_elements_quadrature", ("J_x", "J_y", "J_z"),
                          lambda L, b, k, pr: j_element(L[-1], b, k, pr), s_max, j_max, tol)


@functools.lru_cache(maxsize=4096)
def _sparse_column(letter, ket, params):
    return apply([letter], StateVector(params, {ket: 1.0})).coeffs


def _sparse_element(letter, bra, ket, params):
    return params.P**2 * _sparse_column(letter, ket, params).get(bra, 0j)


def check_c_elements(s_max, j_max, tol):
    """Pointwise centre-of-mass operator against the composition J x p + i hbar p."""
    return _element_check("c_pointwise_vs_composition", ("C_x", "C_y", "C_z"),
                          _sparse_element, s_max, j_max, tol)


def check_w_quadrature(s_max, j_max, tol):
    return _element_check("w_quadrature_eigenvalue", ("W",),
                          lambda L, b, k, pr: pr.W * pr.P**2 * (b == k), s_max, j_max, tol)


def check_j_from_p(s_max, j_max, tol):
    errs, scale, svals = [], 0.0, _spin_weights(s_max, j_max)
    for s in svals:
        params = ElementaryParams(SUITE_P, s, SUITE_HBAR)
        basis = basis_indices(s, j_max)
        for a in range(3):
            for b in basis:
                for k in basis:
                    ref = j_element(a, b, k, params)
                    errs.append(abs(j_element_from_p(a, b, k, params) - ref))
                    scale = max(scale, abs(ref))
    return _record("j_elements_from_p", _range(svals, j_max), errs, scale, tol)


# sparse-algebra identities on basis states


def _letters(kind):
    return [f"{kind}_{x}" for x in AXES]


def _j_tensor(c, d):
    """J^cd = eps^cde J_e as (coefficient, word) terms."""
    return [(EPS[c, d, e], [f"J_{AXES[e]}"]) for e in range(3) if EPS[c, d, e]]


def _p_squared():
    return [(1.0, [f"P_{x}", f"P_{x}"]) for x in AXES]


def _compose(left, right):
    """Product of two term lists."""
    return [(a * b, list(wa) + list(wb)) for a, wa in left for b, wb in right]


def _commutator(left, right):
    return _compose(left, right) + [(-c, w) for c, w in _compose(right, left)]


def _single(word, coef=1.0):
    return [(coef, list(word))]


def _algebra_identities(params):
    """(name, lhs terms, rhs terms) for the operator identities."""
    hb = params.hbar
    out = []
    for a in range(3):
        for b in range(3):
            out.append(("commutator_pp", _commutator(_single([f"P_{AXES[a]}"]),
                                                     _single([f"P_{AXES[b]}"])), []))
            for c in range(3):
                for d in range(c + 1, 3):
                    lhs = _commutator(_single([f"P_{AXES[a]}"]), _j_tensor(c, d))
                    rhs = []
                    if a == c:
                        rhs += _single([f"P_{AXES[d]}"], -1j * hb)
                    if a == d:
                        rhs += _single([f"P_{AXES[c]}"], 1j * hb)
                    out.append(("commutator_pJ", lhs, rhs))
    pairs = [(0, 1), (0, 2), (1, 2)]
    for a, b in pairs:
        for c, d in pairs:
            lhs = _commutator(_j_tensor(a, b), _j_tensor(c, d))
            rhs = []
            for cond, (x, y), sign in (((b == c), (a, d), 1), ((b == d), (a, c), -1),
                                       ((a == d), (b, c), 1), ((a == c), (b, d), -1)):
                if cond:
                    rhs += [(-1j * hb * sign * k, w) for k, w in _j_tensor(x, y)]
            out.append(("commutator_JJ", lhs, rhs))
    for a in range(3):
        for b in range(3):
            lhs = _commutator(_single([f"P_{AXES[a]}"]), _single([f"C_{AXES[b]}"]))
            rhs = [(-1j * hb * k, w) for k, w in (_p_squared() if a == b else [])]
            rhs += _single([f"P_{AXES[a]}", f"P_{AXES[b]}"], 1j * hb)
            out.append(("commutator_pC", lhs, rhs))
            lhs = _commutator(_single([f"C_{AXES[a]}"]), _single([f"C_{AXES[b]}"]))
            rhs = [(-1j * hb * k, w) for k, w in _compose(_p_squared(), _j_tensor(a, b))]
            out.append(("commutator_CC", lhs, rhs))
            lhs = _compose(_p_squared(), _j_tensor(a, b))
            rhs = _single([f"C_{AXES[a]}", f"P_{AXES[b]}"]) + _single([f"C_{AXES[b]}", f"P_{AXES[a]}"], -1.0)
            rhs += [(EPS[a, b, c], [f"P_{AXES[c]}", "W"]) for c in range(3) if EPS[a, b, c]]
            out.append(("identity_P2J_CpW", lhs, rhs))
    return out


class _Images:
    """Memoized images of one state under operator words (shared suffixes)."""

    def __init__(self, psi: StateVector):
        self.psi = psi
        self._cache = {(): psi}

    def __call__(self, word) -> StateVector:
        word = tuple(word)
        if word not in self._cache:
            self._cache[word] = apply([word[0]], self(word[1:]))
        return self._cache[word]

    def combo(self, terms) -> StateVector:
        out = 0 * self.psi
        for c, w in terms:
            out = out + c * self(w)
        return out


def _residual(terms_l, terms_r, images: _Images):
    diff = images.combo(terms_l) - images.combo(terms_r)
    scale = max((images(w).max_abs() * abs(c) for c, w in terms_l), default=0.0)
    return diff.max_abs(), scale


def check_algebra(s_max, j_max, tol):
    """Commutators, the P^2 J identity, W, <C> = 0 and the Casimir spectra."""
    svals = _spin_weights(s_max, j_max)
    rng_txt = _range(svals, j_max)
    errs, scales = {}, {}

    def note(name, err, scale=1.0):
        errs.setdefault(name, []).append(err)
        scales[name] = max(scales.get(name, 0.0), scale)

    for s in svals:
        params = ElementaryParams(SUITE_P, s, SUITE_HBAR)
        identities = _algebra_identities(params)
        for q in basis_indices(s, j_max):
            psi = StateVector(params, {q: 1.0})
            images = _Images(psi)
            for name, lhs, rhs in identities:
                err, scale = _residual(lhs, rhs, images)
                note(name, err, scale)
            note("w_casimir", (images(["W"]) - params.W * psi).max_abs(), abs(params.W))
            spec = spectra(params, q.j)
            c2 = images.combo([(1.0, [c, c]) for c in _letters("C")])
            j2 = images.combo([(1.0, [c, c]) for c in _letters("J")])
            shift = params.s.value * params.hbar / params.P
            l_terms = lambda a: [(1.0, [f"J_{a}"]), (-shift, [f"P_{a}"])]
            l2 = images.combo([(x * y, wx + wy) for a in AXES
                               for x, wx in l_terms(a) for y, wy in l_terms(a)])
            note("spectrum_C2", (c2 - spec.c2 * psi).max_abs(), spec.c2)
            note("spectrum_J2", (j2 - spec.j2 * psi).max_abs(), spec.j2)
            note("spectrum_L2", (l2 - spec.l2 * psi).max_abs(), spec.l2)
        # <C_a> = 0 on a fixed-j superposition
        for j2 in range(abs(s.doubled), HalfInt.of(j_max).doubled + 1, 2):
            j = HalfInt(j2)
            ms = [HalfInt(m2) for m2 in range(-j2, j2 + 1, 2)]
            amps = np.exp(1j * np.arange(len(ms))) / math.sqrt(len(ms))
            phi = StateVector(params, {QNum(s, j, m): c for m, c in zip(ms, amps)})
            for letter in _letters("C"):
                note("com_zero_expectation", abs(phi.inner(apply([letter], phi))), params.P)
    order = ["commutator_pp", "commutator_pJ", "commutator_JJ", "commutator_pC",
             "commutator_CC", "identity_P2J_CpW", "w_casimir", "com_zero_expectation",
             "spectrum_C2", "spectrum_J2", "spectrum_L2"]
    return [_record(n, rng_txt, errs[n], scales[n], tol) for n in order if n in errs]


def check_second_moments(s_max, j_max, tol):
    errs, scale, svals = [], 0.0, _spin_weights(s_max, j_max)
    for s in svals:
        params = ElementaryParams(SUITE_P, s, SUITE_HBAR)
        for q in basis_indices(s, j_max):
            sparse = emp.body_second_moments(q, params)[:3, :3] * params.P**2
            ref = second_moments_closed(q, params)
            errs.append(np.max(np.abs(sparse - ref)))
            scale = max(scale, np.max(np.abs(ref)))
    return _record("second_moments_closed", _range(svals, j_max), errs, scale, tol)


def check_dsq(s_max, j_max, tol):
    """D^2 closed form against the moment route, and its centre-of-mass reduction."""
    svals = _spin_weights(s_max, j_max)
    betas = np.linspace(0.0, math.pi, 7)
    moment_errs, com_errs = [], []
    # D^2 depends on s and m only through their squares
    states = [q for s in svals if s >= 0 for q in basis_indices(s, j_max) if q.m >= 0]
    unit = {s: ElementaryParams(1.0, s) for s in svals}
    rotations = [emp.euler_to_rotation((0.0, b, 0.0)) for b in betas]
    for q1 in states:
        M1 = emp.body_second_moments(q1, unit[q1.s])[:3, :3].real
        for q2 in states:
            M2 = emp.body_second_moments(q2, unit[q2.s])[:3, :3].real
            for beta, rel in zip(betas, rotations):
                sparse = 1.0 - float(np.sum(M1 * (rel @ M2 @ rel.T)))
                closed = emp.pair_Dsq(q1, q2, beta)
                moment_errs.append(abs(sparse - closed))
                if q1.j == abs(q1.s) and q2.j == abs(q2.s):
                    com_errs.append(abs(emp.pair_Dsq_com(q1, q2, beta) - closed))
    rng = _range(svals, j_max)
    out = [_record("dsq_closed_vs_moments", rng, moment_errs, 1.0, tol)]
    if com_errs:
        out.append(_record("dsq_com_reduction", rng, com_errs, 1.0, tol))
    return out


def run_suite(s_max=2, j_max=6, tol: float = 1e-9) -> VerificationReport:
    """Run every cross-check; failures are recorded, never raised.

    Quadrature checks are capped at the quadrature regime |s| <= 3, j <= 8.
    """
    s_max, j_max = HalfInt.of(s_max), HalfInt.of(j_max)
    records = [
        check_spinor_harmonics(s_max, j_max, tol),
        check_orthonormality(s_max, j_max, tol),
        check_edth_finite_difference(s_max, j_max, tol),
        check_ladder_identities(s_max, j_max, tol),
        check_product_expansion(s_max, j_max, tol),
        check_p_elements(s_max, j_max, tol),
        check_j_elements(s_max, j_max, tol),
        check_j_from_p(s_max, j_max, tol),
        check_c_elements(s_max, j_max, tol),
        check_w_quadrature(s_max, j_max, tol),
    ]
    records += check_algebra(s_max, j_max, tol)
    records.append(check_second_moments(s_max, j_max, tol))
    records += check_dsq(s_max, j_max, tol)
    return VerificationReport(tuple(records))
