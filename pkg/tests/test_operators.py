import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from e3geom.errors import DomainError
from e3geom.operators import (EPS, ElementaryParams, StateVector, apply, apply_sum,
                              com_expectation, first_moments_closed, j_element, moment,
                              p_element, parse_letter, parse_word, pj_jj_moments_closed,
                              second_moments_closed, spectra)
from e3geom.qnum import HalfInt, QNum, basis_indices

PARAMS = ElementaryParams(1.3, 1, 0.7)


def _mixed_state(params=PARAMS):
    return StateVector(params, {QNum(params.s, 2, 1): 0.6, QNum(params.s, 3, -1): 0.8j})


def test_params_validation():
    with pytest.raises(DomainError):
        ElementaryParams(0.0, 1)
    with pytest.raises(DomainError):
        ElementaryParams(1.0, 1, hbar=-1)
    assert ElementaryParams(2.0, "1/2", 0.5).W == pytest.approx(0.5)


@pytest.mark.parametrize("text,expected", [("Px", "P_x"), ("j_3", "J_z"), ("c2", "C_y"), ("w", "W")])
def test_parse_letter(text, expected):
    assert parse_letter(text) == expected


def test_parse_word_rejects():
    assert parse_word("P_x, J_y") == ("P_x", "J_y")
    with pytest.raises(DomainError):
        parse_word("")
    with pytest.raises(DomainError):
        parse_letter("Q_x")


def test_state_spin_weight_checked():
    with pytest.raises(DomainError):
        StateVector(PARAMS, {QNum(0, 1, 0): 1.0})
    with pytest.raises(DomainError):
        moment(StateVector(PARAMS, {QNum(1, 1, 0): 2.0}), "P_x")


def test_matrix_elements_hermitian():
    states = list(basis_indices(1, 3))
    for a in range(3):
        for bra, ket in itertools.product(states, repeat=2):
            for elem in (p_element, j_element):
                assert elem(a, bra, ket, PARAMS) == pytest.approx(
                    np.conj(elem(a, ket, bra, PARAMS)), abs=1e-13)


@pytest.mark.parametrize("a,b", list(itertools.product(range(3), repeat=2)))
def test_commutators(a, b):
    psi = _mixed_state()
    hb = PARAMS.hbar
    names = "xyz"
    jj = apply([f"J_{names[a]}", f"J_{names[b]}"], psi) - apply([f"J_{names[b]}", f"J_{names[a]}"], psi)
    jp = apply([f"J_{names[a]}", f"P_{names[b]}"], psi) - apply([f"P_{names[b]}", f"J_{names[a]}"], psi)
    pp = apply([f"P_{names[a]}", f"P_{names[b]}"], psi) - apply([f"P_{names[b]}", f"P_{names[a]}"], psi)
    want_j = apply_sum([(1j * hb * EPS[a, b, c], [f"J_{names[c]}"]) for c in range(3) if EPS[a, b, c]], psi)
    want_p = apply_sum([(1j * hb * EPS[a, b, c], [f"P_{names[c]}"]) for c in range(3) if EPS[a, b, c]], psi)
    assert (jj - want_j).max_abs() < 1e-12
    assert (jp - want_p).max_abs() < 1e-12
    assert pp.max_abs() < 1e-12


def test_casimirs_act_as_scalars():
    psi = _mixed_state()
    p2 = apply_sum([(1.0, [f"P_{x}", f"P_{x}"]) for x in "xyz"], psi)
    assert (p2 - PARAMS.P**2 * psi).max_abs() < 1e-12
    assert (apply("W", psi) - PARAMS.W * psi).max_abs() < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(-4, 4), st.integers(0, 4), st.floats(0.3, 4.0), st.floats(0.2, 2.0))
def test_spectra_match_operator_action(s2, extra, P, hbar):
    s = HalfInt(s2)
    j = abs(s) + extra
    params = ElementaryParams(P, s, hbar)
    psi = StateVector.basis(params, j, j)
    sp = spectra(params, j)
    j2 = apply_sum([(1.0, [f"J_{x}", f"J_{x}"]) for x in "xyz"], psi)
    c2 = apply_sum([(1.0, [f"C_{x}", f"C_{x}"]) for x in "xyz"], psi)
    assert (j2 - sp.j2 * psi).max_abs() < 1e-10 * max(1.0, sp.j2)
    assert (c2 - sp.c2 * psi).max_abs() < 1e-10 * max(1.0, sp.c2)
    assert sp.j2 - sp.l2 == pytest.approx(hbar**2 * s.value**2)


def test_spectra_rejects_bad_j():
    with pytest.raises(DomainError):
        spectra(PARAMS, 0)
    with pytest.raises(DomainError):
        spectra(PARAMS, "3/2")


def test_second_moments_closed_vs_sparse():
    for q in basis_indices(1, 4):
        closed = second_moments_closed(q, PARAMS) / PARAMS.P**2
        psi = StateVector.basis(PARAMS, q.j, q.m)
        direct = np.array([[moment(psi, [f"P_{a}", f"P_{b}"]) for b in "xyz"] for a in "xyz"])
        np.testing.assert_allclose(direct, closed, atol=1e-12)
        assert np.trace(closed) == pytest.approx(PARAMS.P**2)


def test_second_moments_isotropic_for_small_j():
    params = ElementaryParams(1.0, "1/2")
    np.testing.assert_allclose(second_moments_closed(QNum("1/2", "1/2", "-1/2"), params),
                               np.eye(3) / 3, atol=1e-15)


def test_first_moments_closed_vs_sparse():
    for q in basis_indices(1, 3):
        p, J = first_moments_closed(q, PARAMS)
        psi = StateVector.basis(PARAMS, q.j, q.m)
        np.testing.assert_allclose([moment(psi, [f"P_{a}"]) for a in "xyz"], p, atol=1e-12)
        np.testing.assert_allclose([moment(psi, [f"J_{a}"]) for a in "xyz"], J, atol=1e-12)


@pytest.mark.parametrize("j,sign", [(1, 1), (2, -1), (3, 1)])
def test_pj_jj_closed_vs_sparse(j, sign):
    params = ElementaryParams(1.3, sign * j, 0.7)
    psi = StateVector.basis(params, j, j)
    pj, jj = pj_jj_moments_closed(j, sign, params)
    pj_direct = np.array([[moment(psi, [f"P_{a}", f"J_{b}"]) for b in "xyz"] for a in "xyz"])
    jj_direct = np.array([[moment(psi, [f"J_{a}", f"J_{b}"]) for b in "xyz"] for a in "xyz"])
    np.testing.assert_allclose(pj_direct, pj, atol=1e-12)
    np.testing.assert_allclose(jj_direct, jj, atol=1e-12)


def test_com_expectation_vanishes():
    for q in basis_indices("-3/2", "7/2"):
        params = ElementaryParams(0.9, q.s, 1.1)
        assert np.max(np.abs(com_expectation(q, params))) < 1e-12


def test_ground_state_second_moment_units():
    # the closed form integrates over the radius-P sphere (P^4 / 3); moment()
    # uses the normalized state sY/P, so the same quantity reads P^2 / 3
    params = ElementaryParams(2.0, 0)
    psi = StateVector.basis(params, 0, 0)
    assert moment(psi, ["P_x", "P_x"]) == pytest.approx(params.P**2 / 3)
    np.testing.assert_allclose(second_moments_closed(QNum(0, 0, 0), params),
                               np.eye(3) * params.P**4 / 3)
