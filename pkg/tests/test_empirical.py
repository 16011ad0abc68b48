import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial.transform import Rotation

from e3geom.classical import Line3
from e3geom.empirical import (E3Placement, PlacedState, classical_limit_distance,
                              cos_beta12, cos_beta12_from_angles, empirical_angle,
                              empirical_distance, empirical_volume, euler_to_rotation,
                              large_j_distance_limit, line_to_placement,
                              minimal_empirical_angle, pair_Dsq, pair_Dsq_com,
                              pair_Dsq_moments, pair_Dsq_placed, pair_numerator,
                              pair_numerator_general, uncertainty, uncertainty_terms)
from e3geom.errors import DomainError, UndefinedUncertaintyError
from e3geom.operators import ElementaryParams, StateVector, apply, moment
from e3geom.qnum import HalfInt, QNum, basis_indices


def placed(s, j, m, P=1.0, hbar=1.0, euler=(0, 0, 0), xi=(0, 0, 0)):
    return PlacedState(QNum(s, j, m), ElementaryParams(P, s, hbar), E3Placement(euler, xi))


def random_placement(rng):
    return E3Placement(rng.uniform(0, 2 * np.pi, 3), rng.normal(size=3))


# -- placements


def test_euler_rotation_examples():
    assert np.array_equal(euler_to_rotation((0, 0, 0)), np.eye(3))
    b = 0.7
    np.testing.assert_allclose(euler_to_rotation((0, b, 0))[:, 2], (0, -math.sin(b), math.cos(b)))
    rng = np.random.default_rng(0)
    for _ in range(50):
        R = euler_to_rotation(rng.uniform(-7, 7, 3))
        np.testing.assert_allclose(R @ R.T, np.eye(3), atol=1e-14)
        assert np.linalg.det(R) == pytest.approx(1.0, abs=1e-14)


def test_cos_beta12_routes():
    e = E3Placement((0.1, 0.2, 0.3))
    assert cos_beta12(e, e) == pytest.approx(1.0)
    a = E3Placement((0, math.pi / 2, math.pi / 2))
    b = E3Placement((0, math.pi / 2, 0))
    assert cos_beta12(a, b) == pytest.approx(0.0, abs=1e-15)
    rng = np.random.default_rng(1)
    for _ in range(100):
        e1, e2 = random_placement(rng), random_placement(rng)
        assert cos_beta12(e1, e2) == pytest.approx(cos_beta12_from_angles(e1, e2), abs=1e-14)


def test_line_to_placement_realizes_line():
    rng = np.random.default_rng(2)
    for _ in range(20):
        L = Line3(rng.normal(size=3), rng.normal(size=3))
        e = line_to_placement(L)
        np.testing.assert_allclose(e.axis, L.dir, atol=1e-14)
        assert Line3(e.xi, e.axis).same_set(L)


def test_placement_validation():
    with pytest.raises(DomainError):
        E3Placement((0, 0), (0, 0, 0))
    with pytest.raises(DomainError):
        E3Placement((0, 0, 0), (math.inf, 0, 0))
    with pytest.raises(DomainError):
        PlacedState(QNum(1, 1, 0), ElementaryParams(1.0, 0))


# -- numerator


def test_numerator_vanishing_cases():
    assert pair_numerator(placed(1, 1, 0), placed(1, 1, 1, euler=(0, 1, 0), xi=(1, 2, 3))) == 0.0
    # s1 = 0 alone does not kill the numerator: <J1> . <p2> survives
    assert pair_numerator(placed(0, 1, 1), placed(1, 2, 1, xi=(1, 0, 0))) == pytest.approx(1 / 6)
    assert pair_numerator_general(placed(0, 1, 1), placed(1, 2, 1)) == pytest.approx(1 / 6)
    assert pair_numerator(placed(0, 1, 0), placed(1, 2, 1, xi=(1, 0, 0))) == 0.0
    perp = E3Placement((0, math.pi / 2, 0))
    assert pair_numerator(placed(1, 1, 1), placed(2, 2, 2, euler=perp.euler)) == pytest.approx(0, abs=1e-15)


def test_numerator_example_frozen():
    # R1 e_z = e_y needs beta = pi/2, gamma = pi; frozen from the first-moment route
    st1 = placed(1, 1, 1, euler=(0, math.pi / 2, math.pi), xi=(1, 0, 0))
    st2 = placed(1, 1, 1)
    np.testing.assert_allclose(st1.placement.axis, (0, 1, 0), atol=1e-15)
    assert pair_numerator(st1, st2) == pytest.approx(0.25, abs=1e-14)
    assert pair_numerator_general(st1, st2) == pytest.approx(0.25, abs=1e-14)


def test_numerator_routes_agree():
    rng = np.random.default_rng(3)
    for _ in range(60):
        s1, s2 = HalfInt(int(rng.integers(-4, 5))), HalfInt(int(rng.integers(-4, 5)))
        j1, j2 = abs(s1) + int(rng.integers(0, 3)), abs(s2) + int(rng.integers(0, 3))
        m1 = HalfInt(int(rng.choice(range(-j1.doubled, j1.doubled + 1, 2))))
        m2 = HalfInt(int(rng.choice(range(-j2.doubled, j2.doubled + 1, 2))))
        hb = rng.uniform(0.3, 2)
        a = PlacedState(QNum(s1, j1, m1), ElementaryParams(rng.uniform(0.3, 3), s1, hb), random_placement(rng))
        b = PlacedState(QNum(s2, j2, m2), ElementaryParams(rng.uniform(0.3, 3), s2, hb), random_placement(rng))
        assert pair_numerator(a, b) == pytest.approx(pair_numerator_general(a, b), abs=1e-11)


# -- D^2


def test_dsq_spin_half_value():
    for beta in (0.0, 0.4, math.pi / 2, 3.0):
        assert pair_Dsq(QNum("1/2", "1/2", "1/2"), QNum("1/2", "1/2", "-1/2"), beta) == pytest.approx(2 / 3)


def test_dsq_routes_agree():
    rng = np.random.default_rng(4)
    states = list(basis_indices(1, 3)) + list(basis_indices("-3/2", "5/2"))
    for _ in range(40):
        q1, q2 = (states[i] for i in rng.integers(0, len(states), 2))
        beta = rng.uniform(0, math.pi)
        assert pair_Dsq(q1, q2, beta) == pytest.approx(pair_Dsq_moments(q1, q2, beta), abs=1e-11)
    for s1 in range(-3, 4):
        for s2 in range(-3, 4):
            q1 = QNum(s1, abs(s1), abs(s1))
            q2 = QNum(s2, abs(s2), -abs(s2))
            assert pair_Dsq(q1, q2, 1.1) == pytest.approx(pair_Dsq_com(q1, q2, 1.1), abs=1e-13)


def test_dsq_depends_only_on_relative_angle():
    rng = np.random.default_rng(5)
    a = PlacedState(QNum(1, 2, 1), ElementaryParams(1.3, 1), random_placement(rng))
    b = PlacedState(QNum(-2, 3, 2), ElementaryParams(0.8, -2), random_placement(rng))
    beta = math.acos(cos_beta12(a.placement, b.placement))
    assert pair_Dsq_placed(a, b) == pytest.approx(pair_Dsq(a.q, b.q, beta), abs=1e-12)


# -- distance


def test_spin_half_universal_case():
    # parallel axes: only the hbar term survives and xi drops out
    a = placed("1/2", "1/2", "1/2", P=2.0, xi=(3, -1, 2))
    b = placed("1/2", "1/2", "1/2", P=0.5)
    g = empirical_distance(a, b)
    assert g.classical_part == pytest.approx(0.0, abs=1e-15)
    assert g.d12 == pytest.approx((2.0 + 0.5) / (2.0 * 0.5) / (3 * math.sqrt(6)))
    assert g.d12 == pytest.approx(g.classical_part + g.quantum_part)


def test_perpendicular_coincident_is_zero():
    g = empirical_distance(placed(1, 2, 1), placed(1, 2, 2, euler=(0, math.pi / 2, 0)))
    assert g.d12 == pytest.approx(0.0, abs=1e-15)
    assert math.isnan(empirical_distance(placed(1, 2, 0), placed(1, 2, 2, xi=(0, 1, 0))).uncertainty)


def test_relative_data_invariance():
    rng = np.random.default_rng(6)
    a = PlacedState(QNum(1, 2, 1), ElementaryParams(1.3, 1, 0.7), random_placement(rng))
    b = PlacedState(QNum(2, 2, -1), ElementaryParams(0.9, 2, 0.7), random_placement(rng))
    base = empirical_distance(a, b)
    for _ in range(50):
        rot = Rotation.random(random_state=rng)
        shift = rng.normal(size=3)

        def move(st):
            # euler_to_rotation is the extrinsic z-x-z sequence
            euler = (rot * Rotation.from_matrix(st.placement.rotation)).as_euler("zxz")
            xi = rot.apply(st.placement.xi) + shift
            return PlacedState(st.q, st.params, E3Placement(euler, xi))

        moved = empirical_distance(move(a), move(b))
        assert moved.d12 == pytest.approx(base.d12, abs=1e-10)
        assert moved.uncertainty == pytest.approx(base.uncertainty, abs=1e-10)


def test_euler_matches_extrinsic_zxz():
    e = (0.3, 1.1, -0.7)
    np.testing.assert_allclose(euler_to_rotation(e), Rotation.from_euler("zxz", e).as_matrix(),
                               atol=1e-15)


def test_large_j_limit_pairing():
    # s1 pairs with P2 and s2 with P1; the swapped pairing misses by far more
    beta, P1, P2 = 0.9, 0.7, 2.3
    J = 10**4
    e2 = E3Placement((0, beta, 0))
    g = empirical_distance(placed(1, J, J, P=P1), placed(-2, J, J, P=P2, euler=e2.euler),
                           with_uncertainty=False)
    limit = large_j_distance_limit(1, -2, P1, P2, beta)
    swapped = large_j_distance_limit(1, -2, P2, P1, beta)
    assert g.d12 == pytest.approx(limit, rel=1e-3)
    assert abs(g.d12 - swapped) > 100 * abs(g.d12 - limit)


# -- angle and volume


def test_angle_examples():
    assert math.degrees(empirical_angle(placed("1/2", "1/2", "1/2"), placed("1/2", "1/2", "1/2"))) \
        == pytest.approx(83.62, abs=0.01)
    assert empirical_angle(placed(1, 1, 0), placed(1, 1, 1)) == pytest.approx(math.pi / 2)
    assert minimal_empirical_angle(1, 1) == pytest.approx(math.acos(0.25))


@settings(max_examples=60, deadline=None)
@given(st.integers(-6, 6).filter(bool), st.integers(-6, 6).filter(bool),
       st.integers(0, 12), st.integers(0, 12), st.floats(0, math.pi))
def test_angle_bounds(s1, s2, k1, k2, beta):
    s1, s2 = HalfInt(s1), HalfInt(s2)
    m1 = HalfInt(-abs(s1).doubled + 2 * (k1 % (abs(s1).doubled + 1)))
    m2 = HalfInt(-abs(s2).doubled + 2 * (k2 % (abs(s2).doubled + 1)))
    a = PlacedState(QNum(s1, abs(s1), m1), ElementaryParams(1.0, s1))
    b = PlacedState(QNum(s2, abs(s2), m2), ElementaryParams(1.0, s2), E3Placement((0, beta, 0)))
    low = minimal_empirical_angle(s1, s2)
    assert low - 1e-12 <= empirical_angle(a, b) <= math.pi - low + 1e-12


def test_volume_examples():
    triad = [(0, 0, 0), (0, math.pi / 2, math.pi / 2), (0, math.pi / 2, math.pi)]
    states = [placed(1, 1, 1, euler=e) for e in triad]
    axes = np.column_stack([s.placement.axis for s in states])
    np.testing.assert_allclose(np.abs(np.linalg.det(axes)), 1.0)
    assert abs(empirical_volume(*states)) == pytest.approx(1 / 48)
    assert empirical_volume(states[0], states[0], states[1]) == pytest.approx(0.0, abs=1e-15)
    rng = np.random.default_rng(7)
    for _ in range(20):
        sts = [PlacedState(QNum(2, 3, 1), ElementaryParams(1, 2), random_placement(rng)) for _ in range(3)]
        det = np.linalg.det(np.column_stack([s.placement.axis for s in sts]))
        assert abs(empirical_volume(*sts)) <= abs(det) / 6


# -- uncertainty


def _uncertainty_config(j):
    return (placed(j, j, j, P=float(j), xi=(1, 0, 0)),
            placed(j, j, j, P=float(j), euler=(0, math.pi / 3, 0)))


def test_uncertainty_frozen_values():
    small = uncertainty(*_uncertainty_config(4))
    large = uncertainty(*_uncertainty_config(64))
    assert small == pytest.approx(0.739393638567226, rel=1e-12)
    assert large == pytest.approx(0.29768195949122733, rel=1e-12)
    assert large < small


def test_uncertainty_against_sparse_moments():
    a, b = _uncertainty_config(2)
    t = uncertainty_terms(a, b)
    # <B> and the mean of A rebuilt from single-system moments of the body states
    psi1 = StateVector.basis(a.params, a.q.j, a.q.m)
    psi2 = StateVector.basis(b.params, b.q.j, b.q.m)
    R1, R2 = a.placement.rotation, b.placement.rotation
    pp1 = np.array([[moment(psi1, [f"P_{x}", f"P_{y}"]) for y in "xyz"] for x in "xyz"]).real
    pp2 = np.array([[moment(psi2, [f"P_{x}", f"P_{y}"]) for y in "xyz"] for x in "xyz"]).real
    Q = np.sum((R1 @ pp1 @ R1.T) * (R2 @ pp2 @ R2.T))
    assert t.mean_B == pytest.approx(a.params.P**2 * b.params.P**2 - Q, rel=1e-12)
    assert t.mean_A == pytest.approx(pair_numerator(a, b), rel=1e-12)
    assert apply("W", psi1).inner(psi1) == pytest.approx(a.params.W)


def test_uncertainty_undefined():
    with pytest.raises(UndefinedUncertaintyError):
        uncertainty(placed(0, 1, 1), placed(1, 1, 1, xi=(1, 0, 0)))


def test_classical_limit_examples():
    L1, L2 = Line3((0, 0, 0), (1, 0, 0)), Line3((0, 0, 1), (0, 1, 0))
    quantum = classical_limit_distance(L1, L2, "1/2", 1.0, with_uncertainty=False)
    near = classical_limit_distance(L1, L2, 256, 1.0, with_uncertainty=False)
    assert quantum.classical_ref == pytest.approx(1.0)
    assert abs(abs(quantum.d12) - 1.0) > 0.5
    assert abs(abs(near.d12) - 1.0) < 0.05
    with pytest.raises(DomainError):
        classical_limit_distance(L1, Line3((0, 1, 0), (-1, 0, 0)), 4, 1.0)
