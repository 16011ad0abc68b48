import json
import math

import pytest

from e3geom import oracle
from e3geom.errors import RangeError
from e3geom.operators import ElementaryParams, j_element, p_element
from e3geom.qnum import QNum


def test_quadrature_p_element_example():
    params = ElementaryParams(1.7, 0)
    bra, ket = QNum(0, 1, 0), QNum(0, 0, 0)
    got = oracle.quadrature_matrix_element("P_z", bra, ket, params)
    assert abs(got - params.P**3 / math.sqrt(3)) < 1e-11
    assert abs(got - p_element(2, bra, ket, params)) < 1e-11


def test_quadrature_j_element_example():
    params = ElementaryParams(1.3, "1/2", 0.6)
    q = QNum("1/2", "1/2", "1/2")
    got = oracle.quadrature_matrix_element("J_z", q, q, params)
    assert abs(got - params.hbar * params.P**2 / 2) < 1e-11
    assert abs(got - j_element(2, q, q, params)) < 1e-11


def test_j_element_from_p_route():
    params = ElementaryParams(0.8, 1, 1.4)
    for bra, ket in ((QNum(1, 2, 1), QNum(1, 2, 0)), (QNum(1, 3, -1), QNum(1, 3, -1))):
        for a in range(3):
            assert abs(oracle.j_element_from_p(a, bra, ket, params)
                       - j_element(a, bra, ket, params)) < 1e-11


def test_out_of_regime_raises():
    with pytest.raises(RangeError):
        oracle.quadrature_matrix_element("P_x", QNum(0, 9, 0), QNum(0, 9, 0), ElementaryParams(1.0, 0))


def test_default_suite_passes():
    report = oracle.run_suite()
    assert report.passed, report.to_text()
    assert report.to_text().rstrip().endswith("ALL PASS")
    names = [r.name for r in report.records]
    assert names == [r.name for r in oracle.run_suite(0, 0).records]


def test_tight_tolerance_reports_failures():
    report = oracle.run_suite(1, 2, 1e-16)
    assert not report.passed
    assert report.failures()
    assert report.to_text().rstrip().endswith(f"{len(report.failures())} FAILED")
    data = json.loads(report.to_json())
    assert len(data["records"]) == len(report.records)


def test_empty_range_suite():
    report = oracle.run_suite(0, 0)
    assert report.passed
    assert {r.range for r in report.records} == {"|s|<=0 j<=0"}


def test_check_records_fields():
    rec = oracle.check_orthonormality(1, 2, 1e-12)
    assert rec.passed and rec.max_abs_err < rec.tol
    assert isinstance(rec.max_rel_err, float)
