from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cgprob.partitions import LambdaSpec
from cgprob.stabilization import (StabilizationError, StabilizationRow, c_minus_s_relation,
                                  difference_identities, f_as, predicted_bound, s_gl_product_check,
                                  separable_gl_series, sigma_with_one, sigma_without_one, stabilization_scan,
                                  unitary_functional_equation)

SEP, CYC, SS = (LambdaSpec.parse(t) for t in ("separable", "cyclic", "semisimple"))

# first order at which s_GL(d, q) differs from the limit, d = 1..8 (machine computation)
SEP_GL_FIRST_UNSTABLE = [1, 3, 4, 4, 5, 6, 8, 10]


def test_f_values():
    assert f_as(0, 1) == -1
    assert f_as(0, 2) == 1
    assert f_as(3, 1) == -1
    assert [f_as(0, m) for m in range(3, 13)] == [0] * 10


@given(st.integers(min_value=0, max_value=12), st.integers(min_value=1, max_value=12))
def test_f_integral(a, s):
    assert isinstance(f_as(a, s), int)


def test_f_rejects_bad_arguments():
    with pytest.raises(ValueError):
        f_as(-1, 1)
    with pytest.raises(ValueError):
        f_as(0, 0)


def test_product_formula():
    assert s_gl_product_check(1, 3)
    assert s_gl_product_check(4, 8)
    assert s_gl_product_check(6, 10)


def test_separable_series_u1_is_one():
    assert separable_gl_series(1, 5)[1].coefficients() == [1, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("group", ["gl", "u"])
@pytest.mark.parametrize("d", range(0, 6))
def test_c_minus_s(group, d):
    assert c_minus_s_relation(group, d, 12)


def test_functional_equation_and_all_differences():
    assert unitary_functional_equation(6, 8)
    assert unitary_functional_equation(5, 7)
    assert difference_identities(3, 8, 4, 4)


def test_sigma_named():
    assert sigma_with_one(SEP).value == Fraction(1, 2)
    assert sigma_with_one(CYC).value == 1
    assert sigma_with_one(SS).value == Fraction(1, 2)
    assert sigma_with_one(LambdaSpec.parse("set:[1];[2];[3]")).value == Fraction(3, 4)


def test_sigma_without_one_values():
    assert sigma_without_one(LambdaSpec.parse("set:[2]")) == (Fraction(1, 2), True, Fraction(1, 2))
    assert sigma_without_one(LambdaSpec.parse("set:[3]")).value == Fraction(2, 3)
    ss_minus_one = LambdaSpec.from_predicate(lambda p: p.parts[0] == 1 and len(p) > 1, "ss-minus-(1)")
    sig = sigma_without_one(ss_minus_one)
    assert sig.value == Fraction(3, 2)
    assert not sig.exact and sig.lower_bound == 1
    assert sigma_without_one(LambdaSpec.parse("set:[1,1];[2,1]")) == (Fraction(4, 3), True, Fraction(4, 3))


def test_sigma_inconclusive():
    every_one_part = LambdaSpec.from_predicate(lambda p: p.is_one_part, "one-part")
    sig = sigma_with_one(every_one_part, search_bound=10)
    assert not sig.exact
    assert sig.value == 1 - Fraction(1, 11)


def test_sigma_preconditions():
    with pytest.raises(ValueError):
        sigma_with_one(LambdaSpec.parse("set:[2]"))
    with pytest.raises(ValueError):
        sigma_without_one(SEP)


def test_separable_scan_gl():
    report = stabilization_scan("gl", SEP, 8, 10)
    assert report.ok
    assert [r.first_unstable_order for r in report.rows] == SEP_GL_FIRST_UNSTABLE
    assert report.row(4).first_unstable_order == 4
    assert all(r.first_unstable_order > r.d - 1 for r in report.rows)


@pytest.mark.parametrize("group", ["gl", "u"])
def test_cyclic_scan(group):
    report = stabilization_scan(group, CYC, 6, 12)
    assert report.ok
    assert all(r.first_unstable_order is None or r.first_unstable_order > 2 * r.d for r in report.rows)


def test_unitary_separable_scan():
    assert stabilization_scan("u", SEP, 8, 10).ok


def test_semisimple_general_bound():
    report = stabilization_scan("gl", SS, 8, 10)
    for r in report.rows:
        assert r.predicted_bound == -(-(r.d + 1) // 2) - 1
        assert r.first_unstable_order > r.predicted_bound


def test_vanishing_without_one():
    report = stabilization_scan("gl", LambdaSpec.parse("set:[2]"), 8, 10)
    assert report.ok
    for r in report.rows:
        assert all(c == 0 for j, c in enumerate(r.finite) if 2 * j < r.d)


def test_predicted_bound_unknown_for_u_general():
    assert predicted_bound("u", SS, 5) is None


def test_report_lists_violations():
    report = stabilization_scan("gl", SEP, 2, 4)
    report.rows.append(StabilizationRow(3, 1, 2, [1, 1, 0, 0, 0]))
    assert not report.ok
    assert report.violations()[0].d == 3
    assert "d=3 first_unstable=1 bound=2" in report.dump()


def test_strict_scan_raises(monkeypatch):
    import cgprob.stabilization as stab

    monkeypatch.setattr(stab, "predicted_bound", lambda group, spec, d: 10)
    with pytest.raises(StabilizationError, match="limit:"):
        stab.stabilization_scan("gl", SEP, 3, 5)


def test_scan_rejects_sp():
    with pytest.raises(ValueError):
        stabilization_scan("sp", SEP, 2, 4)
