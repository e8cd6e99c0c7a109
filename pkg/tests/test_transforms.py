from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cgprob.counts import CharParity
from cgprob.genfun import cycle_index
from cgprob.partitions import LambdaSpec
from cgprob.series import BiSeries, LaurentSeries
from cgprob.transforms import (ParityError, ProductForm, identity_sides, to_biproduct_form,
                               to_pm_biproduct_form, to_pm_product_form, to_product_form, verify_identity)

ints = st.integers(min_value=-20, max_value=20)


@st.composite
def int_series(draw, n=12):
    return [1] + draw(st.lists(ints, min_size=n, max_size=n))


@st.composite
def even_series(draw, n=12):
    return [1] + [2 * a for a in draw(st.lists(ints, min_size=n, max_size=n))]


@st.composite
def bi_terms(draw, d=4, n=5, even=False):
    terms = {(0, 0): 1}
    for i in range(1, d + 1):
        for j in range(1, n + 1):
            v = draw(st.integers(min_value=-6, max_value=6))
            terms[(i, j)] = 2 * v if even else v
    return terms


def test_simple_plain_form():
    # 1 - x = (1 - x)^1
    pf = to_product_form([1, -1, 0, 0, 0])
    assert pf.exponents == {1: 1}
    # 1/(1 - x) = (1 - x)^-1
    assert to_product_form([1, 1, 1, 1]).exponents == {1: -1}


def test_accepts_series():
    pf = to_product_form(LaurentSeries([1, -1, 0, 1], 3))
    assert pf.reconstruct() == [1, -1, 0, 1]


def test_pm_parity_error_names_index():
    with pytest.raises(ParityError, match="index 2"):
        to_pm_product_form([1, 2, 3, 0])


def test_constant_term_required():
    with pytest.raises(ValueError):
        to_product_form([2, 1])


def test_bivariate_rejects_edge_terms():
    with pytest.raises(ValueError):
        to_biproduct_form({(0, 0): 1, (0, 2): 1}, (2, 3))
    with pytest.raises(ValueError):
        to_biproduct_form({(0, 0): 1, (2, 0): 1}, (2, 3))
    with pytest.raises(ValueError):
        to_biproduct_form({(0, 0): 1, (1, 1): 1})


@given(int_series())
def test_plain_roundtrip(a):
    pf = to_product_form(a)
    assert pf.is_integral()
    assert pf.reconstruct() == a


@given(even_series())
def test_pm_roundtrip(a):
    pf = to_pm_product_form(a)
    assert pf.is_integral()
    assert pf.reconstruct() == a


@given(bi_terms())
@settings(max_examples=50)
def test_biproduct_roundtrip(t):
    pf = to_biproduct_form(t, (4, 5))
    assert pf.is_integral()
    assert pf.reconstruct() == {k: v for k, v in t.items() if v}


@given(bi_terms(even=True))
@settings(max_examples=50)
def test_pm_biproduct_roundtrip(t):
    pf = to_pm_biproduct_form(t, (4, 5))
    assert pf.is_integral()
    assert pf.reconstruct() == {k: v for k, v in t.items() if v}


@given(int_series(n=8), st.integers(min_value=1, max_value=8))
def test_pm_exponents_integral_iff_coefficients_even(a, k):
    evened = [a[0]] + [2 * x for x in a[1:]]
    assert to_pm_product_form(evened, strict=False).is_integral()
    # make one coefficient odd: the exponent at the first odd index becomes a half-integer
    evened[k] += 1
    pf = to_pm_product_form(evened, strict=False)
    assert not pf.is_integral()
    assert pf.reconstruct() == evened


@given(int_series(n=8), st.integers(min_value=1, max_value=8))
def test_plain_exponents_integral_iff_coefficients_integral(a, k):
    a = list(a)
    a[k] = a[k] + Fraction(1, 3)
    pf = to_product_form(a)
    assert not pf.is_integral()
    assert pf.reconstruct() == a


def _in_cone(i, j):
    """An additively closed set of exponents: j >= 2 i."""
    return j >= 2 * i


@given(st.dictionaries(st.tuples(st.integers(1, 3), st.integers(1, 8)).filter(lambda ij: _in_cone(*ij)),
                       st.integers(-3, 3), max_size=5))
@settings(max_examples=50)
def test_support_closed_sets_are_preserved(exps):
    exps = {k: v for k, v in exps.items() if v}
    coeffs = ProductForm(exps, "plain", (3, 8)).reconstruct()
    assert all(_in_cone(i, j) for (i, j) in coeffs if (i, j) != (0, 0))
    back = to_biproduct_form(coeffs, (3, 8))
    assert back.exponents == exps


def test_cycle_index_has_integral_product_form():
    """(1 - u) times the cyclic GL cycle index factors with integer exponents."""
    ci = cycle_index("gl", LambdaSpec.cyclic(), 4, 6)
    diff = ci * BiSeries.from_terms({(0, 0): 1, (1, 0): -1}, 4, 6)
    pf = to_biproduct_form(diff)
    assert pf.is_integral()
    assert pf.reconstruct() == {k: v for k, v in diff.terms().items() if v}


@pytest.mark.parametrize("which", list("abc"))
def test_identities_gl_u(which):
    assert verify_identity(which, 10)


@pytest.mark.parametrize("which", list("def"))
@pytest.mark.parametrize("parity", [CharParity.EVEN, CharParity.ODD])
def test_identities_sp(which, parity):
    assert verify_identity(which, 10, parity)


def test_identity_sides_first_coefficient():
    lhs, rhs = identity_sides("a", 3)
    assert lhs[1] == rhs[1]
    assert rhs[1](5) == -4  # 1 - q at q = 5


def test_unknown_identity():
    with pytest.raises(ValueError):
        verify_identity("g", 3)
