import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cgprob.counts import count_N
from cgprob.fq import (SUPPORTED_Q, charpoly, field, identity, irreducibles, mat_inv, mat_mul, poly_divmod,
                       poly_mul, poly_str, rank)
from cgprob.genfun import finite_prob_exact
from cgprob.oracle import (InfeasibleError, census, census_many, factor, group_order, monte_carlo_gl, profile,
                           random_gl)
from cgprob.partitions import LambdaSpec, Partition

SEP, CYC, SS, ALL = (LambdaSpec.parse(t) for t in ("separable", "cyclic", "semisimple", "all"))


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_field_axioms(q):
    F = field(q)
    r = range(q)
    for a in r:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        for b in r:
            for c in r:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


@pytest.mark.parametrize("q,p", [(4, 2), (8, 2), (9, 3)])
def test_frobenius_is_an_automorphism(q, p):
    F = field(q)
    frob = [F.power(x, p) for x in range(q)]
    assert sorted(frob) == list(range(q))
    for a in range(q):
        for b in range(q):
            assert frob[F.mul(a, b)] == F.mul(frob[a], frob[b])
            assert frob[F.add(a, b)] == F.add(frob[a], frob[b])
    # the prime field is fixed
    assert all(frob[x] == x for x in range(p))


def test_unsupported_field():
    with pytest.raises(ValueError):
        field(6)


def test_irreducible_examples():
    assert [f for f in irreducibles(2, 2) if len(f) == 3] == [(1, 1, 1)]
    assert [f for f in irreducibles(2, 1)] == [(0, 1), (1, 1)]
    assert len([f for f in irreducibles(2, 3) if len(f) == 4]) == count_N(3, 2)
    assert poly_str((1, 1, 1)) == "z^2 + z + 1"


@given(st.sampled_from([2, 3, 5]), st.data())
@settings(max_examples=30)
def test_factor_reconstructs(q, data):
    F = field(q)
    coeffs = data.draw(st.lists(st.integers(0, q - 1), min_size=1, max_size=5))
    f = tuple(coeffs) + (1,)
    prod_ = (1,)
    for g, m in factor(F, f):
        for _ in range(m):
            prod_ = poly_mul(F, prod_, g)
    assert prod_ == f
    for g, _ in factor(F, f):
        assert g in irreducibles(q, len(f) - 1)


def test_poly_divmod():
    F = field(3)
    a, b = (2, 0, 1, 1), (1, 1)
    quo, rem = poly_divmod(F, a, b)
    back = poly_mul(F, quo, b)
    n = max(len(back), len(rem))
    total = tuple(F.add(back[i] if i < len(back) else 0, rem[i] if i < len(rem) else 0) for i in range(n))
    assert total == a


def test_profile_examples():
    assert profile(((1, 0), (0, 1)), 2) == {(1, 1): Partition.of(1, 1)}
    assert profile(((1, 1), (0, 1)), 2) == {(1, 1): Partition.of(2)}
    assert profile(((0, 1), (1, 1)), 2) == {(1, 1, 1): Partition.of(1)}


def test_charpoly_of_companion():
    F = field(5)
    # companion matrix of z^3 + 2z + 3
    m = ((0, 0, 2), (1, 0, 3), (0, 1, 0))
    assert charpoly(F, m) == (3, 2, 0, 1)


@given(st.sampled_from([2, 3, 4]), st.integers(min_value=1, max_value=4), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_profile_conjugation_invariant(q, d, rnd):
    F = field(q)
    rng = random.Random(rnd.random())
    a = random_gl(d, q, rng)
    g = random_gl(d, q, rng)
    conj = mat_mul(F, mat_mul(F, g, a), mat_inv(F, g))
    assert profile(conj, q) == profile(a, q)
    assert mat_mul(F, g, mat_inv(F, g)) == identity(d)
    assert rank(F, a) == d


def test_census_examples():
    assert census("gl", 2, 2, SEP) == (2, 6)
    assert census("gl", 2, 2, CYC) == (5, 6)
    assert census("sp", 1, 2, ALL) == (2, 6)


@pytest.mark.parametrize("d,q", [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (1, 4), (2, 4), (1, 5), (2, 5)])
def test_gl_total_is_group_order(d, q):
    _, total = census("gl", d, q, ALL)
    assert total == math.prod(q ** d - q ** i for i in range(d))


@pytest.mark.parametrize("group,d,q", [
    ("gl", 2, 3), ("gl", 3, 2), ("gl", 2, 4), ("gl", 2, 5),
    ("u", 1, 3), ("u", 2, 2), ("u", 2, 3), ("u", 3, 2),
    ("sp", 1, 2), ("sp", 1, 3), ("sp", 1, 4), ("sp", 1, 5), ("sp", 2, 2),
])
def test_census_matches_formula(group, d, q):
    specs = [SEP, CYC, SS, ALL, LambdaSpec.parse("set:[1];[2,1]"), LambdaSpec.parse("set:[2]")]
    counts, total = census_many(group, d, q, specs)
    for spec, c in zip(specs, counts):
        assert Fraction(c, total) == finite_prob_exact(group, d, spec, q), spec


def test_workers_give_same_counts():
    specs = [SEP, CYC, SS]
    assert census_many("gl", 3, 2, specs, workers=2) == census_many("gl", 3, 2, specs)


def test_refusals():
    with pytest.raises(InfeasibleError):
        census("gl", 4, 3, SEP)
    with pytest.raises(InfeasibleError):
        census("u", 2, 5, SEP)
    with pytest.raises(InfeasibleError):
        census("o+", 1, 3, SEP)
    with pytest.raises(InfeasibleError):
        group_order("o-", 1, 3)


def test_group_orders():
    assert group_order("u", 2, 2) == 18
    assert group_order("sp", 2, 3) == 51840
    assert group_order("gl", 4, 2) == 20160


def test_monte_carlo_gl_4_3():
    """GL(4,3) is past the exhaustive limit; sampling must land within 4 standard deviations."""
    n = 2000
    for spec in (SEP, CYC):
        hits, _ = monte_carlo_gl(4, 3, spec, n, seed=7)
        p = finite_prob_exact("gl", 4, spec, 3)
        sd = math.sqrt(float(p * (1 - p)) / n)
        assert abs(hits / n - float(p)) <= 4 * sd
