from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cgprob.partitions import (ONE, GroupKind, LambdaSpec, Partition, c_gl, c_u, centralizer_value, delta,
                               enumerate_partitions, gl_order, k_lambda, stong_sum)
from cgprob.series import Q

# partition counts p(n) for n = 1..12
P_OF_N = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


def test_partition_counts():
    assert [len(enumerate_partitions(n)) for n in range(1, 13)] == P_OF_N


def test_enumeration_is_sorted_and_valid():
    parts = enumerate_partitions(5)
    assert list(parts) == sorted(parts)
    assert all(p.size == 5 for p in parts)
    assert len(set(parts)) == len(parts)


def test_parse_and_str():
    lam = Partition.parse("[1,2]")
    assert lam == Partition((2, 1))
    assert str(lam) == "[2,1]"
    with pytest.raises(ValueError):
        Partition.parse("[]")
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_delta_and_k_examples():
    assert delta(Partition.of(2, 1)) == 5
    assert k_lambda(Partition.of(2, 1)) == 3
    assert delta(Partition.of(1, 1)) == 4
    assert delta(Partition.of(3)) == 3


def test_centralizer_small_cases():
    # C_(1) is |GL(1,q)| = q - 1 and C_(2) is q^2 - q
    assert c_gl(ONE) == Q - 1
    assert c_gl(Partition.of(2)) == Q ** 2 - Q
    assert c_u(ONE) == Q + 1
    assert c_gl(Partition.of(1, 1)) == gl_order(2)


@given(st.integers(min_value=1, max_value=9).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))))
def test_delta_is_degree_and_bounds(lam):
    assert c_gl(lam).degree == delta(lam)
    assert c_u(lam).degree == delta(lam)
    assert lam.size <= delta(lam) <= lam.size * len(lam)
    assert (delta(lam) == lam.size) == lam.is_one_part


@given(st.integers(min_value=1, max_value=7).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))),
       st.sampled_from([2, 3, 4, 5, 7]))
def test_centralizer_polynomial_matches_direct_product(lam, q):
    assert c_gl(lam)(q) == centralizer_value(lam, q, "gl")
    assert c_u(lam)(q) == centralizer_value(lam, q, "u")


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("variant", ["gl", "u"])
def test_stong_sums(n, variant):
    assert stong_sum(n, variant)


@pytest.mark.parametrize("n", [2, 3])
def test_stong_sum_numerically(n):
    """Sum of 1/C(q) over partitions of n at q = 2 against its product form."""
    q = 2
    lhs = sum(Fraction(1, centralizer_value(lam, q)) for lam in enumerate_partitions(n))
    rhs = Fraction(q ** (n * (n - 1) // 2))
    for i in range(1, n + 1):
        rhs /= q ** i - 1
    assert lhs == rhs


def test_spec_membership():
    sep, cyc, ss, every = (LambdaSpec.parse(t) for t in ("separable", "cyclic", "semisimple", "all"))
    lam21 = Partition.of(2, 1)
    assert ONE in sep and Partition.of(2) not in sep
    assert Partition.of(3) in cyc and lam21 not in cyc
    assert Partition.of(1, 1, 1) in ss and lam21 not in ss
    assert lam21 in every
    assert all(s.contains_one for s in (sep, cyc, ss, every))


def test_explicit_spec():
    spec = LambdaSpec.parse("set:[1];[2,1]")
    assert spec.is_finite
    assert spec.members_of_size(3) == (Partition.of(2, 1),)
    assert spec.max_member_size() == 3
    assert str(spec) == "set:[1];[2,1]"
    with pytest.raises(ValueError):
        LambdaSpec.parse("set:")
    with pytest.raises(ValueError):
        LambdaSpec.parse("regular")


def test_named_members_agree_with_predicate():
    for text in ("separable", "cyclic", "semisimple", "all"):
        spec = LambdaSpec.parse(text)
        for n in range(1, 7):
            assert spec.members_of_size(n) == tuple(p for p in enumerate_partitions(n) if p in spec)


def test_predicate_specs_hash_by_predicate():
    a = LambdaSpec.from_predicate(lambda p: True, "x")
    b = LambdaSpec.from_predicate(lambda p: False, "x")
    assert a != b


def test_group_parse():
    assert GroupKind.parse("O+") is GroupKind.OPLUS
    assert GroupKind.SP.forbids_unit_eigenvalues
    assert not GroupKind.GL.forbids_unit_eigenvalues
    with pytest.raises(ValueError):
        GroupKind.parse("so")
