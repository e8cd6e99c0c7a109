"""Brute-force Λ-type counts by enumerating every element of a small classical group.

Forms are fixed: the unitary group preserves ``sum x_i y_i^q`` over F_{q^2},
and the symplectic group preserves the block form with blocks
``[[0, 1], [-1, 0]]``.  A matrix's partition profile is read from the ranks
of ``f(alpha)^k`` for each irreducible ``f`` dividing its characteristic
polynomial.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import product
from math import prod

from .fq import (FiniteField, Matrix, Poly, charpoly, field, irreducibles, mat_mul, poly_at_matrix,
                 poly_divmod, rank, SUPPORTED_Q)
from .partitions import GroupKind, LambdaSpec, Partition

log = logging.getLogger(__name__)

MAX_GROUP_ORDER = 100_000


class InfeasibleError(ValueError):
    """The requested group is too large (or unsupported) for exhaustive enumeration."""


def factor(F: FiniteField, f: Poly) -> tuple[tuple[Poly, int], ...]:
    """Monic irreducible factorisation by trial division."""
    return _factor(F.q, f)


@lru_cache(maxsize=4096)
def _factor(q: int, f: Poly) -> tuple[tuple[Poly, int], ...]:
    F = field(q)
    deg = len(f) - 1
    out = []
    rest = f
    for g in irreducibles(F.q, max(deg, 1)):
        if len(g) - 1 > len(rest) - 1:
            break
        m = 0
        while True:
            quo, rem = poly_divmod(F, rest, g)
            if rem:
                break
            rest, m = quo, m + 1
        if m:
            out.append((g, m))
    if rest != (1,):
        raise AssertionError(f"factorisation of {f} left {rest}")
    return tuple(out)


def _partition_from_counts(counts: list[int]) -> Partition:
    """Partition whose conjugate is ``counts`` (counts[k] = parts of size > k)."""
    if not counts:
        return Partition(())
    return Partition(tuple(sum(1 for c in counts if c >= i) for i in range(1, counts[0] + 1)))


def profile(alpha: Matrix, q: int) -> dict[Poly, Partition]:
    """``{f: lambda_f(alpha)}`` over every irreducible ``f`` dividing the characteristic polynomial."""
    F = field(q)
    d = len(alpha)
    out = {}
    for f, mult in factor(F, charpoly(F, alpha)):
        deg = len(f) - 1
        base = poly_at_matrix(F, f, alpha)
        power = base
        prev, counts = d, []
        target = d - deg * mult
        while prev > target:
            r = rank(F, power)
            drop, bad = divmod(prev - r, deg)
            if bad or drop <= 0 or (counts and drop > counts[-1]):
                raise AssertionError(f"inconsistent rank sequence for {f} at {alpha}")
            counts.append(drop)
            prev = r
            power = mat_mul(F, power, base)
        lam = _partition_from_counts(counts)
        if lam.size != mult:
            raise AssertionError(f"lambda_{f} = {lam} does not match multiplicity {mult}")
        out[f] = lam
    if sum((len(f) - 1) * lam.size for f, lam in out.items()) != d:
        raise AssertionError(f"profile of {alpha} does not account for dimension {d}")
    return out


def is_lambda_type(prof: dict[Poly, Partition], spec: LambdaSpec, group: GroupKind, q: int) -> bool:
    if GroupKind(group).forbids_unit_eigenvalues:
        F = field(q)
        if (1, 1) in prof or (F.neg(1), 1) in prof:
            return False
    return all(lam in spec for lam in prof.values())


# ---------------------------------------------------------------------------
# group enumeration
# ---------------------------------------------------------------------------

def group_order(group: GroupKind, d: int, q: int) -> int:
    """Closed-form order; ``d`` is the half-dimension for Sp."""
    group = GroupKind(group)
    if group == GroupKind.GL:
        return prod(q ** d - q ** i for i in range(d))
    if group == GroupKind.U:
        return q ** (d * (d - 1) // 2) * prod(q ** i - (-1) ** i for i in range(1, d + 1))
    if group == GroupKind.SP:
        return q ** (d * d) * prod(q ** (2 * i) - 1 for i in range(1, d + 1))
    raise InfeasibleError(f"{group.value} groups are not enumerated")


def _setup(group: GroupKind, d: int, q: int):
    """Field, matrix size and a row-compatibility test for the group."""
    if group == GroupKind.GL:
        F = field(q)
        return F, d, None
    if group == GroupKind.U:
        F = field(q * q)
        conj = [F.power(x, q) for x in range(F.q)]

        def form(x, y):
            acc = 0
            for a, b in zip(x, y):
                acc = F.add(acc, F.mul(a, conj[b]))
            return acc

        gram = lambda i, j: 1 if i == j else 0  # noqa: E731
        return F, d, (form, gram)
    F = field(q)
    n = 2 * d

    def form(x, y):
        acc = 0
        for k in range(0, n, 2):
            acc = F.add(acc, F.sub(F.mul(x[k], y[k + 1]), F.mul(x[k + 1], y[k])))
        return acc

    def gram(i, j):
        if i // 2 != j // 2 or i == j:
            return 0
        return 1 if i < j else F.neg(1)

    return F, n, (form, gram)


def _check_feasible(group: GroupKind, d: int, q: int) -> None:
    if group in (GroupKind.OPLUS, GroupKind.OMINUS):
        raise InfeasibleError("orthogonal groups are not enumerated; use the Sp sum rule instead")
    if d < 1:
        raise InfeasibleError(f"dimension must be >= 1, got {d}")
    fq = q * q if group == GroupKind.U else q
    if fq not in SUPPORTED_Q:
        raise InfeasibleError(f"{group.value} over q={q} needs F_{fq}, which is not supported")
    order = group_order(group, d, q)
    if order > MAX_GROUP_ORDER:
        raise InfeasibleError(f"|{group.value}({d},{q})| = {order} exceeds the enumeration limit {MAX_GROUP_ORDER}")


def _extend(F: FiniteField, n: int, compat, vectors, rows: list, span: set | None):
    """Yield all completions of ``rows`` to a full group element."""
    i = len(rows)
    if i == n:
        yield tuple(rows)
        return
    for v in vectors:
        if compat is None:
            if v in span:
                continue
            new_span = {tuple(F.add(s, F.mul(c, x)) for s, x in zip(w, v)) for w in span for c in range(F.q)}
            rows.append(v)
            yield from _extend(F, n, compat, vectors, rows, new_span)
            rows.pop()
        else:
            form, gram = compat
            if form(v, v) != gram(i, i):
                continue
            if any(form(rows[j], v) != gram(j, i) or form(v, rows[j]) != gram(i, j) for j in range(i)):
                continue
            rows.append(v)
            yield from _extend(F, n, compat, vectors, rows, None)
            rows.pop()


def _branch(group: GroupKind, d: int, q: int, specs: tuple[LambdaSpec, ...], first: tuple) -> tuple[list[int], int]:
    F, n, compat = _setup(group, d, q)
    vectors = list(product(range(F.q), repeat=n))
    counts = [0] * len(specs)
    total = 0
    if compat is None:
        if not any(first):
            return counts, 0
        span = {tuple(F.mul(c, x) for x in first) for c in range(F.q)}
    else:
        form, gram = compat
        if form(first, first) != gram(0, 0):
            return counts, 0
        span = None
    for alpha in _extend(F, n, compat, vectors, [first], span):
        total += 1
        prof = profile(alpha, F.q)
        for k, spec in enumerate(specs):
            if is_lambda_type(prof, spec, group, q):
                counts[k] += 1
    return counts, total


def census_many(group: GroupKind | str, d: int, q: int, specs, workers: int = 1) -> tuple[list[int], int]:
    """Like :func:`census` for several Λ-specs at once, profiling each element only once."""
    group = GroupKind(group)
    specs = tuple(specs)
    _check_feasible(group, d, q)
    F, n, _ = _setup(group, d, q)
    firsts = list(product(range(F.q), repeat=n))
    args = [(group, d, q, specs, f) for f in firsts]
    if workers > 1 and all(s.kind != "predicate" for s in specs):
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_branch, *zip(*args)))
    else:
        results = [_branch(*a) for a in args]
    counts = [sum(r[0][k] for r in results) for k in range(len(specs))]
    total = sum(t for _, t in results)
    expected = group_order(group, d, q)
    if total != expected:
        raise AssertionError(f"enumerated {total} elements of {group.value}({d},{q}), expected {expected}")
    log.debug("census %s(%d,%d): %s of %d", group.value, d, q, counts, total)
    return counts, total


def census(group: GroupKind | str, d: int, q: int, spec: LambdaSpec, workers: int = 1) -> tuple[int, int]:
    """``(number of Λ-type elements, group order)`` by exhaustive enumeration.

    ``d`` is the half-dimension for Sp.  Work is split by the first row; with
    ``workers > 1`` the branches run in separate processes.  Sizes whose group
    order exceeds ``MAX_GROUP_ORDER`` are refused.
    """
    counts, total = census_many(group, d, q, [spec], workers)
    return counts[0], total


def random_gl(d: int, q: int, rng: random.Random) -> Matrix:
    F = field(q)
    while True:
        m = tuple(tuple(rng.randrange(q) for _ in range(d)) for _ in range(d))
        if rank(F, m) == d:
            return m


def monte_carlo_gl(d: int, q: int, spec: LambdaSpec, samples: int, seed: int = 0) -> tuple[int, int]:
    """Count Λ-type elements among uniform random samples from GL(d, q)."""
    rng = random.Random(seed)
    hits = 0
    for _ in range(samples):
        if is_lambda_type(profile(random_gl(d, q, rng), q), spec, GroupKind.GL, q):
            hits += 1
    return hits, samples
