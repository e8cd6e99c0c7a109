"""How fast finite-dimensional probabilities settle onto their limits.

Covers the integer exponents ``F(a, s)`` of the separable GL generating
function, the product formula built from them, the c-versus-s difference
relations, the sigma constants that bound stabilization for a general
Λ-type, and a scan that measures where stabilization actually breaks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, gcd
from typing import NamedTuple

from .counts import divisors, mobius
from .genfun import finite_prob, limit_prob
from .partitions import GroupKind, LambdaSpec, Partition, delta
from .series import BiSeries, LaurentSeries

SEPARABLE = LambdaSpec.separable()
CYCLIC = LambdaSpec.cyclic()


class StabilizationError(AssertionError):
    """A measured stabilization point fell at or below a proven bound."""


def f_as(a: int, s: int) -> int:
    """Exponent of ``1 - u^s q^(1-s-a)`` in the product form of the separable GL series."""
    if a < 0 or s < 1:
        raise ValueError(f"need a >= 0 and s >= 1, got a={a}, s={s}")
    total = 0
    for r in divisors(gcd(s, a) if a else s):
        total += mobius(r) * (-1) ** (s // r) * comb(s // r + a // r - 1, a // r)
    value = Fraction(total, s)
    if value.denominator != 1:
        raise ArithmeticError(f"F({a},{s}) = {value} is not an integer")
    return int(value)


def _one_minus_power(i: int, j: int, b: int, d: int, n: int) -> BiSeries:
    """``(1 - u^i q^-j)^b`` truncated to ``(u^d, q^-n)``; ``j`` may be 0."""
    kmax = d // i if j == 0 else min(d // i, n // j)
    terms = {(i * k, j * k): _signed_comb(b, k) for k in range(kmax + 1)}
    return BiSeries.from_terms(terms, d, n)


def _signed_comb(b: int, k: int) -> int:
    """Coefficient of ``t^k`` in ``(1 - t)^b`` for any integer ``b``."""
    if b >= 0:
        return (-1) ** k * comb(b, k)
    return comb(-b + k - 1, k)


def separable_gl_series(u_bound: int, order: int) -> BiSeries:
    """``1 + sum_d u^d s_GL(d, q)`` from the finite-dimensional probabilities."""
    rows = [LaurentSeries.one(order)]
    rows += [finite_prob("gl", d, SEPARABLE, order).series for d in range(1, u_bound + 1)]
    return BiSeries(rows, u_bound)


def s_gl_product_check(u_bound: int, order: int) -> bool:
    """Compare ``(1 + u/(q-1)) s_GL(u, q)`` with the product of ``(1 - u^s q^(1-s-a))^F(a,s)``.

    A factor lies inside the box only when ``s <= u_bound`` and
    ``s + a - 1 <= order``, so the product is finite.
    """
    if u_bound < 1 or order < 1:
        raise ValueError("u_bound and order must be >= 1")
    d, n = u_bound, order
    correction = BiSeries.from_terms({(0, 0): 1, **{(1, j): 1 for j in range(1, n + 1)}}, d, n)
    lhs = correction * separable_gl_series(d, n)
    rhs = BiSeries.one(d, n)
    for s in range(1, d + 1):
        for a in range(0, n + 2 - s):
            b = f_as(a, s)
            if b:
                rhs = rhs * _one_minus_power(s, s + a - 1, b, d, n)
    return lhs == rhs


def _prob(group: str, d: int, spec: LambdaSpec, order: int) -> LaurentSeries:
    if d == 0:
        return LaurentSeries.one(order)
    return finite_prob(group, d, spec, order).series


def c_minus_s_relation(group: str, d: int, order: int) -> bool:
    """``c(d+1) - c(d) = (+-q)^(-d-1) [s(d+1) - s(d)]`` through ``q^-order`` (minus sign for U)."""
    ds = _prob(group, d + 1, SEPARABLE, order) - _prob(group, d, SEPARABLE, order)
    dc = _prob(group, d + 1, CYCLIC, order) - _prob(group, d, CYCLIC, order)
    scaled = ds.shift(d + 1)
    if group == "u" and (d + 1) % 2:
        scaled = -scaled
    return dc.agrees(scaled, order)


def unitary_functional_equation(u_bound: int, order: int) -> bool:
    """``s_U(u, q) = s_GL(u^2, q^2) / s_GL(-u, -q)`` to bidegree ``(u_bound, order)``."""
    gl = separable_gl_series(u_bound, order)
    half = separable_gl_series((u_bound + 1) // 2, (order + 1) // 2)
    squared = half.substitute(u_power=2, q_power=2).truncate(u_bound, order)
    negated = gl.substitute(u_sign=-1, q_sign=-1)
    rows = [LaurentSeries.one(order)]
    rows += [finite_prob("u", d, SEPARABLE, order).series for d in range(1, u_bound + 1)]
    unitary = BiSeries(rows, u_bound)
    return unitary * negated == squared


def difference_identities(d_max: int, order: int, u_bound: int = 8, q_order: int = 8) -> bool:
    """All c-versus-s relations for ``d < d_max`` in GL and U, plus the unitary functional equation."""
    if d_max < 1:
        raise ValueError(f"d_max must be >= 1, got {d_max}")
    for group in ("gl", "u"):
        for d in range(0, d_max):
            if not c_minus_s_relation(group, d, order):
                return False
    return unitary_functional_equation(u_bound, q_order)


# ---------------------------------------------------------------------------
# sigma constants
# ---------------------------------------------------------------------------

class Sigma(NamedTuple):
    """A sigma constant.

    ``exact`` says whether ``value`` is the true constant; ``lower_bound`` is
    always safe to use in a stabilization bound.
    """

    value: Fraction
    exact: bool
    lower_bound: Fraction


def sigma_with_one(spec: LambdaSpec, search_bound: int = 64) -> Sigma:
    """``1 - 1/k`` for the least ``k >= 2`` with ``(k)`` outside Λ, or 1 if Λ has every one-part partition."""
    if not spec.contains_one:
        raise ValueError(f"(1) must be in {spec}")
    if spec.all_one_part:
        return Sigma(Fraction(1), True, Fraction(1))
    bound = search_bound
    if spec.max_member_size() is not None:
        bound = max(bound, spec.max_member_size() + 1)
    for k in range(2, bound + 1):
        if Partition((k,)) not in spec:
            v = 1 - Fraction(1, k)
            return Sigma(v, True, v)
    v = 1 - Fraction(1, bound + 1)
    return Sigma(v, False, v)


def sigma_without_one(spec: LambdaSpec, size_bound: int = 12) -> Sigma:
    """``inf (Delta(lambda) - 1)/|lambda|`` over Λ, which must exclude (1)."""
    if spec.contains_one:
        raise ValueError(f"(1) must not be in {spec}")
    limit = size_bound
    if spec.max_member_size() is not None:
        limit = spec.max_member_size()
    best = None
    one_part = None
    for n in range(1, limit + 1):
        for lam in spec.members_of_size(n):
            r = Fraction(delta(lam) - 1, lam.size)
            best = r if best is None or r < best else best
            if lam.is_one_part and one_part is None:
                one_part = lam.size
    if one_part is not None:
        # one-part members beat every multi-part one, and smaller k wins
        v = 1 - Fraction(1, one_part)
        return Sigma(v, True, v)
    if best is None:
        raise ValueError(f"no members of {spec} up to size {limit}")
    if spec.is_finite:
        return Sigma(best, True, best)
    # without one-part members the infimum is at least 1
    return Sigma(best, False, Fraction(1))


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------

@dataclass
class StabilizationRow:
    d: int
    first_unstable_order: int | None
    predicted_bound: int | None
    finite: list = field(repr=False, default_factory=list)


@dataclass
class StabilizationReport:
    group: GroupKind
    spec: LambdaSpec
    order: int
    limit: list = field(repr=False, default_factory=list)
    rows: list[StabilizationRow] = field(default_factory=list)

    def violations(self) -> list[StabilizationRow]:
        return [r for r in self.rows
                if r.predicted_bound is not None and r.first_unstable_order is not None
                and r.first_unstable_order <= r.predicted_bound]

    @property
    def ok(self) -> bool:
        return not self.violations()

    def row(self, d: int) -> StabilizationRow:
        return next(r for r in self.rows if r.d == d)

    def dump(self) -> str:
        lines = [f"{self.group.value} {self.spec} order {self.order}",
                 "limit: " + " ".join(str(c) for c in self.limit)]
        for r in self.rows:
            lines.append(f"d={r.d} first_unstable={r.first_unstable_order} "
                         f"bound={r.predicted_bound}: " + " ".join(str(c) for c in r.finite))
        return "\n".join(lines)


def predicted_bound(group: GroupKind, spec: LambdaSpec, d: int) -> int | None:
    """Largest ``n`` for which the ``q^-n`` coefficient is proven to have stabilized, if known."""
    group = GroupKind(group)
    bounds = []
    if spec == SEPARABLE and group in (GroupKind.GL, GroupKind.U):
        bounds.append(d - 1)
    if spec == CYCLIC and group in (GroupKind.GL, GroupKind.U):
        bounds.append(2 * d)
    if group == GroupKind.GL:
        if spec.contains_one:
            sig = sigma_with_one(spec).lower_bound
            bounds.append(ceil((d + 1) * sig) - 1)
        else:
            sig = sigma_without_one(spec).lower_bound
            bounds.append(ceil(d * sig) - 1)
    return max(bounds) if bounds else None


def stabilization_scan(group: GroupKind | str, spec: LambdaSpec, d_max: int, order: int,
                       strict: bool = True) -> StabilizationReport:
    """Compare each ``finite_prob(d)`` with the limit and record the first disagreement.

    With ``strict`` a disagreement at or below a proven bound raises
    :class:`StabilizationError` carrying a full coefficient dump.
    """
    group = GroupKind(group)
    if group not in (GroupKind.GL, GroupKind.U):
        raise ValueError("stabilization scans cover GL and U only")
    limit = limit_prob(group, spec, order).series.coefficients()
    report = StabilizationReport(group, spec, order, limit)
    for d in range(1, d_max + 1):
        coeffs = finite_prob(group, d, spec, order).series.coefficients()
        first = next((n for n in range(order + 1) if coeffs[n] != limit[n]), None)
        report.rows.append(StabilizationRow(d, first, predicted_bound(group, spec, d), coeffs))
    if strict and not report.ok:
        raise StabilizationError("stabilization bound violated\n" + report.dump())
    return report
