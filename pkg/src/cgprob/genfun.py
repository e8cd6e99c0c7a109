"""Cycle-index assembly for finite and limiting Λ-type probabilities.

Two independent evaluation paths live here:

* the symbolic path (``cycle_index``, ``finite_prob``, ``limit_prob``,
  ``orth_probs``) works with series in ``q^-1`` whose exponents are
  polynomials in ``q``;
* the exact path (``finite_prob_exact``) plugs in a concrete prime power and
  expands binomials with integer exponents over the rationals.

They share only the polynomial counts and the partition data.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .counts import (
    CharParity,
    count_Mstar,
    count_Mtilde,
    count_N,
    count_Nstar,
    count_Ntilde,
    _factorize,
)
from .partitions import GroupKind, LambdaSpec, Partition, c_gl, c_u, centralizer_value, delta
from .series import BiSeries, LaurentSeries, Q, QPolynomial

log = logging.getLogger(__name__)


class IntegralityError(ArithmeticError):
    """A coefficient that must be an integer (or half-integer) is not."""


@dataclass(frozen=True)
class ProbSeries:
    """Probability of Λ-type as a series in ``q^-1``.

    ``dimension`` is ``None`` for the limit.  For Sp and O± it is the
    half-dimension ``d`` of a ``2d``-dimensional space.
    """

    group: GroupKind
    spec: LambdaSpec
    dimension: int | None
    series: LaurentSeries
    parity: CharParity | None = None
    note: str = ""

    @property
    def order(self) -> int:
        return self.series.order

    @property
    def coefficients(self) -> list[Fraction]:
        return self.series.coefficients()


@dataclass(frozen=True)
class _Factor:
    step: int
    flavor: str
    signed: bool
    exponent: QPolynomial


def _kind(group: GroupKind | str) -> str:
    return group.value if isinstance(group, GroupKind) else group


def _need_parity(kind: str, parity) -> CharParity | None:
    if kind in ("sp", "x", "o+", "o-"):
        if parity is None:
            raise ValueError("symplectic and orthogonal groups need a CharParity (EVEN or ODD)")
        return CharParity(parity)
    return None


def _factors(kind: str, cutoff: int, parity: CharParity | None) -> list[_Factor]:
    """Factors of the cycle-index product whose step is at most ``cutoff``."""
    out = []
    for e in range(1, cutoff + 1):
        if kind == "gl":
            out.append(_Factor(e, "gl", False, count_N(e, Q)))
        elif kind == "u":
            if e % 2:
                out.append(_Factor(e, "u", False, count_Ntilde(e, Q)))
            if 2 * e <= cutoff:
                out.append(_Factor(2 * e, "gl", False, count_Mtilde(e, Q)))
        elif kind in ("sp", "x"):
            out.append(_Factor(e, "u", kind == "x", count_Nstar(2 * e, Q, parity)))
            out.append(_Factor(e, "gl", False, count_Mstar(e, Q, parity)))
        else:
            raise ValueError(f"no cycle index for {kind!r}")
    return [f for f in out if not f.exponent.is_zero()]


@lru_cache(maxsize=None)
def _reciprocal(lam: Partition, flavor: str, order: int) -> LaurentSeries:
    c = c_u(lam) if flavor == "u" else c_gl(lam)
    return LaurentSeries.reciprocal_of(c, order)


@lru_cache(maxsize=None)
def t_lambda(spec: LambdaSpec, flavor: str, u_bound: int, order: int, signed: bool = False) -> BiSeries:
    """``sum_{lambda in spec} (+-1)^{|lambda|} u^{|lambda|} / C_lambda(q)`` truncated at ``(u_bound, order)``.

    ``flavor`` picks ``C_GL`` ("gl") or ``C_U`` ("u").  Partitions with
    ``delta(lambda) > order`` vanish at this precision and are skipped.
    """
    rows = [LaurentSeries.zero(order) for _ in range(u_bound + 1)]
    for s in range(1, min(u_bound, order) + 1):
        acc = rows[s]
        for lam in spec.members_of_size(s):
            if delta(lam) > order:
                continue
            term = _reciprocal(lam, flavor, order)
            acc = acc - term if (signed and s % 2) else acc + term
        rows[s] = acc
    return BiSeries(rows, u_bound)


@lru_cache(maxsize=None)
def cycle_index(kind: str, spec: LambdaSpec, u_bound: int, order: int,
                parity: CharParity | None = None) -> BiSeries:
    """``1 + sum_d P_d u^d`` through ``u^u_bound`` and ``q^-order``.

    ``kind`` is "gl", "u", "sp", or "x" (the O+ minus O- difference).
    """
    parity = _need_parity(kind, parity)
    result = BiSeries.one(u_bound, order)
    for f in _factors(kind, u_bound, parity):
        deg = max(f.exponent.degree, 0)
        inner = -(-(order + deg + 1) // f.step) - 1
        t = t_lambda(spec, f.flavor, u_bound // f.step, inner, f.signed)
        t = t.substitute(u_power=f.step, q_power=f.step).truncate(u_bound)
        result = (result * (t + 1).pow_poly(f.exponent)).truncate(u_bound, order)
    if result.order < order:
        raise ArithmeticError(f"cycle index lost precision: order {result.order} < {order}")
    return result


def _finite_series(kind: str, d: int, spec: LambdaSpec, order: int, parity) -> LaurentSeries:
    s = cycle_index(kind, spec, d, order, parity)[d]
    if s.principal_part:
        raise AssertionError(f"positive powers of q survived in {kind} d={d}: {s.principal_part}")
    return s.truncate(order)


def _assert_integral(series: LaurentSeries, what: str, scale: int = 1) -> None:
    bad = [(j, v) for j, v in series if (v * scale).denominator != 1]
    if bad:
        raise IntegralityError(f"{what}: non-integral coefficients {bad[:3]}")


def finite_prob(group: GroupKind, d: int, spec: LambdaSpec, order: int,
                parity: CharParity | None = None) -> ProbSeries:
    """Probability that a random element of ``G(d, q)`` is of Λ-type, as a ``q^-1`` series."""
    if d < 1 or order < 0:
        raise ValueError(f"need d >= 1 and order >= 0, got d={d}, order={order}")
    group = GroupKind(group)
    if group in (GroupKind.OPLUS, GroupKind.OMINUS):
        return orth_probs(group, d, spec, order, parity)
    parity = _need_parity(group.value, parity)
    s = _finite_series(group.value, d, spec, order, parity)
    _assert_integral(s, f"{group.value} d={d} {spec}")
    return ProbSeries(group, spec, d, s, parity)


def limit_prob(group: GroupKind, spec: LambdaSpec, order: int,
               parity: CharParity | None = None, cutoff: int | None = None) -> ProbSeries:
    """Limiting probability as ``d -> infinity``, via the residue at ``u = 1``.

    Factor ``d`` of the residue product is ``1 + O(q^-2d)`` raised to a
    degree-``d`` polynomial, so it contributes only from ``q^-d`` on; the
    default cutoff is therefore ``order``.
    """
    group = GroupKind(group)
    if group in (GroupKind.OPLUS, GroupKind.OMINUS):
        return orth_probs(group, None, spec, order, parity)
    kind = group.value
    parity = _need_parity(kind, parity)
    if not spec.contains_one:
        note = f"(1) is not in {spec}; the limiting probability is 0"
        log.info(note)
        return ProbSeries(group, spec, None, LaurentSeries.zero(order), parity, note)
    x = LaurentSeries([1, -1], order)
    if kind == "gl":
        result = x
    elif kind == "u":
        result = LaurentSeries([1, 1], order)
    else:
        result = x ** int(parity)
    for f in _factors(kind, order if cutoff is None else cutoff, parity):
        deg = max(f.exponent.degree, 0)
        inner = -(-(order + deg + 1) // f.step) - 1
        total = t_lambda(spec, f.flavor, inner, inner).at_u_one()
        bracket = (LaurentSeries([1, -1], inner) * (total + 1)).inflate(f.step)
        result = (result * bracket.pow_poly(f.exponent)).truncate(order)
    if result.order < order:
        raise ArithmeticError(f"limit lost precision: order {result.order} < {order}")
    _assert_integral(result, f"{kind} limit {spec}")
    return ProbSeries(group, spec, None, result, parity)


def orth_probs(sign: GroupKind | str, d: int | None, spec: LambdaSpec, order: int,
               parity: CharParity | None = None) -> ProbSeries:
    """Λ-type probability in ``O+(2d, q)`` or ``O-(2d, q)``.

    Finite ``d`` uses ``(Sp_d +- X_d) / 2`` where ``X`` is the difference of
    the two orthogonal cycle indices; the limit is half the symplectic limit
    for either sign.  Coefficients are half-integers.
    """
    if isinstance(sign, str) and sign in "+-":
        sign = "o" + sign
    group = GroupKind(sign)
    if group not in (GroupKind.OPLUS, GroupKind.OMINUS):
        raise ValueError(f"orth_probs needs o+ or o-, got {group.value}")
    parity = _need_parity(group.value, parity)
    if d is None:
        sp = limit_prob(GroupKind.SP, spec, order, parity)
        s = sp.series * Fraction(1, 2)
        return ProbSeries(group, spec, None, s, parity, sp.note)
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    s_d = _finite_series("sp", d, spec, order, parity)
    x_d = _finite_series("x", d, spec, order, parity)
    s = (s_d + x_d if group is GroupKind.OPLUS else s_d - x_d) * Fraction(1, 2)
    _assert_integral(s, f"{group.value} d={d} {spec}", scale=2)
    return ProbSeries(group, spec, d, s, parity)


@dataclass(frozen=True)
class ParityResult:
    ok: bool
    first_odd_index: int | None
    gl: list[Fraction]
    u: list[Fraction]


def parity_check(spec: LambdaSpec, order: int) -> ParityResult:
    """Compare GL and U limiting coefficients modulo 2."""
    if not spec.contains_one:
        raise ValueError("parity check needs (1) in the Λ-spec")
    a = limit_prob(GroupKind.GL, spec, order).coefficients
    b = limit_prob(GroupKind.U, spec, order).coefficients
    bad = next((i for i, (x, y) in enumerate(zip(a, b)) if (x - y) % 2), None)
    return ParityResult(bad is None, bad, a, b)


# ---------------------------------------------------------------------------
# exact evaluation at a concrete prime power
# ---------------------------------------------------------------------------


def _exact_factors(kind: str, d: int, q0: int) -> list[tuple[int, str, bool, int]]:
    out = []
    for e in range(1, d + 1):
        if kind == "gl":
            out.append((e, "gl", False, count_N(e, q0)))
        elif kind == "u":
            if e % 2:
                out.append((e, "u", False, count_Ntilde(e, q0)))
            if 2 * e <= d:
                out.append((2 * e, "gl", False, count_Mtilde(e, q0)))
        else:
            out.append((e, "u", kind == "x", count_Nstar(2 * e, q0)))
            out.append((e, "gl", False, count_Mstar(e, q0)))
    return out


def _poly_mul(a: list[Fraction], b: list[Fraction], d: int) -> list[Fraction]:
    out = [Fraction(0)] * (d + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(d + 1 - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _exact_coefficient(kind: str, d: int, spec: LambdaSpec, q0: int) -> Fraction:
    total = [Fraction(1)] + [Fraction(0)] * d
    for step, flavor, signed, n in _exact_factors(kind, d, q0):
        if n == 0:
            continue
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent {n} at q={q0} is not a non-negative integer")
        t = [Fraction(0)] * (d + 1)
        for s in range(1, d // step + 1):
            for lam in spec.members_of_size(s):
                v = Fraction(1, centralizer_value(lam, q0 ** step, flavor))
                t[s * step] += -v if (signed and s % 2) else v
        factor = [Fraction(0)] * (d + 1)
        power = [Fraction(1)] + [Fraction(0)] * d
        for j in range(d // step + 1):
            c = comb(n, j)
            for i in range(d + 1):
                factor[i] += c * power[i]
            power = _poly_mul(power, t, d)
        total = _poly_mul(total, factor, d)
    return total[d]


def finite_prob_exact(group: GroupKind, d: int, spec: LambdaSpec, q0: int) -> Fraction:
    """Exact rational Λ-type probability in ``G(d, q0)`` for a concrete prime power ``q0``."""
    if q0 < 2 or len(_factorize(q0)) != 1:
        raise ValueError(f"q must be a prime power, got {q0}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    group = GroupKind(group)
    if group in (GroupKind.GL, GroupKind.U, GroupKind.SP):
        return _exact_coefficient(group.value, d, spec, q0)
    s = _exact_coefficient("sp", d, spec, q0)
    x = _exact_coefficient("x", d, spec, q0)
    return (s + x) / 2 if group is GroupKind.OPLUS else (s - x) / 2
