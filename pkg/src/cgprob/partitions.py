"""Partitions, centralizer polynomials, and Λ-type partition sets."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import comb
from typing import Callable, Iterable

from .series import Q, QPolynomial


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Parse ``"[2,1]"`` (brackets optional)."""
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        if not body.strip():
            raise ValueError(f"empty partition: {text!r}")
        try:
            parts = [int(x) for x in body.split(",")]
        except ValueError as exc:
            raise ValueError(f"bad partition {text!r}") from exc
        return cls.of(*parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        m: dict[int, int] = {}
        for p in self.parts:
            m[p] = m.get(p, 0) + 1
        return m

    def conjugate_counts(self) -> list[int]:
        """``[n_1, n_2, ...]`` where ``n_i`` is the number of parts >= i."""
        if not self.parts:
            return []
        return [sum(1 for p in self.parts if p >= i) for i in range(1, self.parts[0] + 1)]

    @property
    def is_one_part(self) -> bool:
        return len(self.parts) == 1

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"


ONE = Partition((1,))


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in lexicographic order of their part tuples."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")

    def gen(rest: int, cap: int):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(sorted(Partition(p) for p in gen(n, n)))


def _nonempty(lam: Partition) -> None:
    if not lam.parts:
        raise ValueError("partition must be nonempty")


def k_lambda(lam: Partition) -> int:
    _nonempty(lam)
    m = sorted(lam.multiplicities.items())
    k = sum((i - 1) * mi * mi for i, mi in m)
    for a in range(len(m)):
        for b in range(a + 1, len(m)):
            k += 2 * m[a][0] * m[a][1] * m[b][1]
    return k


def delta(lam: Partition) -> int:
    """Degree of ``C_{GL,lambda}`` in ``q``, cross-checked three ways."""
    _nonempty(lam)
    m = sorted(lam.multiplicities.items())
    by_mult = sum(i * mi * mi for i, mi in m)
    for a in range(len(m)):
        for b in range(a + 1, len(m)):
            by_mult += 2 * m[a][0] * m[a][1] * m[b][1]
    by_conj = sum(n * n for n in lam.conjugate_counts())
    by_parts = sum((2 * i - 1) * a for i, a in enumerate(lam.parts, start=1))
    if not by_mult == by_conj == by_parts:
        raise AssertionError(f"degree formulas disagree for {lam}: {by_mult}, {by_conj}, {by_parts}")
    return by_conj


@lru_cache(maxsize=None)
def gl_order(m: int) -> QPolynomial:
    """``|GL(m, q)|`` as a polynomial in ``q``."""
    acc = Q ** comb(m, 2)
    for i in range(1, m + 1):
        acc = acc * (Q ** i - 1)
    return acc


@lru_cache(maxsize=None)
def u_order(m: int) -> QPolynomial:
    """``|U(m, q)|`` as a polynomial in ``q``."""
    acc = Q ** comb(m, 2)
    for i in range(1, m + 1):
        acc = acc * (Q ** i - (-1) ** i)
    return acc


@lru_cache(maxsize=None)
def c_gl(lam: Partition) -> QPolynomial:
    acc = Q ** k_lambda(lam)
    for mi in lam.multiplicities.values():
        acc = acc * gl_order(mi)
    return acc


@lru_cache(maxsize=None)
def c_u(lam: Partition) -> QPolynomial:
    acc = Q ** k_lambda(lam)
    for mi in lam.multiplicities.values():
        acc = acc * u_order(mi)
    return acc


def centralizer_value(lam: Partition, q: int, flavor: str = "gl") -> int:
    """Integer value of ``C_{GL,lambda}(q)`` or ``C_{U,lambda}(q)`` computed directly."""
    _nonempty(lam)
    sign = -1 if flavor == "u" else 1
    acc = q ** k_lambda(lam)
    for mi in lam.multiplicities.values():
        acc *= q ** comb(mi, 2)
        for i in range(1, mi + 1):
            acc *= q ** i - (sign ** i)
    return acc


def stong_sum(n: int, variant: str = "gl") -> bool:
    """Check ``sum_{|lambda|=n} 1/C(q)`` against its closed product form.

    The identity is verified as polynomials after clearing denominators:
    ``q^{n(n-1)/2} prod C_lambda == (sum_lambda prod_{mu != lambda} C_mu) prod (q^i -+ 1)``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    cfun = c_u if variant == "u" else c_gl
    sign = -1 if variant == "u" else 1
    cs = [cfun(lam) for lam in enumerate_partitions(n)]
    total = QPolynomial.constant(1)
    for c in cs:
        total = total * c
    numer = QPolynomial()
    for i in range(len(cs)):
        term = QPolynomial.constant(1)
        for j, c in enumerate(cs):
            if j != i:
                term = term * c
        numer = numer + term
    rhs_den = QPolynomial.constant(1)
    for i in range(1, n + 1):
        rhs_den = rhs_den * (Q ** i - sign ** i)
    return numer * rhs_den == total * Q ** comb(n, 2)


class GroupKind(Enum):
    GL = "gl"
    U = "u"
    SP = "sp"
    OPLUS = "o+"
    OMINUS = "o-"

    @classmethod
    def parse(cls, text: str) -> GroupKind:
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown group {text!r}; expected one of gl, u, sp, o+, o-") from None

    @property
    def forbids_unit_eigenvalues(self) -> bool:
        """Sp and O± require ``lambda_{z+-1}`` to be empty."""
        return self in (GroupKind.SP, GroupKind.OPLUS, GroupKind.OMINUS)


_NAMED = ("all", "separable", "cyclic", "semisimple")


@dataclass(frozen=True)
class LambdaSpec:
    """A set of partitions with decidable membership and an enumerator by size.

    ``all_one_part`` declares that every one-part partition is a member; the
    named families set it, since it cannot be discovered from a predicate.
    """

    kind: str
    members: frozenset = frozenset()
    predicate: Callable[[Partition], bool] | None = None
    name: str = ""
    all_one_part: bool = False

    @classmethod
    def all(cls) -> LambdaSpec:
        return cls("all", name="all", all_one_part=True)

    @classmethod
    def separable(cls) -> LambdaSpec:
        return cls("separable", name="separable")

    @classmethod
    def cyclic(cls) -> LambdaSpec:
        return cls("cyclic", name="cyclic", all_one_part=True)

    @classmethod
    def semisimple(cls) -> LambdaSpec:
        return cls("semisimple", name="semisimple")

    @classmethod
    def explicit(cls, partitions: Iterable[Partition]) -> LambdaSpec:
        members = frozenset(partitions)
        if not members:
            raise ValueError("explicit Λ-spec must be nonempty")
        text = "set:" + ";".join(str(p) for p in sorted(members))
        return cls("explicit", members=members, name=text)

    @classmethod
    def from_predicate(cls, predicate: Callable[[Partition], bool], name: str,
                       all_one_part: bool = False) -> LambdaSpec:
        return cls("predicate", predicate=predicate, name=name, all_one_part=all_one_part)

    @classmethod
    def parse(cls, text: str) -> LambdaSpec:
        t = text.strip()
        low = t.lower()
        if low in _NAMED:
            return getattr(cls, low)()
        if low.startswith("set:"):
            body = t[4:].strip()
            if not body:
                raise ValueError("set: needs at least one partition")
            return cls.explicit(Partition.parse(p) for p in body.split(";") if p.strip())
        raise ValueError(f"unknown Λ-spec {text!r}; expected {', '.join(_NAMED)} or set:[..];[..]")

    @property
    def is_finite(self) -> bool:
        return self.kind in ("separable", "explicit")

    def __contains__(self, lam: Partition) -> bool:
        if not lam.parts:
            return False
        k = self.kind
        if k == "all":
            return True
        if k == "separable":
            return lam == ONE
        if k == "cyclic":
            return len(lam) == 1
        if k == "semisimple":
            return lam.parts[0] == 1
        if k == "explicit":
            return lam in self.members
        return bool(self.predicate(lam))

    @property
    def contains_one(self) -> bool:
        return ONE in self

    def members_of_size(self, n: int) -> tuple[Partition, ...]:
        k = self.kind
        if n < 1:
            return ()
        if k == "all":
            return enumerate_partitions(n)
        if k == "separable":
            return (ONE,) if n == 1 else ()
        if k == "cyclic":
            return (Partition((n,)),)
        if k == "semisimple":
            return (Partition((1,) * n),)
        if k == "explicit":
            return tuple(sorted(p for p in self.members if p.size == n))
        return tuple(p for p in enumerate_partitions(n) if self.predicate(p))

    def max_member_size(self) -> int | None:
        if self.kind == "separable":
            return 1
        if self.kind == "explicit":
            return max(p.size for p in self.members)
        return None

    def __str__(self) -> str:
        return self.name or self.kind
