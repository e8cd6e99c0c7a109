"""Möbius-sum counts of polynomials that index cycle-index factors.

Every count accepts either a concrete integer ``q`` (returning an int) or the
symbolic variable :data:`cgprob.series.Q` (returning a QPolynomial).  The
characteristic-parity quantity ``e(q)`` is not a polynomial in ``q``, so the
symplectic counts take it as an explicit :class:`CharParity`.
"""

from __future__ import annotations

from enum import IntEnum
from fractions import Fraction
from functools import lru_cache

from .series import QPolynomial


class CharParity(IntEnum):
    """``e(q)``: 1 in even characteristic, 2 in odd characteristic."""

    EVEN = 1
    ODD = 2

    @classmethod
    def of(cls, q: int) -> CharParity:
        return cls.EVEN if q % 2 == 0 else cls.ODD


@lru_cache(maxsize=None)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError(f"mobius is defined for n >= 1, got {n}")
    fs = _factorize(n)
    if any(k > 1 for _, k in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def divisors(n: int) -> list[int]:
    return [a for a in range(1, n + 1) if n % a == 0]


def _finish(total, d: int):
    if isinstance(total, QPolynomial):
        return total / d
    value = Fraction(total, d)
    return int(value) if value.denominator == 1 else value


def _check_d(d: int) -> None:
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")


def count_N(d: int, q):
    """Monic irreducibles of degree ``d`` over F_q other than ``z``."""
    _check_d(d)
    return _finish(sum(mobius(a) * (q ** (d // a) - 1) for a in divisors(d)), d)


def count_Ntilde(d: int, q):
    """Self-conjugate irreducibles for the unitary cycle index (zero for even ``d``)."""
    _check_d(d)
    if d % 2 == 0:
        return 0 * q
    return _finish(sum(mobius(a) * (q ** (d // a) + 1) for a in divisors(d)), d)


def count_Mtilde(d: int, q):
    """Conjugate pairs of irreducibles for the unitary cycle index."""
    return _finish(count_N(d, q * q) - count_Ntilde(d, q), 2)


def _parity(q, parity) -> int:
    if parity is None:
        if isinstance(q, QPolynomial):
            raise ValueError("symbolic q needs an explicit CharParity")
        return int(CharParity.of(q))
    parity = CharParity(parity)
    if not isinstance(q, QPolynomial) and CharParity.of(q) != parity:
        raise ValueError(f"q={q} is inconsistent with parity {parity.name}")
    return int(parity)


def count_Nstar(d: int, q, parity: CharParity | None = None):
    """Self-reciprocal irreducibles (excluding ``z +- 1``) for the symplectic cycle index."""
    _check_d(d)
    e = _parity(q, parity)
    if d == 1:
        return e + 0 * q
    if d % 2:
        return 0 * q
    total = sum(mobius(a) * (q ** (d // (2 * a)) + 1 - e) for a in divisors(d) if a % 2)
    return _finish(total, d)


def count_Mstar(d: int, q, parity: CharParity | None = None):
    """Pairs ``{f, f*}`` of non-self-reciprocal irreducibles for the symplectic cycle index."""
    return _finish(count_N(d, q) - count_Nstar(d, q, parity), 2)
