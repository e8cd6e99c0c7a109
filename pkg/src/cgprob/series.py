"""Exact truncated series arithmetic.

Three value types live here:

``QPolynomial``
    an exact polynomial in ``q`` with rational coefficients;
``LaurentSeries``
    a truncated series in ``q^-1``, possibly with a finite part in positive
    powers of ``q``;
``BiSeries``
    a polynomial in ``u`` (truncated at a fixed degree) whose coefficients are
    ``LaurentSeries`` sharing one truncation order.

Exponents of a ``LaurentSeries`` are stored as powers of ``q^-1``: the key
``j`` holds the coefficient of ``q^-j``, so ``j < 0`` means a positive power
of ``q``.  The truncation order ``n`` says that every coefficient with
``j <= n`` is known exactly and nothing is known beyond.  Binary operations
narrow the order as far as the operands force them to and never widen it.

All coefficients are :class:`fractions.Fraction`; nothing here touches
floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping, Union

Number = Union[int, Fraction]


class ValuationError(ValueError):
    """Raised when a series has too low a valuation for the requested operation."""


def _is_number(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def binomial(x, k: int):
    """Generalised binomial coefficient ``x (x-1) ... (x-k+1) / k!``.

    ``x`` may be an int, a Fraction or a QPolynomial; the result has the same
    kind (ints stay ints).
    """
    if k < 0:
        return 0 * x
    if isinstance(x, int):
        num = 1
        for i in range(k):
            num *= x - i
        return num // factorial(k)
    acc = x ** 0 if isinstance(x, QPolynomial) else Fraction(1)
    for i in range(k):
        acc = acc * (x - i)
    return acc / factorial(k)


# ---------------------------------------------------------------------------
# QPolynomial
# ---------------------------------------------------------------------------


class QPolynomial:
    """Polynomial in ``q`` with Fraction coefficients, stored sparsely."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, Number] | Iterable[Number] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        c = {}
        for k, v in items:
            if k < 0:
                raise ValueError(f"negative exponent {k} in QPolynomial")
            if v:
                c[k] = Fraction(v)
        self._c = c

    @classmethod
    def q(cls) -> QPolynomial:
        return cls({1: 1})

    @classmethod
    def constant(cls, c: Number) -> QPolynomial:
        return cls({0: c})

    @staticmethod
    def _coerce(other) -> QPolynomial | None:
        if isinstance(other, QPolynomial):
            return other
        if _is_number(other):
            return QPolynomial({0: other})
        return None

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    @property
    def degree(self) -> int:
        """Largest exponent present; -1 for the zero polynomial."""
        return max(self._c, default=-1)

    def coefficient(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self._c.values())

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for k, v in o._c.items():
            c[k] = c.get(k, 0) + v
        return QPolynomial(c)

    __radd__ = __add__

    def __neg__(self) -> QPolynomial:
        return QPolynomial({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_number(other):
            return QPolynomial({k: v * other for k, v in self._c.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c: dict[int, Fraction] = {}
        for i, a in self._c.items():
            for j, b in o._c.items():
                c[i + j] = c.get(i + j, 0) + a * b
        return QPolynomial(c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_number(other):
            return NotImplemented
        return QPolynomial({k: v / other for k, v in self._c.items()})

    def __pow__(self, e: int) -> QPolynomial:
        if e < 0:
            raise ValueError("QPolynomial powers must be non-negative")
        result = QPolynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __call__(self, x):
        """Evaluate at ``x`` (int, Fraction, or another QPolynomial)."""
        deg = self.degree
        if deg < 0:
            return QPolynomial() if isinstance(x, QPolynomial) else 0
        acc = self.coefficient(deg) + 0 * x
        for k in range(deg - 1, -1, -1):
            acc = acc * x + self.coefficient(k)
        if isinstance(acc, Fraction) and acc.denominator == 1:
            return int(acc)
        return acc

    def compose_power(self, m: int) -> QPolynomial:
        """Substitute ``q -> q^m``."""
        return QPolynomial({k * m: v for k, v in self._c.items()})

    def negate_variable(self) -> QPolynomial:
        """Substitute ``q -> -q``."""
        return QPolynomial({k: -v if k % 2 else v for k, v in self._c.items()})

    def to_series(self, order: int) -> LaurentSeries:
        return LaurentSeries({-k: v for k, v in self._c.items()}, order)

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for k in sorted(self._c, reverse=True):
            v = self._c[k]
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if mono and abs(v) == 1:
                coef = "-" if v < 0 else ""
            else:
                coef = str(v) if not mono else f"{v}*"
            terms.append(f"{coef}{mono}")
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


Q = QPolynomial.q()


# ---------------------------------------------------------------------------
# LaurentSeries
# ---------------------------------------------------------------------------


class LaurentSeries:
    """Truncated series ``sum_j c_j q^-j`` known exactly for ``j <= order``."""

    __slots__ = ("_c", "_order")

    def __init__(self, coeffs: Mapping[int, Number] | Iterable[Number], order: int):
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        self._order = int(order)
        self._c = {j: Fraction(v) for j, v in items if v and j <= order}

    # constructors -------------------------------------------------------

    @classmethod
    def one(cls, order: int) -> LaurentSeries:
        return cls({0: 1}, order)

    @classmethod
    def zero(cls, order: int) -> LaurentSeries:
        return cls({}, order)

    @classmethod
    def reciprocal_of(cls, p: QPolynomial, order: int) -> LaurentSeries:
        """Expand ``1/p(q)`` in powers of ``q^-1`` up to ``q^-order``."""
        deg = p.degree
        if deg < 0:
            raise ZeroDivisionError("reciprocal of the zero polynomial")
        # 1/p = q^-deg / w with w = sum_k p_{deg-k} q^-k
        w = LaurentSeries({k: p.coefficient(deg - k) for k in range(deg + 1)}, order - deg)
        return w.inverse().shift(deg)

    # accessors ----------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def valuation(self) -> int:
        """Smallest stored exponent; ``order + 1`` for a series known to be zero."""
        return min(self._c, default=self._order + 1)

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._c)

    @property
    def principal_part(self) -> dict[int, Fraction]:
        """Coefficients of positive powers of ``q`` (keys are negative)."""
        return {j: v for j, v in self._c.items() if j < 0}

    def coefficient(self, j: int) -> Fraction:
        if j > self._order:
            raise IndexError(f"coefficient of q^-{j} lies beyond truncation order {self._order}")
        return self._c.get(j, Fraction(0))

    def coefficients(self) -> list[Fraction]:
        """Dense list ``[c_0, ..., c_order]``; the principal part must be empty."""
        if self.principal_part:
            raise ValuationError(f"series has positive powers of q: {self.principal_part}")
        return [self._c.get(j, Fraction(0)) for j in range(self._order + 1)]

    def is_zero(self) -> bool:
        return not self._c

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self._c.values())

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._c.items()))

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> LaurentSeries | None:
        if isinstance(other, LaurentSeries):
            return other
        if _is_number(other):
            return LaurentSeries({0: other}, self._order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        order = min(self._order, o._order)
        c = {j: v for j, v in self._c.items() if j <= order}
        for j, v in o._c.items():
            if j <= order:
                c[j] = c.get(j, 0) + v
        return LaurentSeries(c, order)

    __radd__ = __add__

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries({j: -v for j, v in self._c.items()}, self._order)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_number(other):
            return LaurentSeries({j: v * other for j, v in self._c.items()}, self._order)
        if isinstance(other, QPolynomial):
            return self.mul_poly(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        order = min(self._order + other.valuation, other._order + self.valuation)
        c: dict[int, Fraction] = {}
        b_items = sorted(other._c.items())
        for i, a in self._c.items():
            for j, b in b_items:
                k = i + j
                if k > order:
                    break
                c[k] = c.get(k, 0) + a * b
        return LaurentSeries(c, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_number(other):
            return self * (Fraction(1) / other)
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, e: int) -> LaurentSeries:
        if e < 0:
            return self.inverse() ** (-e)
        result = LaurentSeries.one(self._order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def mul_poly(self, p: QPolynomial) -> LaurentSeries:
        """Exact product with a polynomial in ``q``; the order drops by ``deg p``."""
        deg = p.degree
        if deg < 0:
            return LaurentSeries.zero(self._order)
        order = self._order - deg
        c: dict[int, Fraction] = {}
        for j, v in self._c.items():
            for k, w in p.coeffs.items():
                if j - k <= order:
                    c[j - k] = c.get(j - k, 0) + v * w
        return LaurentSeries(c, order)

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by ``q^-k`` (exact, so the order moves by ``k`` too)."""
        return LaurentSeries({j + k: v for j, v in self._c.items()}, self._order + k)

    def truncate(self, order: int) -> LaurentSeries:
        return LaurentSeries(self._c, min(order, self._order))

    def inverse(self) -> LaurentSeries:
        v = self.valuation
        if v > self._order:
            raise ZeroDivisionError("series is zero to its truncation order")
        lead = self._c[v]
        # self = lead q^-v (1 + r) with r known to order - v
        m = self._order - v
        w = [self._c.get(v + k, Fraction(0)) / lead for k in range(m + 1)]
        inv = [Fraction(0)] * (m + 1)
        inv[0] = Fraction(1)
        for n in range(1, m + 1):
            s = Fraction(0)
            for k in range(1, n + 1):
                if w[k]:
                    s += w[k] * inv[n - k]
            inv[n] = -s
        return LaurentSeries({k - v: c / lead for k, c in enumerate(inv)}, m - v)

    def _dense(self) -> list[Fraction]:
        return [self._c.get(j, Fraction(0)) for j in range(self._order + 1)]

    def log(self) -> LaurentSeries:
        """Formal logarithm; the constant term must be exactly 1 and there is no principal part."""
        if self.principal_part or self._c.get(0) != 1:
            raise ValueError("log needs constant term 1 and no positive powers of q")
        f = self._dense()
        n = self._order
        g = [Fraction(0)] * (n + 1)
        for m in range(1, n + 1):
            s = Fraction(0)
            for k in range(1, m):
                if g[k] and f[m - k]:
                    s += k * g[k] * f[m - k]
            g[m] = f[m] - s / m
        return LaurentSeries(g, n)

    def exp(self) -> LaurentSeries:
        """Formal exponential of a series with valuation >= 1."""
        if self.valuation < 1:
            raise ValuationError(f"exp needs valuation >= 1, got {self.valuation}")
        g = self._dense()
        n = self._order
        f = [Fraction(0)] * (n + 1)
        f[0] = Fraction(1)
        for m in range(1, n + 1):
            s = Fraction(0)
            for k in range(1, m + 1):
                if g[k] and f[m - k]:
                    s += k * g[k] * f[m - k]
            f[m] = s / m
        return LaurentSeries(f, n)

    def pow_poly(self, p: QPolynomial) -> LaurentSeries:
        """``self ** p(q)`` as ``exp(p log self)``.

        Needs constant term 1 and ``valuation(self - 1) > deg p`` so the
        exponent has no positive powers of ``q``.  The result is exact to
        order ``self.order - deg p``.
        """
        if self.principal_part or self._c.get(0) != 1:
            raise ValueError("pow_poly needs constant term 1 and no positive powers of q")
        deg = max(p.degree, 0)
        rest = (self - 1).valuation
        if rest <= self._order and rest <= deg:
            raise ValuationError(
                f"valuation {rest} of (a - 1) does not exceed exponent degree {deg}"
            )
        if p.is_zero():
            return LaurentSeries.one(self._order)
        return self.log().mul_poly(p).exp()

    # substitutions --------------------------------------------------------

    def inflate(self, k: int) -> LaurentSeries:
        """Substitute ``q -> q^k``."""
        return LaurentSeries({j * k: v for j, v in self._c.items()}, (self._order + 1) * k - 1)

    def negate_q(self) -> LaurentSeries:
        """Substitute ``q -> -q``."""
        return LaurentSeries({j: -v if j % 2 else v for j, v in self._c.items()}, self._order)

    def evaluate(self, q0: Number) -> Fraction:
        """Exact value of the retained terms at ``q = q0``."""
        q0 = Fraction(q0)
        return sum((v * q0 ** (-j) for j, v in self._c.items()), Fraction(0))

    # comparison ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self._order == other._order and self._c == other._c

    def __hash__(self) -> int:
        return hash((self._order, frozenset(self._c.items())))

    def agrees(self, other: LaurentSeries, upto: int | None = None) -> bool:
        """Coefficientwise equality through ``q^-upto`` (default: common order)."""
        n = min(self._order, other._order) if upto is None else upto
        if n > self._order or n > other._order:
            raise IndexError(f"cannot compare through q^-{n}: orders {self._order}, {other._order}")
        keys = {j for j in self._c if j <= n} | {j for j in other._c if j <= n}
        return all(self._c.get(j, 0) == other._c.get(j, 0) for j in keys)

    def __repr__(self) -> str:
        parts = []
        for j, v in sorted(self._c.items()):
            mono = "" if j == 0 else (f"q^{-j}" if j < 0 else f"q^-{j}")
            parts.append(f"{v}{'*' + mono if mono else ''}")
        body = " + ".join(parts) if parts else "0"
        return f"LaurentSeries({body} + O(q^-{self._order + 1}))"


# ---------------------------------------------------------------------------
# BiSeries
# ---------------------------------------------------------------------------


class BiSeries:
    """Polynomial in ``u`` truncated at degree ``u_truncation`` with LaurentSeries coefficients."""

    __slots__ = ("_u", "_order")

    def __init__(self, coeffs: Iterable[LaurentSeries], u_truncation: int | None = None):
        coeffs = list(coeffs)
        if u_truncation is not None:
            coeffs = coeffs[: u_truncation + 1]
        if not coeffs:
            raise ValueError("BiSeries needs at least the u^0 coefficient")
        orders = [c.order for c in coeffs]
        order = min(orders)
        if u_truncation is not None and len(coeffs) < u_truncation + 1:
            coeffs += [LaurentSeries.zero(order)] * (u_truncation + 1 - len(coeffs))
        self._order = order
        self._u = tuple(c if c.order == order else c.truncate(order) for c in coeffs)

    @classmethod
    def one(cls, u_truncation: int, order: int) -> BiSeries:
        return cls([LaurentSeries.one(order)], u_truncation)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], Number], u_truncation: int, order: int) -> BiSeries:
        """Build from ``{(i, j): c}`` meaning ``c u^i q^-j``."""
        rows: list[dict[int, Number]] = [{} for _ in range(u_truncation + 1)]
        for (i, j), c in terms.items():
            if i <= u_truncation:
                rows[i][j] = c
        return cls([LaurentSeries(r, order) for r in rows], u_truncation)

    @property
    def u_truncation(self) -> int:
        return len(self._u) - 1

    @property
    def order(self) -> int:
        return self._order

    def __getitem__(self, i: int) -> LaurentSeries:
        return self._u[i]

    def coefficient(self, i: int) -> LaurentSeries:
        return self._u[i]

    def __iter__(self) -> Iterator[LaurentSeries]:
        return iter(self._u)

    def terms(self) -> dict[tuple[int, int], Fraction]:
        return {(i, j): v for i, s in enumerate(self._u) for j, v in s.terms.items()}

    def truncate(self, u_truncation: int | None = None, order: int | None = None) -> BiSeries:
        d = self.u_truncation if u_truncation is None else min(u_truncation, self.u_truncation)
        n = self._order if order is None else min(order, self._order)
        return BiSeries([s.truncate(n) for s in self._u[: d + 1]], d)

    def _check(self, other: BiSeries) -> None:
        if not isinstance(other, BiSeries):
            raise TypeError(f"expected BiSeries, got {type(other).__name__}")

    def __add__(self, other):
        if _is_number(other) or isinstance(other, LaurentSeries):
            return BiSeries([self._u[0] + other, *self._u[1:]], self.u_truncation)
        if not isinstance(other, BiSeries):
            return NotImplemented
        d = min(self.u_truncation, other.u_truncation)
        return BiSeries([self._u[i] + other._u[i] for i in range(d + 1)], d)

    __radd__ = __add__

    def __neg__(self) -> BiSeries:
        return BiSeries([-s for s in self._u], self.u_truncation)

    def __sub__(self, other):
        if _is_number(other) or isinstance(other, (LaurentSeries, BiSeries)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_number(other) or isinstance(other, (LaurentSeries, QPolynomial)):
            return BiSeries([s * other for s in self._u], self.u_truncation)
        if not isinstance(other, BiSeries):
            return NotImplemented
        d = min(self.u_truncation, other.u_truncation)
        out = []
        for n in range(d + 1):
            acc = None
            for k in range(n + 1):
                a, b = self._u[k], other._u[n - k]
                if a.is_zero() or b.is_zero():
                    term = LaurentSeries.zero(min(a.order + b.valuation, b.order + a.valuation))
                else:
                    term = a * b
                acc = term if acc is None else acc + term
            out.append(acc)
        return BiSeries(out, d)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> BiSeries:
        if e < 0:
            return self.inverse() ** (-e)
        result = BiSeries.one(self.u_truncation, self._order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, BiSeries):
            return self * other.inverse()
        if _is_number(other):
            return self * (Fraction(1) / other)
        return NotImplemented

    def _unit_constant(self) -> bool:
        c0 = self._u[0]
        return c0.terms == {0: 1}

    def inverse(self) -> BiSeries:
        """Inverse of a series whose ``u^0`` coefficient is invertible in the q-series ring."""
        c0inv = self._u[0].inverse()
        out = [c0inv]
        for n in range(1, self.u_truncation + 1):
            acc = None
            for k in range(1, n + 1):
                t = self._u[k] * out[n - k]
                acc = t if acc is None else acc + t
            out.append(-(acc * c0inv))
        return BiSeries(out, self.u_truncation)

    def log(self) -> BiSeries:
        """u-adic logarithm; the ``u^0`` coefficient must be exactly 1."""
        if not self._unit_constant():
            raise ValueError("BiSeries.log needs u^0 coefficient equal to 1")
        f = self._u
        g: list[LaurentSeries] = [LaurentSeries.zero(self._order)]
        for m in range(1, self.u_truncation + 1):
            acc = f[m]
            for k in range(1, m):
                if not g[k].is_zero() and not f[m - k].is_zero():
                    acc = acc - (g[k] * f[m - k]) * Fraction(k, m)
            g.append(acc)
        return BiSeries(g, self.u_truncation)

    def exp(self) -> BiSeries:
        """u-adic exponential; the ``u^0`` coefficient must vanish."""
        if not self._u[0].is_zero():
            raise ValuationError("BiSeries.exp needs a zero u^0 coefficient")
        g = self._u
        f: list[LaurentSeries] = [LaurentSeries.one(self._order)]
        for m in range(1, self.u_truncation + 1):
            acc = LaurentSeries.zero(self._order)
            for k in range(1, m + 1):
                if not g[k].is_zero() and not f[m - k].is_zero():
                    acc = acc + (g[k] * f[m - k]) * Fraction(k, m)
            f.append(acc)
        return BiSeries(f, self.u_truncation)

    def pow_poly(self, p: QPolynomial) -> BiSeries:
        """``self ** p(q)`` computed as ``exp(p log self)``."""
        if p.is_zero():
            return BiSeries.one(self.u_truncation, self._order)
        return (self.log() * p).exp()

    def substitute(self, u_power: int = 1, q_power: int = 1, u_sign: int = 1, q_sign: int = 1) -> BiSeries:
        """Apply ``u -> u_sign * u^u_power`` and ``q -> q_sign * q^q_power``."""
        d = (self.u_truncation + 1) * u_power - 1
        out = [LaurentSeries.zero((self._order + 1) * q_power - 1) for _ in range(d + 1)]
        for i, s in enumerate(self._u):
            t = s.negate_q() if q_sign < 0 else s
            t = t.inflate(q_power) if q_power != 1 else t
            if u_sign < 0 and i % 2:
                t = -t
            out[i * u_power] = t
        return BiSeries(out, d)

    def at_u_one(self) -> LaurentSeries:
        """Sum of all retained u-coefficients."""
        acc = self._u[0]
        for s in self._u[1:]:
            acc = acc + s
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self._u == other._u

    def __hash__(self) -> int:
        return hash(self._u)

    def agrees(self, other: BiSeries, u_upto: int | None = None, q_upto: int | None = None) -> bool:
        d = min(self.u_truncation, other.u_truncation) if u_upto is None else u_upto
        return all(self._u[i].agrees(other._u[i], q_upto) for i in range(d + 1))

    def __repr__(self) -> str:
        return f"BiSeries(u^<= {self.u_truncation}, q^-<= {self._order}, {list(self._u)!r})"
