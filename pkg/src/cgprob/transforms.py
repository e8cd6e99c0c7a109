"""Product-form factorisations of power series and the six product identities.

A series ``1 + sum a_i x^i`` is rewritten as ``prod (1 - x^i)^{b_i}`` (plain
form) or ``prod ((1 - x^i)/(1 + x^i))^{b_i}`` (plus-minus form).  The
bivariate versions do the same for ``1 + sum a_{ij} u^i q^-j`` with factors
``1 - u^i q^-j``.  Exponents are found one at a time by matching the lowest
unmatched coefficient, so they are unique, and they are integers exactly when
the input coefficients are integers (plain) or even integers (plus-minus).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .counts import CharParity, count_Mstar, count_Mtilde, count_N, count_Nstar, count_Ntilde
from .series import BiSeries, LaurentSeries, Q, QPolynomial, binomial


class ParityError(ValueError):
    """A plus-minus transform met a coefficient that is not an even integer."""


def _num(v):
    v = Fraction(v)
    return int(v) if v.denominator == 1 else v


def _power_coeffs(b, kmax: int, kind: str) -> list:
    """Coefficients of ``(1-t)^b`` (plain) or ``((1-t)/(1+t))^b`` (pm) up to ``t^kmax``."""
    minus = [binomial(b, k) * (-1) ** k for k in range(kmax + 1)]
    if kind == "plain":
        return minus
    plus = [binomial(-b, k) for k in range(kmax + 1)]
    return [sum(minus[i] * plus[k - i] for i in range(k + 1)) for k in range(kmax + 1)]


@dataclass(frozen=True)
class ProductForm:
    """Exponents of a product form.

    ``exponents`` maps ``i`` (univariate) or ``(i, j)`` (bivariate) to ``b``;
    zero exponents are omitted.  ``bounds`` is ``(n,)`` or ``(D, n)``.
    """

    exponents: Mapping
    kind: str
    bounds: tuple[int, ...]

    @property
    def bivariate(self) -> bool:
        return len(self.bounds) == 2

    def is_integral(self) -> bool:
        return all(Fraction(b).denominator == 1 for b in self.exponents.values())

    def reconstruct(self):
        """Expand the product back out: a coefficient list, or a ``{(i, j): c}`` dict."""
        if not self.bivariate:
            (n,) = self.bounds
            out = [1] + [0] * n
            for i, b in sorted(self.exponents.items()):
                out = _mul_uni(out, i, _power_coeffs(b, n // i, self.kind), n)
            return out
        d, n = self.bounds
        terms = {(0, 0): 1}
        for (i, j), b in sorted(self.exponents.items()):
            k = min(d // i, n // j)
            terms = _mul_bi(terms, i, j, _power_coeffs(b, k, self.kind), d, n)
        return terms


def _mul_uni(p: list, i: int, ck: list, n: int) -> list:
    out = list(p)
    for k in range(1, len(ck)):
        c = ck[k]
        if not c:
            continue
        shift = i * k
        for m in range(n - shift + 1):
            if p[m]:
                out[m + shift] += c * p[m]
    return out


def _mul_bi(p: dict, i: int, j: int, ck: list, d: int, n: int) -> dict:
    out = dict(p)
    for k in range(1, len(ck)):
        c = ck[k]
        if not c:
            continue
        di, dj = i * k, j * k
        for (a, b), v in p.items():
            if a + di <= d and b + dj <= n:
                key = (a + di, b + dj)
                out[key] = out.get(key, 0) + c * v
    return {k: v for k, v in out.items() if v}


def _uni_coeffs(f) -> list:
    if isinstance(f, LaurentSeries):
        coeffs = f.coefficients()
    else:
        coeffs = list(f)
    coeffs = [_num(c) for c in coeffs]
    if not coeffs or coeffs[0] != 1:
        raise ValueError("product forms need constant term 1")
    return coeffs


def _pm_exponent(c, a, index, strict: bool):
    if strict and (Fraction(a).denominator != 1 or a % 2):
        raise ParityError(f"coefficient {a} at index {index} is not an even integer")
    return _num(Fraction(c - a, 2))


def to_product_form(f: LaurentSeries | Sequence) -> ProductForm:
    """Exponents ``b_i`` with ``f(x) = prod_{i>=1} (1 - x^i)^{b_i}`` through ``x^n``."""
    a = _uni_coeffs(f)
    n = len(a) - 1
    p = [1] + [0] * n
    b = {}
    for i in range(1, n + 1):
        bi = _num(p[i] - a[i])
        if bi:
            b[i] = bi
            p = _mul_uni(p, i, _power_coeffs(bi, n // i, "plain"), n)
    return ProductForm(b, "plain", (n,))


def to_pm_product_form(f: LaurentSeries | Sequence, strict: bool = True) -> ProductForm:
    """Exponents ``b_i`` with ``f(x) = prod ((1 - x^i)/(1 + x^i))^{b_i}`` through ``x^n``.

    With ``strict`` (the default) every ``a_i`` must be an even integer.
    """
    a = _uni_coeffs(f)
    n = len(a) - 1
    p = [1] + [0] * n
    b = {}
    for i in range(1, n + 1):
        bi = _pm_exponent(p[i], a[i], i, strict)
        if bi:
            b[i] = bi
            p = _mul_uni(p, i, _power_coeffs(bi, n // i, "pm"), n)
    return ProductForm(b, "pm", (n,))


def _bi_terms(f: BiSeries | Mapping, bounds: tuple[int, int] | None) -> tuple[dict, int, int]:
    if isinstance(f, BiSeries):
        terms, d, n = f.terms(), f.u_truncation, f.order
    else:
        if bounds is None:
            raise ValueError("a term mapping needs explicit (u_bound, order) bounds")
        terms, (d, n) = dict(f), bounds
    terms = {k: _num(v) for k, v in terms.items() if v}
    if terms.pop((0, 0), None) != 1:
        raise ValueError("product forms need constant term 1")
    for (i, j) in terms:
        if i < 1 or j < 1:
            raise ValueError(f"term u^{i} q^-{j} is outside i, j >= 1")
    return terms, d, n


def _bi_order(d: int, n: int):
    return sorted(((i, j) for i in range(1, d + 1) for j in range(1, n + 1)),
                  key=lambda ij: (ij[0] + ij[1], ij[0]))


def to_biproduct_form(f: BiSeries | Mapping, bounds: tuple[int, int] | None = None) -> ProductForm:
    """Exponents ``b_ij`` with ``f = prod_{i,j>=1} (1 - u^i q^-j)^{b_ij}`` inside the box ``(D, n)``."""
    a, d, n = _bi_terms(f, bounds)
    p = {(0, 0): 1}
    b = {}
    for i, j in _bi_order(d, n):
        bij = _num(p.get((i, j), 0) - a.get((i, j), 0))
        if bij:
            b[(i, j)] = bij
            p = _mul_bi(p, i, j, _power_coeffs(bij, min(d // i, n // j), "plain"), d, n)
    return ProductForm(b, "plain", (d, n))


def to_pm_biproduct_form(f: BiSeries | Mapping, bounds: tuple[int, int] | None = None,
                         strict: bool = True) -> ProductForm:
    """Plus-minus analogue of :func:`to_biproduct_form`."""
    a, d, n = _bi_terms(f, bounds)
    p = {(0, 0): 1}
    b = {}
    for i, j in _bi_order(d, n):
        bij = _pm_exponent(p.get((i, j), 0), a.get((i, j), 0), (i, j), strict)
        if bij:
            b[(i, j)] = bij
            p = _mul_bi(p, i, j, _power_coeffs(bij, min(d // i, n // j), "pm"), d, n)
    return ProductForm(b, "pm", (d, n))


# ---------------------------------------------------------------------------
# product identities, checked symbolically in q
# ---------------------------------------------------------------------------

XSeries = list  # list of QPolynomial, index = power of x


def _xs_one(n: int) -> XSeries:
    return [QPolynomial.constant(1)] + [QPolynomial() for _ in range(n)]


def _xs_mul(a: XSeries, b: XSeries, n: int) -> XSeries:
    out = [QPolynomial() for _ in range(n + 1)]
    for i in range(n + 1):
        if a[i].is_zero():
            continue
        for j in range(n + 1 - i):
            if not b[j].is_zero():
                out[i + j] = out[i + j] + a[i] * b[j]
    return out


def _xs_power(d: int, c, exponent, n: int) -> XSeries:
    """``(1 + c x^d)^exponent`` with ``exponent`` an int or QPolynomial."""
    out = [QPolynomial() for _ in range(n + 1)]
    for k in range(n // d + 1):
        out[d * k] = QPolynomial.constant(1) * binomial(exponent, k) * c ** k
    return out


def _xs_pm_power(d: int, exponent, n: int) -> XSeries:
    return _xs_mul(_xs_power(d, -1, exponent, n), _xs_power(d, 1, -exponent, n), n)


def _xs_poly(coeffs: Sequence, n: int) -> XSeries:
    out = _xs_one(n)
    out[0] = QPolynomial()
    for i, c in enumerate(coeffs):
        if i <= n:
            out[i] = QPolynomial.constant(1) * c
    return out


def identity_sides(which: str, x_order: int, parity: CharParity = CharParity.ODD) -> tuple[XSeries, XSeries]:
    """Both sides of a product identity as x-series with polynomial-in-q coefficients.

    ``which`` is one of "a" (GL), "b" (U), "c" (U, plus-minus), "d" (Sp),
    "e" (Sp, plus-minus), "f" (the negated Sp product).  Factors with index
    beyond ``x_order`` are congruent to 1 and are dropped.
    """
    n = x_order
    e = int(CharParity(parity))
    lhs = _xs_one(n)
    mul = lambda s: _xs_mul(lhs, s, n)  # noqa: E731
    if which == "a":
        for d in range(1, n + 1):
            lhs = mul(_xs_power(d, -1, count_N(d, Q), n))
        rhs = _xs_mul(_xs_poly([1, -Q], n), _xs_power(1, -1, -1, n), n)
    elif which == "b":
        for d in range(1, n + 1):
            if d % 2:
                lhs = mul(_xs_power(d, -1, count_Ntilde(d, Q), n))
            if 2 * d <= n:
                lhs = mul(_xs_power(2 * d, -1, count_Mtilde(d, Q), n))
        rhs = _xs_mul(_xs_poly([1, -Q], n), _xs_power(1, 1, -1, n), n)
    elif which == "c":
        for d in range(1, n + 1, 2):
            lhs = mul(_xs_pm_power(d, count_Ntilde(d, Q), n))
        rhs = _xs_mul(_xs_poly([1, -1], n), _xs_poly([1, -Q], n), n)
        rhs = _xs_mul(rhs, _xs_power(1, 1, -1, n), n)
        rhs = _xs_mul(rhs, _xs_power(1, Q, -1, n), n)
    elif which in ("d", "e", "f"):
        for d in range(1, n + 1):
            ns = count_Nstar(2 * d, Q, parity)
            ms = count_Mstar(d, Q, parity)
            if which == "d":
                lhs = mul(_xs_power(d, -1, ns, n))
                lhs = mul(_xs_power(d, -1, ms, n))
            elif which == "e":
                lhs = mul(_xs_pm_power(d, ns, n))
            else:
                lhs = mul(_xs_power(d, -1, ns, n))
                lhs = mul(_xs_power(d, 1, ms, n))
        if which == "d":
            rhs = _xs_mul(_xs_poly([1, -Q], n), _xs_power(1, -1, -e, n), n)
        elif which == "e":
            rhs = _xs_mul(_xs_poly([1, -Q], n), _xs_power(1, -1, 1 - e, n), n)
        else:
            rhs = _xs_mul(_xs_poly([1, 0, -Q], n), _xs_power(1, -1, 1 - e, n), n)
            rhs = _xs_mul(rhs, _xs_power(1, 1, -e, n), n)
    else:
        raise ValueError(f"unknown identity {which!r}; expected one of a-f")
    return lhs, rhs


def verify_identity(which: str, x_order: int, parity: CharParity = CharParity.ODD) -> bool:
    lhs, rhs = identity_sides(which, x_order, parity)
    return all(l == r for l, r in zip(lhs, rhs))
