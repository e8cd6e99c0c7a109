"""Small finite fields, polynomials and matrices over them.

Field elements are ints ``0..q-1``.  For ``q = p^k`` with ``k > 1`` the int
``sum c_i p^i`` stands for ``sum c_i x^i`` modulo a fixed irreducible.
Polynomials are coefficient tuples, lowest degree first, with no trailing
zeros.  Matrices are tuples of row tuples.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

# (p, k) -> coefficients of the defining polynomial, lowest first
_MODULI = {
    4: (2, (1, 1, 1)),      # x^2 + x + 1
    8: (2, (1, 1, 0, 1)),   # x^3 + x + 1
    9: (3, (1, 0, 1)),      # x^2 + 1
}
SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)

Poly = tuple
Matrix = tuple


class FiniteField:
    """Arithmetic in F_q through precomputed tables."""

    def __init__(self, q: int):
        if q not in SUPPORTED_Q:
            raise ValueError(f"unsupported field size {q}; supported: {SUPPORTED_Q}")
        self.q = q
        if q in _MODULI:
            self.p, modulus = _MODULI[q]
            self.k = len(modulus) - 1
        else:
            self.p, modulus, self.k = q, None, 1
        p, k = self.p, self.k

        def digits(a):
            return [(a // p ** i) % p for i in range(k)]

        def undigits(ds):
            return sum(c * p ** i for i, c in enumerate(ds))

        def polymul(a, b):
            prod_ = [0] * (2 * k - 1)
            for i, x in enumerate(digits(a)):
                for j, y in enumerate(digits(b)):
                    prod_[i + j] = (prod_[i + j] + x * y) % p
            for top in range(len(prod_) - 1, k - 1, -1):
                c = prod_[top]
                if c:
                    for i, m in enumerate(modulus):
                        prod_[top - k + i] = (prod_[top - k + i] - c * m) % p
            return undigits(prod_[:k])

        r = range(q)
        if k == 1:
            self.add_t = [[(a + b) % p for b in r] for a in r]
            self.mul_t = [[(a * b) % p for b in r] for a in r]
        else:
            self.add_t = [[undigits([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in r] for a in r]
            self.mul_t = [[polymul(a, b) for b in r] for a in r]
        self.neg_t = [next(b for b in r if self.add_t[a][b] == 0) for a in r]
        self.inv_t = [0] + [next(b for b in r if self.mul_t[a][b] == 1) for a in range(1, q)]
        self._check_axioms()

    def _check_axioms(self) -> None:
        q, m, a = self.q, self.mul_t, self.add_t
        for x in range(q):
            for y in range(q):
                if m[x][y] != m[y][x] or a[x][y] != a[y][x]:
                    raise AssertionError(f"F_{q} tables are not commutative")
        if any(self.mul_t[x][self.inv_t[x]] != 1 for x in range(1, q)):
            raise AssertionError(f"F_{q} has a zero divisor")

    def add(self, a: int, b: int) -> int:
        return self.add_t[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_t[a][self.neg_t[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_t[a][b]

    def neg(self, a: int) -> int:
        return self.neg_t[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.inv_t[a]

    def power(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mul_t[out][a]
        return out

    def __repr__(self) -> str:
        return f"FiniteField({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    return FiniteField(q)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def _trim(c: list) -> Poly:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(F: FiniteField, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = F.add_t[out[i + j]][F.mul_t[x][y]]
    return _trim(out)


def poly_divmod(F: FiniteField, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead_inv = F.inv(b[-1])
    quot = [0] * max(len(a) - db, 0)
    for top in range(len(rem) - 1, db - 1, -1):
        c = F.mul_t[rem[top]][lead_inv]
        if c:
            quot[top - db] = c
            for i, y in enumerate(b):
                rem[top - db + i] = F.sub(rem[top - db + i], F.mul_t[c][y])
    return _trim(quot), _trim(rem[:db])


def monic_polys(q: int, deg: int):
    for low in product(range(q), repeat=deg):
        yield tuple(low) + (1,)


@lru_cache(maxsize=None)
def irreducibles(q: int, max_deg: int) -> tuple[Poly, ...]:
    """Monic irreducibles over F_q of degree ``1..max_deg``, found by trial division."""
    F = field(q)
    found: list[Poly] = []
    for d in range(1, max_deg + 1):
        for f in monic_polys(q, d):
            if all(poly_divmod(F, f, g)[1] for g in found if 2 * (len(g) - 1) <= d):
                found.append(f)
    return tuple(found)


def poly_str(f: Poly) -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mono = "1" if i == 0 else ("z" if i == 1 else f"z^{i}")
        terms.append(mono if c == 1 and i else f"{c}*{mono}" if i else str(c))
    return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def identity(d: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def mat_mul(F: FiniteField, a: Matrix, b: Matrix) -> Matrix:
    add, mul = F.add_t, F.mul_t
    cols = list(zip(*b))
    out = []
    for row in a:
        new = []
        for col in cols:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add[acc][mul[x][y]]
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_add_scaled_identity(F: FiniteField, a: Matrix, c: int) -> Matrix:
    return tuple(tuple(F.add(x, c) if i == j else x for j, x in enumerate(row)) for i, row in enumerate(a))


def rank(F: FiniteField, m: Matrix) -> int:
    rows = [list(r) for r in m]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def mat_inv(F: FiniteField, m: Matrix) -> Matrix:
    d = len(m)
    rows = [list(r) + [1 if i == j else 0 for j in range(d)] for i, r in enumerate(m)]
    for c in range(d):
        pivot = next((i for i in range(c, d) if rows[i][c]), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        rows[c], rows[pivot] = rows[pivot], rows[c]
        inv = F.inv(rows[c][c])
        rows[c] = [F.mul(inv, x) for x in rows[c]]
        for i in range(d):
            if i != c and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return tuple(tuple(r[d:]) for r in rows)


def poly_at_matrix(F: FiniteField, f: Poly, m: Matrix) -> Matrix:
    """``f(m)`` by Horner's rule."""
    d = len(m)
    acc = tuple(tuple(0 for _ in range(d)) for _ in range(d))
    for c in reversed(f):
        acc = mat_add_scaled_identity(F, mat_mul(F, acc, m), c)
    return acc


def charpoly(F: FiniteField, m: Matrix) -> Poly:
    """``det(z I - m)`` by cofactor expansion over F_q[z]; fine for the tiny sizes used here."""
    d = len(m)
    entries = [[(F.neg(m[i][j]), 1) if i == j else _trim([F.neg(m[i][j])]) for j in range(d)] for i in range(d)]
    entries = [[_trim(list(e)) for e in row] for row in entries]

    def det(rows: tuple[int, ...], cols: tuple[int, ...]) -> Poly:
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        total: list = []
        r0, rest = rows[0], rows[1:]
        for k, c in enumerate(cols):
            e = entries[r0][c]
            if not e:
                continue
            term = poly_mul(F, e, det(rest, cols[:k] + cols[k + 1:]))
            if k % 2:
                term = tuple(F.neg(x) for x in term)
            n = max(len(total), len(term))
            total = [F.add(total[i] if i < len(total) else 0, term[i] if i < len(term) else 0) for i in range(n)]
        return _trim(list(total))

    return det(tuple(range(d)), tuple(range(d)))
