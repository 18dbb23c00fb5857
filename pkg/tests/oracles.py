"""Independent reference implementations used only by the tests.

Nothing here imports the package's arithmetic: fields are rebuilt with
sympy polynomials over GF(p), polynomial maps by plain Python loops.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import sympy
from sympy.abc import X


@lru_cache(maxsize=None)
def canonical_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest-encoding monic irreducible of degree e over F_p, via sympy."""
    if e == 1:
        return (0, 1)
    for enc in range(p**e):
        low = [(enc // p**i) % p for i in range(e)]
        poly = sympy.Poly(list(reversed(low + [1])), X, modulus=p)
        if poly.is_irreducible:
            return tuple(low) + (1,)
    raise AssertionError("no irreducible polynomial found")


class GF:
    """F_{p^e} with elements encoded as integers sum c_i p^i."""

    def __init__(self, p: int, e: int = 1):
        self.p, self.e, self.q = p, e, p**e
        self.modulus = canonical_modulus(p, e)
        self._mod = sympy.Poly(list(reversed(self.modulus)), X, modulus=p)

    def _poly(self, a: int):
        digits = [(a // self.p**i) % self.p for i in range(self.e)]
        return sympy.Poly(list(reversed(digits)), X, modulus=self.p)

    def _enc(self, poly) -> int:
        coeffs = [int(c) % self.p for c in reversed(poly.all_coeffs())]
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def add(self, a, b):
        return self._enc(self._poly(a) + self._poly(b))

    def sub(self, a, b):
        return self._enc(self._poly(a) - self._poly(b))

    def mul(self, a, b):
        return self._enc((self._poly(a) * self._poly(b)).rem(self._mod))

    def pow(self, a, k):
        out = 1
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def inv(self, a):
        return next(b for b in range(1, self.q) if self.mul(a, b) == 1)

    @lru_cache(maxsize=None)
    def tables(self):
        add = [[self.add(a, b) for b in range(self.q)] for a in range(self.q)]
        mul = [[self.mul(a, b) for b in range(self.q)] for a in range(self.q)]
        return add, mul


class FastGF:
    """Table-driven wrapper around :class:`GF` for the heavier loops."""

    def __init__(self, q: int):
        p, e = sympy.perfect_power(q) or (q, 1)
        self.p, self.e, self.q = p, e, q
        self.gf = GF(p, e)
        self.A, self.M = self.gf.tables()
        self.N = [next(b for b in range(q) if self.A[a][b] == 0) for a in range(q)]

    def add(self, a, b):
        return self.A[a][b]

    def sub(self, a, b):
        return self.A[a][self.N[b]]

    def mul(self, a, b):
        return self.M[a][b]

    def pow(self, a, k):
        out = 1
        for _ in range(k):
            out = self.M[out][a]
        return out


def poly_mul(K: FastGF, f: list[int], g: list[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return out


def poly_compose(K: FastGF, F: list[int], h: list[int]) -> list[int]:
    """F(h) by summing c_t h^t term by term."""
    out: list[int] = []
    power = [1]
    for t, c in enumerate(F):
        if t:
            power = poly_mul(K, power, h)
        term = [K.mul(c, x) for x in power]
        out += [0] * (len(term) - len(out))
        for i, x in enumerate(term):
            out[i] = K.add(out[i], x)
    return out


def phi_map(K: FastGF, F: list[int], n: int, m: int, a: tuple[int, ...]) -> tuple[int, ...]:
    """Coefficients of F(a_0 + a_1 x + ... ) padded to length n."""
    coeffs = poly_compose(K, F, list(a))
    assert all(c == 0 for c in coeffs[n:])
    return tuple((coeffs + [0] * n)[:n])


def encode(q: int, v) -> int:
    return sum(int(c) * q**i for i, c in enumerate(v))


def decode(q: int, n: int, code: int) -> tuple[int, ...]:
    return tuple((code // q**i) % q for i in range(n))


def points(q: int, n: int):
    return [decode(q, n, c) for c in range(q**n)]


def brute_count_monomials(n: int, q: int, D) -> int:
    return sum(1 for e in itertools.product(range(q), repeat=n) if sum(e) <= D)


def brute_rank(K: FastGF, rows: list[list[int]]) -> int:
    """Row reduction with Python lists and the oracle field."""
    M = [list(r) for r in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(M)) if M[r][col]), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        inv = next(b for b in range(1, K.q) if K.mul(M[rank][col], b) == 1)
        M[rank] = [K.mul(inv, x) for x in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][col]:
                f = M[r][col]
                M[r] = [K.sub(x, K.mul(f, y)) for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


def group_sub(q: int, n: int, a: int, b: int, K: FastGF) -> int:
    return encode(q, [K.sub(x, y) for x, y in zip(decode(q, n, a), decode(q, n, b))])


def brute_alpha(N: int, bad) -> int:
    """Largest subset of range(N) with no pair (u, v), u != v, where bad(u, v)."""
    best = 0
    for mask in range(1 << N):
        members = [i for i in range(N) if mask >> i & 1]
        if len(members) <= best:
            continue
        if all(not bad(u, v) for u in members for v in members if u != v):
            best = len(members)
    return best
