"""Rank certificates for difference matrices M[u, v] = P(u - v)."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import DEFAULT, Config
from .errors import DuplicatePoints, ElementOutOfRange, FieldMismatch, RankBoundViolated, SizeLimitExceeded
from .field import FieldSpec
from .polynomial import NEG_INF, MultiPoly, grid_values
from .vectors import encode_point, point_sub


@functools.lru_cache(maxsize=None)
def _box_coefficients(n: int, q: int) -> tuple[int, ...]:
    """Coefficients of (1 + x + ... + x^{q-1})^n, exact."""
    coeffs = [1]
    for _ in range(n):
        prefix = [0]
        for c in coeffs:
            prefix.append(prefix[-1] + c)
        size = len(coeffs) + q - 1
        coeffs = [prefix[min(j + 1, len(coeffs))] - prefix[max(j - q + 1, 0)] for j in range(size)]
    return tuple(coeffs)


def count_monomials(n: int, q: int, D) -> int:
    """#{alpha in {0..q-1}^n : sum(alpha) <= D}; D may be any real or Fraction."""
    if D == NEG_INF or D < 0:
        return 0
    top = math.floor(D)
    coeffs = _box_coefficients(n, q)
    return sum(coeffs[: top + 1])


@dataclass(frozen=True)
class FqMatrix:
    spec: FieldSpec
    entries: np.ndarray

    @property
    def shape(self):
        return self.entries.shape

    def rank(self) -> int:
        return rank_over_Fq(self)

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        if other.spec != self.spec:
            raise FieldMismatch("matrices over different fields")
        spec = self.spec
        A, B = self.entries, other.entries
        if spec.e == 1:
            return FqMatrix(spec, (A @ B) % spec.p)
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for j in range(A.shape[1]):
            out = spec.add_table[out, spec.mul_table[A[:, j, None], B[None, j, :]]]
        return FqMatrix(spec, out)

    def __eq__(self, other):
        return (
            isinstance(other, FqMatrix)
            and self.spec == other.spec
            and np.array_equal(self.entries, other.entries)
        )

    def tolist(self):
        return self.entries.tolist()


def rank_over_Fq(M: FqMatrix, other_spec: FieldSpec | None = None) -> int:
    """Row reduction; pivot = first nonzero entry in the current column."""
    if other_spec is not None and other_spec != M.spec:
        raise FieldMismatch("matrix and requested field differ")
    spec = M.spec
    A = np.array(M.entries, dtype=np.int64, copy=True)
    if A.size == 0:
        return 0
    rows, cols = A.shape
    prime = spec.e == 1
    p = spec.p
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = spec.inv(int(A[r, c]))
        A[r] = (A[r] * inv) % p if prime else spec.mul_table[inv, A[r]]
        below = r + 1 + np.flatnonzero(A[r + 1 :, c])
        if below.size:
            f = A[below, c]
            if prime:
                A[below] = (A[below] - f[:, None] * A[r][None, :]) % p
            else:
                A[below] = spec.sub_table[A[below], spec.mul_table[f[:, None], A[r][None, :]]]
        r += 1
    return r


def _point_codes(spec: FieldSpec, n: int, points) -> list[int]:
    codes = []
    for pt in points:
        if isinstance(pt, (tuple, list)):
            if len(pt) != n:
                raise ElementOutOfRange(f"point {pt} is not in F_q^{n}")
            codes.append(encode_point(spec, pt))
        else:
            code = int(pt)
            if not 0 <= code < spec.q**n:
                raise ElementOutOfRange(f"point encoding {code} out of range for F_q^{n}")
            codes.append(code)
    if len(set(codes)) != len(codes):
        raise DuplicatePoints("difference matrix points must be distinct")
    return codes


def build_diff_matrix(P: MultiPoly, points, *, config: Config = DEFAULT) -> FqMatrix:
    spec, n = P.spec, P.nvars
    codes = _point_codes(spec, n, points)
    N = len(codes)
    if N > config.max_matrix:
        raise SizeLimitExceeded(f"{N} points exceed matrix limit {config.max_matrix}")
    c = np.array(codes, dtype=np.int64)
    diffs = point_sub(spec, n, c[:, None], c[None, :])
    if spec.q**n <= config.max_enumeration:
        values = grid_values(P) if not P.is_zero() else np.zeros(spec.q**n, dtype=np.int64)
        return FqMatrix(spec, values[diffs])
    q = spec.q
    cache: dict[int, int] = {}
    out = np.zeros((N, N), dtype=np.int64)
    for i in range(N):
        for j in range(N):
            b = int(diffs[i, j])
            if b not in cache:
                cache[b] = P.eval_int(tuple((b // q**t) % q for t in range(n)))
            out[i, j] = cache[b]
    return FqMatrix(spec, out)


@dataclass(frozen=True)
class HalfDegreeSplit:
    """P(u - v) = sum_h h(u) Q_h(v) + sum_h R_h(u) h(v).

    ``u_side`` lists (exponents of h, Q_h) with deg h <= deg P / 2;
    ``v_side`` lists (exponents of h, R_h) for the remaining monomials,
    which then have v-degree <= deg P / 2.  Cofactors are polynomials in n
    variables.
    """

    spec: FieldSpec
    n: int
    threshold: Fraction
    u_side: tuple
    v_side: tuple
    expansion: MultiPoly  # P(u - v) in 2n variables, u first
    verified: str  # "exhaustive" or "symbolic"

    @property
    def size(self) -> int:
        return len(self.u_side) + len(self.v_side)

    def reconstruct(self) -> MultiPoly:
        spec, n = self.spec, self.n
        acc = MultiPoly.zero(spec, 2 * n)
        for h, Q in self.u_side:
            acc = acc + MultiPoly(spec, 2 * n, {h + e: c for e, c in Q.terms.items()})
        for h, R in self.v_side:
            acc = acc + MultiPoly(spec, 2 * n, {e + h: c for e, c in R.terms.items()})
        return acc

    def factor_matrices(self, points) -> tuple[FqMatrix, FqMatrix]:
        """(U, V) with M = U @ V.T: column k holds f_k(u) and g_k(v)."""
        spec, n = self.spec, self.n
        codes = _point_codes(spec, n, points)
        q = spec.q
        pts = [tuple((c // q**t) % q for t in range(n)) for c in codes]
        U = np.zeros((len(pts), self.size), dtype=np.int64)
        V = np.zeros_like(U)
        col = 0
        for family, h_on_u in ((self.u_side, True), (self.v_side, False)):
            for h, cof in family:
                mono = MultiPoly(spec, n, {h: 1})
                f, g = (mono, cof) if h_on_u else (cof, mono)
                for r, pt in enumerate(pts):
                    U[r, col] = f.eval_int(pt)
                    V[r, col] = g.eval_int(pt)
                col += 1
        return FqMatrix(spec, U), FqMatrix(spec, V)


def expand_difference(P: MultiPoly) -> MultiPoly:
    """P(u - v) in 2n variables (u_1..u_n, v_1..v_n)."""
    spec, n = P.spec, P.nvars
    p = spec.p
    out: dict = {}
    add, mul, neg = spec.add, spec.mul, spec.neg
    for exps, c in P.terms.items():
        partial = {((), ()): c}
        for j in exps:
            nxt = {}
            for (ue, ve), val in partial.items():
                for r in range(j + 1):
                    coef = math.comb(j, r) % p
                    if not coef:
                        continue
                    w = mul(val, coef)
                    if (j - r) % 2:
                        w = neg(w)
                    key = (ue + (r,), ve + (j - r,))
                    nxt[key] = add(nxt.get(key, 0), w)
            partial = nxt
        for (ue, ve), val in partial.items():
            key = ue + ve
            s = add(out.get(key, 0), val)
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return MultiPoly(spec, 2 * n, out)


def half_degree_split(P: MultiPoly, *, config: Config = DEFAULT) -> HalfDegreeSplit:
    spec, n = P.spec, P.nvars
    expansion = expand_difference(P)
    threshold = Fraction(P.degree, 2) if not P.is_zero() else Fraction(0)
    u_groups: dict = {}
    v_groups: dict = {}
    for exps, c in expansion.sorted_terms():
        a, b = exps[:n], exps[n:]
        if sum(a) <= threshold:
            u_groups.setdefault(a, {})[b] = c
        else:
            assert sum(b) <= threshold, "monomial with both halves above deg P / 2"
            v_groups.setdefault(b, {})[a] = c
    u_side = tuple((h, MultiPoly(spec, n, t)) for h, t in sorted(u_groups.items(), key=lambda kv: (sum(kv[0]), kv[0])))
    v_side = tuple((h, MultiPoly(spec, n, t)) for h, t in sorted(v_groups.items(), key=lambda kv: (sum(kv[0]), kv[0])))
    split = HalfDegreeSplit(spec, n, threshold, u_side, v_side, expansion, "symbolic")
    rebuilt = split.reconstruct()
    if rebuilt != expansion:
        raise RankBoundViolated("half-degree split does not reconstruct P(u - v)")
    q = spec.q
    if q ** (2 * n) <= config.max_enumeration:
        _verify_split_exhaustive(P, rebuilt)
        split = HalfDegreeSplit(spec, n, threshold, u_side, v_side, expansion, "exhaustive")
    return split


def _verify_split_exhaustive(P: MultiPoly, rebuilt: MultiPoly):
    spec, n, q = P.spec, P.nvars, P.spec.q
    N = q**n
    zeros = np.zeros(N * N, dtype=np.int64)
    lhs = grid_values(rebuilt) if not rebuilt.is_zero() else zeros
    pv = grid_values(P) if not P.is_zero() else np.zeros(N, dtype=np.int64)
    codes = np.arange(N * N, dtype=np.int64)
    u, v = codes % N, codes // N
    rhs = pv[point_sub(spec, n, u, v)]
    if not np.array_equal(lhs, rhs):
        bad = int(np.flatnonzero(lhs != rhs)[0])
        raise RankBoundViolated(f"half-degree split disagrees with P(u - v) at (u, v) = ({bad % N}, {bad // N})")


@dataclass(frozen=True)
class RankCertificate:
    points: tuple[int, ...]
    P: MultiPoly
    rank: int
    T: int
    bound: int
    diagonal_ok: bool

    @property
    def passed(self) -> bool:
        return self.rank <= self.bound

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "T": self.T,
            "bound": self.bound,
            "diagonal": self.diagonal_ok,
            "pass": self.passed,
            "points": len(self.points),
        }


def certify(P: MultiPoly, points, *, config: Config = DEFAULT) -> RankCertificate:
    spec, n = P.spec, P.nvars
    codes = tuple(_point_codes(spec, n, points))
    M = build_diff_matrix(P, codes, config=config)
    rank = rank_over_Fq(M)
    threshold = Fraction(P.degree, 2) if not P.is_zero() else NEG_INF
    T = count_monomials(n, spec.q, threshold)
    A = M.entries
    diag = np.diag(A)
    offdiag = A - np.diag(diag)
    diagonal_ok = bool(diag.all() and not offdiag.any())
    cert = RankCertificate(codes, P, rank, T, 2 * T, diagonal_ok)
    if rank > 2 * T:
        raise RankBoundViolated(f"rank {rank} exceeds 2T = {2 * T}")
    if diagonal_ok and rank != len(codes):
        raise RankBoundViolated(f"diagonal matrix with nonzero diagonal has rank {rank} != {len(codes)}")
    return cert
