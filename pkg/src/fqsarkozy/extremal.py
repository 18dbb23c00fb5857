"""Exact extremal sizes of F-difference-free sets.

Both ambient groups are elementary abelian p-groups encoded as integers
(F_q^n via coefficient tuples, F_{p^n} via its basis 1, beta, ...), so the
group law is digit-wise base-p addition.  A set is free exactly when it is
independent in the Cayley graph with connection set
C = (diffs u -diffs) minus {0}; the maximum is found as a maximum clique of
the complement graph.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import DEFAULT, Config
from .errors import (
    BoundViolated,
    CoefficientsNotInPrimeField,
    ElementOutOfRange,
    SizeLimitExceeded,
    ValidationError,
)
from .field import FieldSpec, field_create
from .phimap import build_phi, image, validate_F
from .polynomial import UniPoly
from .vectors import point_add, point_neg, point_sub


@dataclass(frozen=True)
class ForbiddenSet:
    setting: str  # "poly_ring" or "field"
    spec: FieldSpec  # F_q for poly_ring, F_{p^n} for field
    F: UniPoly
    n: int
    diffs: tuple[int, ...]

    @property
    def dimension(self) -> int:
        """Number of F_spec-coordinates of an ambient element."""
        return self.n if self.setting == "poly_ring" else 1

    @property
    def ambient_size(self) -> int:
        return self.spec.q**self.dimension

    @property
    def q(self) -> int:
        """The base of the bound: q for poly_ring, p for field."""
        return self.spec.q if self.setting == "poly_ring" else self.spec.p

    @property
    def k(self) -> int:
        return self.F.degree

    def sub(self, a, b):
        return point_sub(self.spec, self.dimension, a, b)

    def add(self, a, b):
        return point_add(self.spec, self.dimension, a, b)

    def connection_set(self) -> np.ndarray:
        d = np.array(self.diffs, dtype=np.int64)
        both = np.union1d(d, point_neg(self.spec, self.dimension, d))
        return both[both != 0]

    def to_json(self) -> dict:
        return {
            "setting": self.setting,
            "field": self.spec.to_dict(),
            "F": self.F.to_text(),
            "n": self.n,
            "diffs": list(self.diffs),
        }


def _lift_to(big: FieldSpec, F: UniPoly) -> UniPoly:
    if not all(c < big.p for c in F.coeffs):
        raise CoefficientsNotInPrimeField(f"F = {F!r} has coefficients outside F_{big.p}")
    return UniPoly(big, F.coeffs)


def forbidden_set(
    setting: str, spec: FieldSpec, F: UniPoly, n: int, *, allow_constant: bool = False, config: Config = DEFAULT
) -> ForbiddenSet:
    """Values F(b) that a difference of two distinct members must avoid.

    poly_ring: ``spec`` is F_q, diffs = Phi(F_q^m) inside F_q^n.
    field: ``spec`` is F_p (or already F_{p^n}), diffs = F(F_{p^n}).
    ``allow_constant`` admits F with F(0) != 0 for freeness checks only.
    """
    validate_F(F, allow_constant=allow_constant)
    if n < 1:
        raise ValidationError("n must be >= 1")
    if setting in ("poly", "poly_ring"):
        if F.spec != spec:
            F = UniPoly(spec, F.coeffs)
        phi = build_phi(spec, F, n, allow_constant=allow_constant)
        diffs = tuple(image(phi, limit=config.max_enumeration))
        return ForbiddenSet("poly_ring", spec, F, n, diffs)
    if setting == "field":
        big = spec if spec.e == n else field_create(spec.p, n, max_size=config.max_field)
        if spec.e not in (1, n):
            raise ValidationError(f"field setting needs F_p or F_(p^{n}), got {spec!r}")
        G = _lift_to(big, F)
        if big.q > config.max_enumeration:
            raise SizeLimitExceeded(f"field of size {big.q} exceeds enumeration limit")
        diffs = tuple(sorted({G.eval_int(b) for b in range(big.q)}))
        return ForbiddenSet("field", big, G, n, diffs)
    raise ValidationError(f"unknown setting {setting!r}")


class FreeCheck(NamedTuple):
    free: bool
    violation: tuple[int, int] | None  # (a1, a2) with a1 - a2 in diffs


def verify_free(A, fs: ForbiddenSet) -> FreeCheck:
    elems = sorted({int(a) for a in A})
    N = fs.ambient_size
    for a in elems:
        if not 0 <= a < N:
            raise ElementOutOfRange(f"{a} is not an element of the ambient group of size {N}")
    if len(elems) < 2:
        return FreeCheck(True, None)
    arr = np.array(elems, dtype=np.int64)
    D = fs.sub(arr[:, None], arr[None, :])
    bad = np.isin(D, np.array(fs.diffs, dtype=np.int64))
    np.fill_diagonal(bad, False)
    # report (larger, smaller) pairs first so {0, c} gives (c, 0)
    hits = np.argwhere(np.tril(bad, -1))
    if not hits.size:
        hits = np.argwhere(bad)
    if hits.size:
        i, j = hits[0]
        return FreeCheck(False, (elems[i], elems[j]))
    return FreeCheck(True, None)


@dataclass(frozen=True)
class SearchResult:
    alpha: int
    witness: tuple[int, ...]
    nodes_explored: int
    elapsed: float

    def to_json(self, *, timing: bool = True) -> dict:
        out = {"alpha": self.alpha, "witness": list(self.witness), "nodes_explored": self.nodes_explored}
        if timing:
            out["elapsed"] = self.elapsed
        return out


def _bitmask(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags.astype(np.uint8), bitorder="little").tobytes(), "little")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def cayley_adjacency(fs: ForbiddenSet) -> list[int]:
    """Neighbour bitmasks of the Cayley graph (bit v set when v is adjacent)."""
    N = fs.ambient_size
    C = fs.connection_set()
    adj = []
    for u in range(N):
        flags = np.zeros(N, dtype=bool)
        if C.size:
            flags[fs.add(u, C)] = True
        adj.append(_bitmask(flags))
    return adj


def _check_limit(fs: ForbiddenSet, limit: int | None):
    limit = DEFAULT.max_vertices if limit is None else limit
    if fs.ambient_size > limit:
        raise SizeLimitExceeded(f"{fs.ambient_size} vertices exceed search limit {limit}")


def max_free_set(fs: ForbiddenSet, *, limit: int | None = None) -> SearchResult:
    """Maximum free set by branch and bound with a greedy-colouring bound.

    Works on the complement of the Cayley graph, where free sets are
    cliques.  Vertex 0 is fixed in the solution (translating any free set
    keeps it free).  Candidates are ordered by greedy colour class and by
    ascending encoding inside a class, so the witness is deterministic.
    """
    _check_limit(fs, limit)
    start = time.perf_counter()
    N = fs.ambient_size
    full = (1 << N) - 1
    cay = cayley_adjacency(fs)
    comp = [full & ~(cay[v] | (1 << v)) for v in range(N)]

    best: list[int] = [0]
    nodes = 0

    def colour_sort(P: int):
        # Greedy colour classes, each filled from the highest vertex down;
        # branching runs backwards through this list, so within a class
        # vertices are tried in ascending encoding.
        order, colours = [], []
        colour = 0
        U = P
        while U:
            colour += 1
            Q = U
            while Q:
                v = Q.bit_length() - 1
                bit = 1 << v
                Q &= ~bit & ~comp[v]
                U &= ~bit
                order.append(v)
                colours.append(colour)
        return order, colours

    def expand(R: list[int], P: int):
        nonlocal best, nodes
        nodes += 1
        order, colours = colour_sort(P)
        for i in range(len(order) - 1, -1, -1):
            if len(R) + colours[i] <= len(best):
                return
            v = order[i]
            R.append(v)
            newP = P & comp[v]
            if newP:
                expand(R, newP)
            elif len(R) > len(best):
                best = list(R)
            R.pop()
            P &= ~(1 << v)

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * N + 1000))
    try:
        expand([0], comp[0])
    finally:
        sys.setrecursionlimit(old)
    witness = tuple(sorted(best))
    result = SearchResult(len(witness), witness, nodes, time.perf_counter() - start)
    assert verify_free(witness, fs).free, "search produced a non-free witness"
    return result


def naive_max_free_set(fs: ForbiddenSet) -> int:
    """alpha by scanning all 2^N subsets; N <= 16 only."""
    N = fs.ambient_size
    if N > 16:
        raise SizeLimitExceeded("naive subset enumeration is limited to 16 elements")
    adj = cayley_adjacency(fs)
    best = 0
    for mask in range(1 << N):
        size = mask.bit_count()
        if size <= best:
            continue
        m = mask
        ok = True
        while m:
            low = m & -m
            if adj[low.bit_length() - 1] & mask:
                ok = False
                break
            m ^= low
        if ok:
            best = size
    return best


def milp_max_free_set(fs: ForbiddenSet) -> int:
    """alpha as a 0/1 integer program (x_u + x_v <= 1 on every edge), via HiGHS."""
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import coo_matrix

    N = fs.ambient_size
    C = fs.connection_set()
    rows, cols = [], []
    edge = 0
    for u in range(N):
        if not C.size:
            break
        for v in np.unique(fs.add(u, C)).tolist():
            if v > u:
                rows += [edge, edge]
                cols += [u, v]
                edge += 1
    c = -np.ones(N)
    constraints = []
    if edge:
        A = coo_matrix((np.ones(2 * edge), (rows, cols)), shape=(edge, N))
        constraints.append(LinearConstraint(A, -np.inf, 1))
    res = milp(c, constraints=constraints, integrality=np.ones(N), bounds=Bounds(0, 1))
    if not res.success:
        raise ValidationError(f"MILP solver failed: {res.message}")
    return int(round(-res.fun))


class ComparisonRow(NamedTuple):
    q: int
    k: int
    n: int
    alpha: int
    bound: float
    ratio: float


def bound_comparison(fs: ForbiddenSet, report, alpha: int | None = None) -> ComparisonRow:
    """Check alpha <= c * t^n for the matching (q, k) report."""
    from .bounds import bound_value

    if (report.q, report.k) != (fs.q, fs.k):
        raise ValidationError(f"report is for (q, k) = {(report.q, report.k)}, instance is {(fs.q, fs.k)}")
    if alpha is None:
        alpha = max_free_set(fs).alpha
    bound = bound_value(report, fs.n).value
    row = ComparisonRow(fs.q, fs.k, fs.n, alpha, bound, alpha / bound)
    if alpha > bound or alpha > fs.ambient_size:
        raise BoundViolated(f"alpha = {alpha} exceeds bound {bound} (or q^n) for {fs.to_json()}")
    return row
