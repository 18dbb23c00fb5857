"""The substitution map b(x) -> F(b(x)) as a polynomial map F_q^m -> F_q^n.

Inputs are restricted to b of degree < m = floor((n-1)/k) + 1.  Since the
leading coefficient of F is a unit, deg F(b) = k * deg b, so any b of degree
>= m gives deg F(b) >= n and can never be a difference of two elements of
P_{q,n}; the restricted map therefore sees every relevant F(b).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import DEFAULT
from .errors import FieldMismatch, NonzeroConstantTerm, SizeLimitExceeded, ValidationError, ZeroPolynomial
from .field import FieldSpec
from .polynomial import MultiPoly, UniPoly, grid_values


def input_dimension(n: int, k: int) -> int:
    return (n - 1) // k + 1


def digit_sum(t: int, q: int) -> int:
    s = 0
    while t:
        t, r = divmod(t, q)
        s += r
    return s


def digit_sum_max(q: int, k: int) -> int:
    """max over 1 <= t <= k of the base-q digit sum of t."""
    if k < 1:
        raise ValidationError("digit_sum_max needs k >= 1")
    return max(digit_sum(t, q) for t in range(1, k + 1))


def _base_q_digits(t: int, q: int) -> list[int]:
    out = []
    while t:
        t, r = divmod(t, q)
        out.append(r)
    return out


# x-polynomials whose coefficients live in F_q[c_0, ..., c_{m-1}]:
# dicts mapping a power of x to a MultiPoly in m variables.


def _xmul(spec, m, f: dict, g: dict) -> dict:
    out: dict[int, MultiPoly] = {}
    for i, a in f.items():
        for j, b in g.items():
            term = a * b
            if i + j in out:
                term = out[i + j] + term
            if term.is_zero():
                out.pop(i + j, None)
            else:
                out[i + j] = term
    return out


def _xpow(spec, m, f: dict, e: int) -> dict:
    result = {0: MultiPoly.constant(spec, m)}
    for _ in range(e):
        result = _xmul(spec, m, result, f)
    return result


def _expand(spec: FieldSpec, F: UniPoly, m: int) -> dict:
    """F(c_0 + c_1 x + ... + c_{m-1} x^{m-1}) with every power t of the
    input split along its base-q digits:

        b^t = prod_s (c_0 + c_1 x^{q^s} + ... + c_{m-1} x^{(m-1) q^s})^{t_s}

    which is b^t as a function on F_q^m (c^{q^s} = c there) and keeps the
    c-degree of the t-th power at the digit sum of t.
    """
    q = spec.q
    frob: dict[int, dict] = {}  # s -> b^{(q^s)} with c_j^{q^s} replaced by c_j
    total: dict[int, MultiPoly] = {}
    for t, f_t in enumerate(F.coeffs):
        if not f_t:
            continue
        term = {0: MultiPoly.constant(spec, m, f_t)}
        for s, t_s in enumerate(_base_q_digits(t, q)):
            if not t_s:
                continue
            if s not in frob:
                frob[s] = {j * q**s: MultiPoly.variable(spec, m, j) for j in range(m)}
            term = _xmul(spec, m, term, _xpow(spec, m, frob[s], t_s))
        for i, poly in term.items():
            poly = total[i] + poly if i in total else poly
            if poly.is_zero():
                total.pop(i, None)
            else:
                total[i] = poly
    return total


@dataclass(frozen=True)
class PhiMap:
    spec: FieldSpec
    F: UniPoly
    n: int
    m: int
    phis: tuple[MultiPoly, ...]

    @property
    def k(self) -> int:
        return self.F.degree

    @property
    def max_degree(self) -> int:
        return max((max(p.degree, 0) for p in self.phis), default=0)

    def __call__(self, point) -> tuple[int, ...]:
        return tuple(phi.eval_int(tuple(point)) for phi in self.phis)

    @cached_property
    def coordinate_values(self) -> np.ndarray:
        """Array (q**m, n): row a holds Phi(a) for the input with encoding a."""
        q, m = self.spec.q, self.m
        cols = []
        for phi in self.phis:
            if phi.is_zero():
                cols.append(np.zeros(q**m, dtype=np.int64))
            else:
                cols.append(grid_values(phi).astype(np.int64))
        return np.stack(cols, axis=1)

    @cached_property
    def image_codes(self) -> np.ndarray:
        """Encoding of Phi(a) for every input a (indexed by input encoding)."""
        q = self.spec.q
        weights = np.array([q**i for i in range(self.n)], dtype=np.int64)
        return self.coordinate_values @ weights

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "phis": [phi.to_json() for phi in self.phis],
            "preimage_zero": [list(pt) for pt in preimage_zero(self)],
            "max_deg_phi": self.max_degree,
        }


def validate_F(F: UniPoly, *, allow_constant: bool = False) -> int:
    """deg F, after checking F is nonzero with zero constant term.

    ``allow_constant`` lifts the constant-term condition; only the
    freeness checks use it, the bound does not apply to such F.
    """
    if F.is_zero():
        raise ZeroPolynomial("F must be a nonzero polynomial")
    if F.constant_term != 0 and not allow_constant:
        raise NonzeroConstantTerm(f"F = {F!r} has nonzero constant term {F.constant_term}")
    return F.degree


def build_phi(spec: FieldSpec, F: UniPoly, n: int, *, allow_constant: bool = False) -> PhiMap:
    k = validate_F(F, allow_constant=allow_constant)
    if F.spec != spec:
        raise FieldMismatch(f"F is over {F.spec!r}, expected {spec!r}")
    if n < 1:
        raise ValidationError("n must be >= 1")
    m = input_dimension(n, k)
    expansion = _expand(spec, F, m)
    assert max(expansion, default=0) <= n - 1, "F(b) exceeded degree n-1"
    phis = tuple(expansion.get(i, MultiPoly.zero(spec, m)) for i in range(n))
    return PhiMap(spec, F, n, m, phis)


def _check_enumeration(phi: PhiMap, limit: int | None):
    limit = DEFAULT.max_enumeration if limit is None else limit
    size = phi.spec.q**phi.m
    if size > limit:
        raise SizeLimitExceeded(f"q^m = {size} exceeds enumeration limit {limit}")


def preimage_zero(phi: PhiMap, *, cross_check_limit: int = 3**12) -> list[tuple[int, ...]]:
    """Points (r, 0, ..., 0) with F(r) = 0, ascending by encoding.

    When q^m is small enough the answer is re-derived by evaluating Phi on
    all of F_q^m.
    """
    pts = [(r,) + (0,) * (phi.m - 1) for r in phi.F.roots()]
    if phi.spec.q**phi.m <= cross_check_limit:
        zeros = np.flatnonzero(phi.image_codes == 0)
        q = phi.spec.q
        brute = [tuple((int(a) // q**i) % q for i in range(phi.m)) for a in zeros]
        assert brute == pts, f"Phi^-1(0) mismatch: roots give {pts}, enumeration gives {brute}"
    return pts


def image(phi: PhiMap, *, limit: int | None = None) -> list[int]:
    """Sorted encodings of Phi(F_q^m) as points of F_q^n."""
    _check_enumeration(phi, limit)
    return sorted(int(v) for v in np.unique(phi.image_codes))
