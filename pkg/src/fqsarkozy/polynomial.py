"""Univariate and sparse multivariate polynomials over F_q.

Coefficients are stored as field-element encodings (ints).  Exponents are
never reduced modulo ``x^q - x``: degrees reported here are formal degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .errors import ArityMismatch, FieldMismatch, ValidationError
from .field import FieldElement, FieldSpec

NEG_INF = -math.inf  # degree of the zero polynomial


def _value(spec: FieldSpec, c) -> int:
    if isinstance(c, FieldElement):
        if c.spec != spec:
            raise FieldMismatch(f"{c.spec!r} vs {spec!r}")
        return c.value
    return spec.check(int(c))


class UniPoly:
    """Polynomial in one variable; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Iterable = ()):
        c = [_value(spec, x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def monomial(cls, spec: FieldSpec, k: int, c: int = 1) -> "UniPoly":
        return cls(spec, [0] * k + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def constant_term(self) -> int:
        return self.coefficient(0)

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _same(self, other: "UniPoly"):
        if not isinstance(other, UniPoly):
            return NotImplemented
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec!r} vs {other.spec!r}")
        return other

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __add__(self, other):
        if self._same(other) is NotImplemented:
            return NotImplemented
        add = self.spec.add
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.spec, [add(self.coefficient(i), other.coefficient(i)) for i in range(n)])

    def __neg__(self):
        return UniPoly(self.spec, [self.spec.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        if self._same(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        if self._same(other) is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UniPoly(self.spec)
        spec = self.spec
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = spec.add(out[i + j], spec.mul(a, b))
        return UniPoly(spec, out)

    def scale(self, c) -> "UniPoly":
        c = _value(self.spec, c)
        return UniPoly(self.spec, [self.spec.mul(c, a) for a in self.coeffs])

    def __pow__(self, k: int) -> "UniPoly":
        result, base = UniPoly(self.spec, [1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, a):
        return uni_eval(self, a)

    def eval_int(self, a: int) -> int:
        spec = self.spec
        acc = 0
        for c in reversed(self.coeffs):
            acc = spec.add(spec.mul(acc, a), c)
        return acc

    def compose(self, h: "UniPoly") -> "UniPoly":
        return uni_compose(self, h)

    def roots(self) -> list[int]:
        return [a for a in range(self.spec.q) if self.eval_int(a) == 0]

    def in_prime_field(self) -> bool:
        return all(c < self.spec.p for c in self.coeffs)

    def to_text(self) -> str:
        return ",".join(str(c) for c in self.coeffs) or "0"

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("b" if i == 1 else f"b^{i}")
            coef = "" if (c == 1 and mono) else (str(c) if self.spec.e == 1 or c < self.spec.p else f"[{c}]")
            parts.append(f"{coef}{mono}")
        return " + ".join(parts)


def uni_eval(f: UniPoly, a) -> FieldElement:
    """Horner evaluation; accepts a FieldElement or an encoding."""
    return FieldElement(f.spec, f.eval_int(_value(f.spec, a)))


def uni_compose(F: UniPoly, h: UniPoly) -> UniPoly:
    if F.spec != h.spec:
        raise FieldMismatch(f"{F.spec!r} vs {h.spec!r}")
    acc = UniPoly(F.spec)
    for c in reversed(F.coeffs):
        acc = acc * h + UniPoly(F.spec, [c])
    return acc


def _grlex(exps: tuple[int, ...]):
    return (sum(exps), exps)


@dataclass(frozen=True)
class WeightedDegree:
    """deg* scaled by d so it stays an integer: x-variables weigh d, a-variables 1."""

    value: float  # int, or NEG_INF for the zero polynomial
    d: int

    def as_fraction(self):
        return self.value if self.value == NEG_INF else Fraction(int(self.value), self.d)

    def _check(self, other):
        if other.d != self.d:
            raise ValidationError(f"weighted degrees with different scales {self.d} and {other.d}")

    def __le__(self, other):
        self._check(other)
        return self.value <= other.value

    def __lt__(self, other):
        self._check(other)
        return self.value < other.value


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero coefficient encodings.
    Iteration (and serialisation) follows graded lexicographic order.
    """

    __slots__ = ("spec", "nvars", "terms")

    def __init__(self, spec: FieldSpec, nvars: int, terms: Mapping | None = None, *, _trusted=False):
        if _trusted:
            clean = terms
        else:
            clean = {}
            for exps, c in (terms or {}).items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise ArityMismatch(f"exponent tuple {exps} has length != {nvars}")
                if any(e < 0 for e in exps):
                    raise ValidationError(f"negative exponent in {exps}")
                c = _value(spec, c)
                if c:
                    prev = clean.get(exps, 0)
                    s = spec.add(prev, c)
                    if s:
                        clean[exps] = s
                    else:
                        clean.pop(exps, None)
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, spec: FieldSpec, nvars: int, c=1) -> "MultiPoly":
        return cls(spec, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, spec: FieldSpec, nvars: int, i: int) -> "MultiPoly":
        exps = [0] * nvars
        exps[i] = 1
        return cls(spec, nvars, {tuple(exps): 1})

    @classmethod
    def zero(cls, spec: FieldSpec, nvars: int) -> "MultiPoly":
        return cls(spec, nvars, {}, _trusted=True)

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda t: _grlex(t[0]))

    @property
    def degree(self):
        return max((sum(e) for e in self.terms), default=NEG_INF)

    def max_exponents(self) -> tuple[int, ...]:
        out = [0] * self.nvars
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e > out[i]:
                    out[i] = e
        return tuple(out)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.spec == other.spec
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.spec, self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in reversed(self.sorted_terms()):
            mono = "*".join(
                (f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}") for i, e in enumerate(exps) if e
            )
            coef = str(c) if (c != 1 or not mono) else ""
            parts.append(f"{coef}{'*' if coef and mono else ''}{mono}")
        return " + ".join(parts)

    # -- arithmetic --------------------------------------------------------

    def _same(self, other):
        if not isinstance(other, MultiPoly):
            raise TypeError(f"expected MultiPoly, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec!r} vs {other.spec!r}")
        if other.nvars != self.nvars:
            raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, (int, FieldElement)):
            return MultiPoly.constant(self.spec, self.nvars, _value(self.spec, other))
        self._same(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        add = self.spec.add
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = add(out.get(exps, 0), c)
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return MultiPoly(self.spec, self.nvars, out, _trusted=True)

    def __neg__(self):
        neg = self.spec.neg
        return MultiPoly(self.spec, self.nvars, {e: neg(c) for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __radd__(self, other):
        return self + other

    def __rsub__(self, other):
        return self._lift(other) - self

    def __rmul__(self, other):
        return self * other

    def scale(self, c) -> "MultiPoly":
        c = _value(self.spec, c)
        if c == 0:
            return MultiPoly.zero(self.spec, self.nvars)
        mul = self.spec.mul
        return MultiPoly(self.spec, self.nvars, {e: mul(c, v) for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        self._same(other)
        spec = self.spec
        add, mul = spec.add, spec.mul
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                s = add(out.get(exps, 0), mul(ca, cb))
                if s:
                    out[exps] = s
                else:
                    out.pop(exps, None)
        return MultiPoly(spec, self.nvars, out, _trusted=True)

    def __pow__(self, k: int) -> "MultiPoly":
        result, base = MultiPoly.constant(self.spec, self.nvars), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- evaluation --------------------------------------------------------

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = point[0]
        return multi_eval(self, point)

    def eval_int(self, point) -> int:
        spec = self.spec
        if len(point) != self.nvars:
            raise ArityMismatch(f"point of length {len(point)} for {self.nvars} variables")
        acc = 0
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v = spec.mul(v, spec.pow(x, e))
                    if not v:
                        break
            acc = spec.add(acc, v)
        return acc

    def grid_values(self) -> np.ndarray:
        """Values at every point of F_q^nvars, indexed by point encoding."""
        return grid_values(self)

    # -- structure ---------------------------------------------------------

    def embed(self, nvars: int, offset: int = 0) -> "MultiPoly":
        """The same polynomial viewed in a ring with more variables."""
        if offset + self.nvars > nvars:
            raise ArityMismatch(f"cannot place {self.nvars} variables at offset {offset} in {nvars}")
        pad_l, pad_r = (0,) * offset, (0,) * (nvars - offset - self.nvars)
        return MultiPoly(
            self.spec, nvars, {pad_l + e + pad_r: c for e, c in self.terms.items()}, _trusted=True
        )

    def substitute(self, images: list["MultiPoly"]) -> "MultiPoly":
        """f(g_1, ..., g_nvars) for polynomials g_i sharing one ring."""
        if len(images) != self.nvars:
            raise ArityMismatch(f"{len(images)} substitutions for {self.nvars} variables")
        if not images:
            return self
        target = images[0]
        powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.constant(self.spec, target.nvars)} for _ in images]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        acc = MultiPoly.zero(self.spec, target.nvars)
        for exps, c in self.sorted_terms():
            term = MultiPoly.constant(self.spec, target.nvars, c)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            acc = acc + term
        return acc

    def weighted_degree(self, a_vars: Iterable[int], d: int) -> WeightedDegree:
        return weighted_degree(self, a_vars, d)

    def to_json(self) -> list[dict]:
        return [{"exps": list(e), "coeff": c} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, spec: FieldSpec, nvars: int, data: list[dict]) -> "MultiPoly":
        return cls(spec, nvars, {tuple(t["exps"]): t["coeff"] for t in data})


def multi_arith(op: str, f: MultiPoly, g) -> MultiPoly:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValidationError(f"unknown polynomial operation {op!r}")


def multi_eval(f: MultiPoly, point) -> FieldElement:
    values = [_value(f.spec, x) for x in point]
    return FieldElement(f.spec, f.eval_int(values))


def weighted_degree(f: MultiPoly, a_vars: Iterable[int], d: int) -> WeightedDegree:
    """Max over terms of ``d * (x-degree) + (a-degree)``; zero gives -inf."""
    if d < 1:
        raise ValidationError(f"weight scale d must be positive, got {d}")
    a_vars = set(a_vars)
    if any(not 0 <= i < f.nvars for i in a_vars):
        raise ArityMismatch(f"a-variable indices {sorted(a_vars)} out of range for {f.nvars} variables")
    best = NEG_INF
    for exps in f.terms:
        w = sum(e if i in a_vars else d * e for i, e in enumerate(exps))
        if w > best:
            best = w
    return WeightedDegree(best, d)


def power_sum(spec: FieldSpec, k: int) -> FieldElement:
    """Sum of x**k over all x in F_q, with 0**0 = 1."""
    if k < 0:
        raise ValidationError("power_sum needs k >= 0")
    acc = 0
    for x in range(spec.q):
        acc = spec.add(acc, spec.pow(x, k))
    return FieldElement(spec, acc)


def power_table(spec: FieldSpec, max_exp: int) -> np.ndarray:
    """``V[x, j] = x**j`` for x in F_q and 0 <= j <= max_exp (0**0 = 1)."""
    q = spec.q
    V = np.zeros((q, max_exp + 1), dtype=np.int64)
    V[:, 0] = 1
    if max_exp:
        mul = spec.mul_table
        r = np.arange(q)
        for j in range(1, max_exp + 1):
            V[:, j] = mul[V[:, j - 1], r]
    return V


def dense_coefficients(f: MultiPoly) -> np.ndarray:
    shape = tuple(e + 1 for e in f.max_exponents())
    C = np.zeros(shape, dtype=np.int64)
    for exps, c in f.terms.items():
        C[exps] = c
    return C


def contract_axis(spec: FieldSpec, C: np.ndarray, axis: int, V: np.ndarray) -> np.ndarray:
    """Replace ``axis`` (length J) by length ``V.shape[0]``: out[.., x, ..] = sum_j V[x, j] * C[.., j, ..]."""
    C = np.moveaxis(C, axis, -1)
    J = C.shape[-1]
    V = V[:, :J]
    if spec.e == 1:
        out = np.tensordot(C, V.T, axes=([-1], [0])) % spec.p
    else:
        add, mul = spec.add_table, spec.mul_table
        out = np.zeros(C.shape[:-1] + (V.shape[0],), dtype=np.int64)
        for j in range(J):
            out = add[out, mul[C[..., j, None], V[:, j]]]
    return np.moveaxis(out, -1, axis)


def tensor_values(spec: FieldSpec, C: np.ndarray) -> np.ndarray:
    """Evaluate a dense coefficient tensor at every point; flat, indexed by point encoding."""
    n = C.ndim
    if n == 0:
        return np.array([int(C)], dtype=np.int64)
    V = power_table(spec, max(C.shape) - 1)
    for axis in range(n):
        C = contract_axis(spec, C, axis, V)
    return C.reshape(-1, order="F")


def grid_values(f: MultiPoly) -> np.ndarray:
    if f.nvars == 0:
        return np.array([f.terms.get((), 0)], dtype=np.int64)
    return tensor_values(f.spec, dense_coefficients(f))


def from_dense(spec: FieldSpec, C: np.ndarray) -> MultiPoly:
    nz = np.argwhere(C != 0)
    terms = {tuple(int(i) for i in idx): int(C[tuple(idx)]) for idx in nz}
    return MultiPoly(spec, C.ndim, terms, _trusted=True)
