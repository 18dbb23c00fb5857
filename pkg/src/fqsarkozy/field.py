"""Arithmetic in F_q, q = p^e.

Elements are identified with integers in ``[0, q)``: the element
``c_0 + c_1*beta + ... + c_{e-1}*beta^{e-1}`` (beta a root of the modulus)
encodes to ``sum(c_i * p**i)``.  All heavy code paths in the package work on
these encodings through the ``FieldSpec`` methods; :class:`FieldElement` is
the user-facing wrapper.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import DEFAULT
from .errors import (
    DivisionByZero,
    FieldMismatch,
    NonPrimeCharacteristic,
    OutOfRange,
    SizeLimitExceeded,
    ValidationError,
)

# Beyond this, scalar ops are computed from digits instead of looked up.
TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q = p**e, or None if q is not a prime power."""
    if q < 2:
        return None
    p = next(f for f in range(2, q + 1) if q % f == 0)
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return (p, e) if q == 1 else None


# --- polynomials over F_p as little-endian int lists (used for moduli) ---


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _rem_p(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        factor = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bc) % p
        _trim(a)
    return a


def _monic_polys(p: int, degree: int):
    """Monic polynomials of the given degree, ascending by integer encoding."""
    for low in itertools.product(range(p), repeat=degree):
        yield list(reversed(low)) + [1]


def is_irreducible(poly: list[int] | tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim([c % p for c in poly])
    e = len(poly) - 1
    if e < 1:
        return False
    for deg in range(1, e // 2 + 1):
        for div in _monic_polys(p, deg):
            if not _rem_p(poly, div, p):
                return False
    return True


def canonical_modulus(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree e whose low coefficients encode smallest."""
    for low in range(p**e):
        coeffs = [(low // p**i) % p for i in range(e)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError(f"no irreducible polynomial of degree {e} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """A concrete finite field F_{p^e} with a fixed monic irreducible modulus.

    ``modulus`` is the little-endian coefficient tuple ``(c_0, ..., c_e)``;
    for prime fields it is the trivial ``(0, 1)``.
    """

    p: int
    e: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def __repr__(self):
        if self.e == 1:
            return f"FieldSpec(F_{self.p})"
        return f"FieldSpec(F_{self.q}, modulus={list(self.modulus)})"

    # -- digits ------------------------------------------------------------

    def digits(self, a: int) -> tuple[int, ...]:
        p = self.p
        return tuple((a // p**i) % p for i in range(self.e))

    def from_digits(self, digits) -> int:
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(digits))

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise OutOfRange(f"{a} is not an element encoding of F_{self.q}")
        return a

    # -- scalar arithmetic on encodings -------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self._tables is not None:
            return self._tables[0][a][b]
        return self._digit_add(a, b, 1)

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        if self._tables is not None:
            return self._tables[0][a][self._tables[2][b]]
        return self._digit_add(a, b, -1)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        if self._tables is not None:
            return self._tables[2][a]
        return self._digit_add(0, a, -1)

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if self._tables is not None:
            return self._tables[1][a][b]
        return self._poly_mul(a, b)

    def pow(self, a: int, k: int) -> int:
        """a**k with the convention 0**0 = 1."""
        if k < 0:
            return self.pow(self.inv(a), -k)
        if self.e == 1:
            return pow(a, k, self.p)
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in F_{self.q}")
        return self.pow(a, self.q - 2)

    def _digit_add(self, a: int, b: int, sign: int) -> int:
        return self.from_digits(x + sign * y for x, y in zip(self.digits(a), self.digits(b)))

    def _poly_mul(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        mod = self.modulus
        for top in range(2 * e - 2, e - 1, -1):
            c = prod[top] % p
            if c:
                for i in range(e):
                    prod[top - e + i] -= c * mod[i]
        return self.from_digits(prod[:e])

    @cached_property
    def _tables(self):
        if self.e == 1 or self.q > TABLE_LIMIT:
            return None
        q = self.q
        add = [[self._digit_add(a, b, 1) for b in range(q)] for a in range(q)]
        mul = [[self._poly_mul(a, b) for b in range(q)] for a in range(q)]
        neg = [self._digit_add(0, a, -1) for a in range(q)]
        return add, mul, neg

    # -- vectorised tables (numpy) -----------------------------------------

    @cached_property
    def add_table(self) -> np.ndarray:
        self._require_small()
        r = np.arange(self.q)
        if self.e == 1:
            return (r[:, None] + r[None, :]) % self.p
        return np.array(self._tables[0], dtype=np.int64)

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._require_small()
        r = np.arange(self.q)
        if self.e == 1:
            return (r[:, None] * r[None, :]) % self.p
        return np.array(self._tables[1], dtype=np.int64)

    @cached_property
    def neg_table(self) -> np.ndarray:
        self._require_small()
        r = np.arange(self.q)
        if self.e == 1:
            return (-r) % self.p
        return np.array(self._tables[2], dtype=np.int64)

    @cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg_table]

    @cached_property
    def inv_table(self) -> np.ndarray:
        self._require_small()
        return np.array([0] + [self.inv(a) for a in range(1, self.q)], dtype=np.int64)

    def _require_small(self):
        if self.q > TABLE_LIMIT:
            raise SizeLimitExceeded(f"vectorised tables need q <= {TABLE_LIMIT}, got {self.q}")

    # -- elements ----------------------------------------------------------

    def __call__(self, value: int) -> "FieldElement":
        return decode(self, value)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        return [FieldElement(self, i) for i in range(self.q)]

    def embed_int(self, n: int) -> int:
        """Encoding of the integer n reduced into the prime subfield."""
        return n % self.p

    def to_dict(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, data: dict) -> "FieldSpec":
        return field_create(data["p"], data["e"], modulus=data.get("modulus"))


def field_create(p: int, e: int = 1, *, modulus=None, max_size: int | None = None) -> FieldSpec:
    """Build F_{p^e}, by default with the canonical modulus.

    The canonical modulus is the monic irreducible degree-e polynomial over
    F_p whose coefficients (c_0, ..., c_{e-1}) give the smallest
    ``sum(c_i * p**i)``.  A user-supplied modulus is checked for
    irreducibility instead.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    if e < 1:
        raise ValidationError(f"extension degree must be >= 1, got {e}")
    limit = DEFAULT.max_field if max_size is None else max_size
    if p**e > limit:
        raise SizeLimitExceeded(f"field size {p}^{e} exceeds limit {limit}")
    if modulus is None:
        return _canonical_field(p, e)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != e + 1 or modulus[-1] != 1:
        raise ValidationError(f"modulus must be monic of degree {e}: {list(modulus)}")
    if e == 1:
        if modulus != (0, 1):
            raise ValidationError("prime fields use the trivial modulus [0, 1]")
    elif not is_irreducible(modulus, p):
        raise ValidationError(f"modulus {list(modulus)} is reducible over F_{p}")
    return FieldSpec(p, e, modulus)


@functools.lru_cache(maxsize=None)
def _canonical_field(p: int, e: int) -> FieldSpec:
    modulus = (0, 1) if e == 1 else canonical_modulus(p, e)
    return FieldSpec(p, e, modulus)


def field_of_order(q: int, **kwargs) -> FieldSpec:
    pe = prime_power(q)
    if pe is None:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return field_create(*pe, **kwargs)


@dataclass(frozen=True, slots=True)
class FieldElement:
    """An element of ``spec``, stored by its integer encoding."""

    spec: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.digits(self.value)

    def _other(self, other) -> int:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec!r} vs {other.spec!r}")
        return other.value

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add(self.value, self._other(other)))

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.value, self._other(other)))

    def __truediv__(self, other):
        return self * other.inverse()

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __pow__(self, k: int):
        return FieldElement(self.spec, self.spec.pow(self.value, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        if self.spec.e == 1:
            return f"{self.value} (mod {self.spec.p})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("b" if i == 1 else f"b^{i}")
                terms.append(mono if c == 1 and mono else f"{c}{mono}")
        return " + ".join(terms) or "0"


def arith(op: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
    if op == "neg":
        return -a
    if b is None:
        raise ValidationError(f"{op} needs two operands")
    try:
        return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__}[op](b)
    except KeyError:
        raise ValidationError(f"unknown field operation {op!r}") from None


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def encode(a: FieldElement) -> int:
    return a.value


def decode(spec: FieldSpec, i: int) -> FieldElement:
    return FieldElement(spec, spec.check(int(i)))
