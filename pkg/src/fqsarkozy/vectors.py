"""Points of F_q^n as integers.

A point ``(c_0, ..., c_{n-1})`` encodes to ``sum(c_i * q**i)``, the same
little-endian convention used for the coefficients of a polynomial of degree
< n.  Because addition in F_{p^e} is digit-wise mod p, group addition on
these encodings is digit-wise base-p addition; the helpers below exploit
that and never need the field's multiplication.
"""

from __future__ import annotations

import numpy as np

from .field import FieldSpec


def encode_point(spec: FieldSpec, point) -> int:
    q = spec.q
    out = 0
    for i, c in enumerate(point):
        out += spec.check(int(c)) * q**i
    return out


def decode_point(spec: FieldSpec, n: int, index: int) -> tuple[int, ...]:
    q = spec.q
    return tuple((index // q**i) % q for i in range(n))


def all_points(spec: FieldSpec, n: int) -> np.ndarray:
    """Array of shape (q**n, n) whose row r is decode_point(r)."""
    q = spec.q
    idx = np.arange(q**n, dtype=np.int64)
    return np.stack([(idx // q**i) % q for i in range(n)], axis=1) if n else idx[:, None]


def _digitwise(a, b, p: int, ndigits: int, sign: int):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if p == 2:
        return a ^ b
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    place = 1
    for _ in range(ndigits):
        da = (a // place) % p
        db = (b // place) % p
        out += ((da + sign * db) % p) * place
        place *= p
    return out


def point_add(spec: FieldSpec, n: int, a, b):
    return _digitwise(a, b, spec.p, spec.e * n, 1)


def point_sub(spec: FieldSpec, n: int, a, b):
    return _digitwise(a, b, spec.p, spec.e * n, -1)


def point_neg(spec: FieldSpec, n: int, a):
    return _digitwise(0, a, spec.p, spec.e * n, -1)
