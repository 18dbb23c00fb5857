import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from fqsarkozy.errors import (
    DivisionByZero,
    FieldMismatch,
    NonPrimeCharacteristic,
    OutOfRange,
    SizeLimitExceeded,
    ValidationError,
)
from fqsarkozy.field import (
    FieldSpec,
    arith,
    canonical_modulus,
    decode,
    encode,
    field_create,
    field_of_order,
    inv,
    is_irreducible,
    prime_power,
)

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_prime_field_has_trivial_modulus():
    F2 = field_create(2, 1)
    assert F2.q == 2 and F2.is_prime_field


def test_f4_modulus():
    assert field_create(2, 2).modulus == (1, 1, 1)


def test_f9_modulus():
    assert field_create(3, 2).modulus == (1, 0, 1)


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 125, 128])
def test_canonical_modulus_matches_sympy_scan(q):
    p, e = prime_power(q)
    assert canonical_modulus(p, e) == oracles.canonical_modulus(p, e)


def test_is_irreducible_against_sympy_for_all_small_monics():
    import sympy
    from sympy.abc import X

    for p, deg in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        for enc in range(p**deg):
            low = [(enc // p**i) % p for i in range(deg)]
            ours = is_irreducible(low + [1], p)
            ref = sympy.Poly(list(reversed(low + [1])), X, modulus=p).is_irreducible
            assert ours == ref, (p, low)


@pytest.mark.parametrize("q", SMALL_Q)
def test_tables_match_oracle(q):
    K = oracles.FastGF(q)
    s = field_of_order(q)
    assert s.add_table.tolist() == K.A
    assert s.mul_table.tolist() == K.M


@pytest.mark.parametrize("q", [4, 8, 9])
def test_scalar_ops_match_oracle(q):
    K = oracles.GF(*prime_power(q))
    s = field_of_order(q)
    for a in range(q):
        for b in range(q):
            assert s.add(a, b) == K.add(a, b)
            assert s.sub(a, b) == K.sub(a, b)
            assert s.mul(a, b) == K.mul(a, b)
        if a:
            assert s.inv(a) == K.inv(a)


def test_examples_from_arith():
    F5 = field_create(5)
    assert arith("mul", F5(2), F5(3)).value == 1
    F4 = field_create(2, 2)
    beta = F4(2)
    assert (beta * beta).value == 3  # beta + 1
    assert inv(beta).value == 3
    assert inv(F5(2)).value == 3
    assert inv(field_create(2)(1)).value == 1


def test_encode_decode_examples():
    F4 = field_create(2, 2)
    assert encode(F4(3)) == 3 and F4(3).coeffs == (1, 1)
    F9 = field_create(3, 2)
    assert decode(F9, 5).coeffs == (2, 1)


@pytest.mark.parametrize("q", SMALL_Q)
def test_encode_decode_round_trip(q):
    s = field_of_order(q)
    assert [encode(decode(s, i)) for i in range(q)] == list(range(q))


@pytest.mark.parametrize("q", SMALL_Q)
def test_field_axioms_exhaustive(q):
    s = field_of_order(q)
    A, M = s.add_table, s.mul_table
    x = np.arange(q)
    assert (A[A[:, :, None], x] == A[x[:, None, None], A[None]]).all()
    assert (M[M[:, :, None], x] == M[x[:, None, None], M[None]]).all()
    assert (M[x[:, None, None], A[None]] == A[M[:, :, None], M[:, None, :]]).all()
    assert (A[x, s.neg_table] == 0).all()
    assert (M[x[1:], s.inv_table[1:]] == 1).all()
    assert sorted(M[1:, 1:].ravel().tolist()) == sorted(list(range(1, q)) * (q - 1))


@given(st.sampled_from(SMALL_Q), st.data())
def test_frobenius_is_additive(q, data):
    s = field_of_order(q)
    a = data.draw(st.integers(0, q - 1))
    b = data.draw(st.integers(0, q - 1))
    p = s.p
    assert s.pow(s.add(a, b), p) == s.add(s.pow(a, p), s.pow(b, p))
    assert s.pow(a, q) == a


@given(st.sampled_from(SMALL_Q), st.data())
def test_pow_matches_repeated_multiplication(q, data):
    s = field_of_order(q)
    a = data.draw(st.integers(0, q - 1))
    k = data.draw(st.integers(0, 40))
    acc = 1
    for _ in range(k):
        acc = s.mul(acc, a)
    assert s.pow(a, k) == acc


def test_large_field_without_tables():
    s = field_create(2, 12)
    a, b = 1234, 3001
    assert s.mul(s.mul(a, b), s.inv(b)) == a


def test_errors():
    with pytest.raises(NonPrimeCharacteristic):
        field_create(6)
    with pytest.raises(NonPrimeCharacteristic):
        field_of_order(12)
    with pytest.raises(SizeLimitExceeded):
        field_create(2, 20, max_size=2**16)
    with pytest.raises(DivisionByZero):
        field_create(5).inv(0)
    with pytest.raises(ZeroDivisionError):
        field_create(5)(0).inverse()
    with pytest.raises(OutOfRange):
        field_create(5)(7)
    with pytest.raises(FieldMismatch):
        field_create(5)(1) + field_create(7)(1)


def test_explicit_modulus_must_be_irreducible():
    with pytest.raises(ValidationError, match="reducible"):
        field_create(2, 2, modulus=[1, 0, 1])  # x^2 + 1 = (x + 1)^2
    alt = field_create(3, 2, modulus=[2, 1, 1])  # x^2 + x + 2
    assert alt.modulus == (2, 1, 1)
    assert alt != field_create(3, 2)


def test_spec_serialisation_round_trip():
    s = field_create(3, 2)
    assert s.to_dict() == {"p": 3, "e": 2, "modulus": [1, 0, 1]}
    assert FieldSpec.from_dict(s.to_dict()) == s
