import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fqsarkozy.errors import FieldMismatch, NonzeroConstantTerm, SizeLimitExceeded, ZeroPolynomial
from fqsarkozy.field import field_of_order
from fqsarkozy.parsing import parse_polynomial
from fqsarkozy.phimap import (
    build_phi,
    digit_sum,
    digit_sum_max,
    image,
    input_dimension,
    preimage_zero,
)
from fqsarkozy.polynomial import UniPoly


def phi_of(q, text, n):
    s = field_of_order(q)
    return build_phi(s, parse_polynomial(text, s), n)


def test_build_phi_square_over_f2():
    phi = phi_of(2, "b^2", 5)
    assert phi.m == 3
    for a in itertools.product(range(2), repeat=3):
        assert phi(a) == (a[0], 0, a[1], 0, a[2])


def test_build_phi_identity_over_f3():
    phi = phi_of(3, "b", 2)
    assert phi.m == 2
    for a in itertools.product(range(3), repeat=2):
        assert phi(a) == a


def test_build_phi_single_constant_input():
    phi = phi_of(2, "b^2", 2)
    assert phi.m == 1
    assert [phi((c,)) for c in range(2)] == [(0, 0), (1, 0)]


def test_digit_route_keeps_degree_at_digit_sum():
    # c^2 reduces to c on F_2, so phi_2 is stored as the linear form c_1
    phi = phi_of(2, "b^2", 5)
    assert phi.phis[2].degree == 1
    assert phi.max_degree == 1


def test_preimage_zero_examples():
    assert preimage_zero(phi_of(2, "b^2+b", 3)) == [(0, 0), (1, 0)]
    assert preimage_zero(phi_of(3, "b^2", 3)) == [(0, 0)]
    assert preimage_zero(phi_of(3, "b^3+2*b", 4)) == [(0, 0), (1, 0), (2, 0)]


def test_image_examples():
    assert image(phi_of(2, "b^2", 2)) == [0, 1]
    assert image(phi_of(3, "b", 2)) == list(range(9))
    assert image(phi_of(2, "b^2+b", 2)) == [0]


def test_digit_sum_max_examples():
    assert digit_sum_max(2, 2) == 1
    assert digit_sum_max(3, 5) == 3
    assert digit_sum_max(2, 3) == 2


@given(st.integers(2, 16), st.integers(1, 200))
def test_digit_sum_max_brute_force(q, k):
    def ds(t):
        total = 0
        while t:
            total += t % q
            t //= q
        return total

    assert digit_sum(k, q) == ds(k)
    assert digit_sum_max(q, k) == max(ds(t) for t in range(k + 1))


@given(st.integers(1, 30), st.integers(1, 10))
def test_input_dimension(n, k):
    m = input_dimension(n, k)
    assert m == (n - 1) // k + 1
    assert k * (m - 1) <= n - 1 < k * m


def _all_constant_free(q, kmax):
    for k in range(1, kmax + 1):
        for tail in itertools.product(range(q), repeat=k - 1):
            for lead in range(1, q):
                yield [0, *tail, lead]


@pytest.mark.parametrize("q", [2, 3, 4])
def test_phi_matches_oracle_composition(q):
    K = oracles.FastGF(q)
    s = field_of_order(q)
    for coeffs in _all_constant_free(q, 3):
        F = UniPoly(s, coeffs)
        k = F.degree
        for n in range(1, 6):
            phi = build_phi(s, F, n)
            if q**phi.m > 729:
                continue
            dstar = min(k, digit_sum_max(q, k))
            assert phi.max_degree <= dstar
            for code in range(q**phi.m):
                a = oracles.decode(q, phi.m, code)
                want = oracles.phi_map(K, coeffs, n, phi.m, a)
                assert phi(a) == want
                assert tuple(phi.coordinate_values[code]) == want


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([5, 7, 8, 9]), st.integers(1, 4), st.integers(1, 4), st.data())
def test_phi_matches_oracle_on_larger_fields(q, k, n, data):
    s = field_of_order(q)
    coeffs = [0] + [data.draw(st.integers(0, q - 1)) for _ in range(k - 1)] + [data.draw(st.integers(1, q - 1))]
    phi = build_phi(s, UniPoly(s, coeffs), n)
    K = oracles.FastGF(q)
    a = tuple(data.draw(st.integers(0, q - 1)) for _ in range(phi.m))
    assert phi(a) == oracles.phi_map(K, coeffs, n, phi.m, a)


def test_phi_of_zero_is_zero():
    phi = phi_of(4, "b^3+[2]b", 6)
    assert phi((0,) * phi.m) == (0,) * 6


def test_preconditions():
    s = field_of_order(3)
    with pytest.raises(NonzeroConstantTerm):
        build_phi(s, parse_polynomial("b^2+b+1", s), 3)
    with pytest.raises(ZeroPolynomial):
        build_phi(s, UniPoly(s, []), 3)
    with pytest.raises(FieldMismatch):
        build_phi(field_of_order(5), UniPoly(s, [0, 1]), 3)


def test_image_respects_enumeration_limit():
    phi = phi_of(3, "b", 8)
    with pytest.raises(SizeLimitExceeded):
        image(phi, limit=100)


def test_json_shape():
    out = phi_of(2, "b^2", 3).to_json()
    assert out["m"] == 2 and out["max_deg_phi"] == 1
    assert out["preimage_zero"] == [[0, 0]]
    assert len(out["phis"]) == 3
