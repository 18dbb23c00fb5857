import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from fqsarkozy.bounds import (
    bound_value,
    d_exact,
    d_paper,
    exponent,
    golden_section,
    minimize,
    objective,
    table,
)
from fqsarkozy.errors import ConvergenceFailure, DomainError, ValidationError
from fqsarkozy.field import prime_power

PRIME_POWERS = [q for q in range(2, 10) if prime_power(q)]


def closed_form_q2(s):
    """For q = 2, d/dx (1+x)/x^s = 0 gives x = s (1 + x)."""
    x = s / (1 - s)
    return x, (1 + x) / x**s


def test_paper_d_q2_k2():
    r = minimize(2, 2, "paper")
    assert r.d == 2 and r.s == pytest.approx(3 / 8)
    x, t = closed_form_q2(3 / 8)
    assert abs(r.x_star - 0.6) < 1e-9 and abs(r.x_star - x) < 1e-9
    assert r.t == pytest.approx(t, abs=1e-12)
    assert abs(r.t - 1.93783) < 1e-4
    assert r.c == pytest.approx(2 / 0.6**0.25, rel=1e-12)
    assert abs(r.c - 2.2724) < 1e-4


def test_exact_d_q2_k2():
    r = minimize(2, 2, "exact")
    assert r.d == 1 and r.s == pytest.approx(1 / 4)
    assert abs(r.x_star - 1 / 3) < 1e-9
    assert r.t == pytest.approx(4 / 3 * 3**0.25, abs=1e-12)
    assert abs(r.t - 1.7548) < 1e-4


@pytest.mark.parametrize("k", range(2, 11))
@pytest.mark.parametrize("mode", ["paper", "exact"])
def test_q2_closed_form_all_k(k, mode):
    r = minimize(2, k, mode)
    x, t = closed_form_q2(r.s)
    assert abs(r.x_star - x) < 1e-9
    assert r.t == pytest.approx(t, abs=1e-12)


@pytest.mark.parametrize("q", PRIME_POWERS)
@pytest.mark.parametrize("mode", ["paper", "exact"])
def test_against_scipy_bounded_minimiser(q, mode):
    for k in range(2, 11):
        r = minimize(q, k, mode)
        ref = minimize_scalar(
            lambda x: objective(x, q, k, r.d), bounds=(1e-9, 1 - 1e-12), method="bounded", options={"xatol": 1e-12}
        )
        assert r.t <= ref.fun + 1e-12
        assert r.t == pytest.approx(ref.fun, rel=1e-10)
        assert r.x_star == pytest.approx(ref.x, abs=1e-5)


@pytest.mark.parametrize("mode", ["paper", "exact"])
def test_t_below_q_everywhere(mode):
    rows = table(9, 10, mode)
    assert len(rows) == len(PRIME_POWERS) * 10
    assert all(1 <= row["t"] < row["q"] for row in rows)


def test_exact_d_never_exceeds_paper_d():
    for q in PRIME_POWERS:
        for k in range(1, 30):
            assert d_exact(q, k) <= d_paper(q, k) + 1e-12


def test_objective_examples():
    assert objective(1.0, 3, 2, 2) == pytest.approx(3)
    assert objective(0.6, 2, 2, 2) == pytest.approx(1.6 / 0.6**0.375)
    assert objective(1e-8, 2, 2, 2) > 1e2
    for bad in (0.0, -0.5, 1.5):
        with pytest.raises(DomainError):
            objective(bad, 2, 2, 2)


def test_k_equal_one_is_not_attained():
    r = minimize(3, 1, "paper")
    assert r.s == 0 and not r.attained
    assert r.t == 1 and r.c == 2


def test_bound_value_examples():
    r = minimize(2, 2, "paper")
    assert bound_value(r, 0).value == pytest.approx(r.c) and r.c >= 2
    assert bound_value(r, 10).value == pytest.approx(2.2724387 * 1.93783**10, rel=1e-4)
    assert bound_value(r, 2).value == pytest.approx(8.533, abs=1e-3)
    values = [bound_value(r, n).value for n in range(15)]
    assert all(a < b for a, b in zip(values, values[1:]))


@given(st.sampled_from(PRIME_POWERS), st.integers(1, 8), st.integers(1, 20), st.sampled_from(["paper", "exact"]))
def test_witness_form_never_exceeds_relaxed_bound(q, k, n, mode):
    r = minimize(q, k, mode)
    v = bound_value(r, n)
    if r.attained:
        assert v.witness <= v.value * (1 + 1e-12)
    else:
        # t is the unattained infimum 1; compare at the x* actually used
        assert v.witness <= r.c * objective(r.x_star, q, k, r.d) ** n * (1 + 1e-12)


def test_golden_section_on_parabola():
    x, fx = golden_section(lambda x: (x - 0.3) ** 2 + 1, 0, 1)
    assert abs(x - 0.3) < 1e-6 and fx == pytest.approx(1)
    with pytest.raises(ConvergenceFailure):
        golden_section(lambda x: x, 0, 1, tol=1e-12, max_iter=5)


def test_exponent_formula():
    assert exponent(2, 2, 2) == pytest.approx(3 / 8)
    assert exponent(3, 4, 3) == pytest.approx((1 - 1 / 12))


def test_validation():
    with pytest.raises(ValidationError):
        minimize(6, 2)
    with pytest.raises(ValidationError):
        minimize(3, 0)
    with pytest.raises(ValidationError):
        minimize(3, 2, "fancy")


def test_grid_and_refined_agree():
    for q in PRIME_POWERS:
        r = minimize(q, 4, "paper")
        assert abs(r.grid_x - r.x_star) <= 2 / 10_001
        assert np.isfinite(r.c) and r.c >= 2
        assert r.witnesses and all(w >= r.t for w in r.witnesses.values())
        assert math.isclose(r.t, objective(r.x_star, q, 4, r.d), rel_tol=1e-12)
