"""Invariant suites behind the ``selftest`` subcommand.

Each suite returns ``{"passed": bool, "checked": int, ...}``; a failing
suite carries the first counterexample it met.
"""

from __future__ import annotations

import numpy as np

from .bounds import bound_value, minimize
from .clpcore import build_mu, build_P, pointwise_identity_check
from .config import DEFAULT, Config
from .extremal import forbidden_set, max_free_set
from .field import field_of_order, prime_power
from .phimap import build_phi, preimage_zero
from .polynomial import UniPoly, power_sum
from .rankcert import certify, count_monomials
from .vectors import all_points

SMALL_Q = [q for q in range(2, 17) if prime_power(q)]

# (q, F coefficient list, n) instances for the identity and rank suites
GRID = [
    (2, [0, 0, 1], 1),
    (2, [0, 0, 1], 3),
    (2, [0, 1, 1], 2),
    (2, [0, 0, 0, 1], 4),
    (3, [0, 0, 1], 2),
    (3, [0, 1, 0, 1], 3),
    (4, [0, 0, 1], 2),
    (4, [0, 2, 0, 1], 3),
]


def field_axioms(qs=SMALL_Q) -> dict:
    checked = 0
    for q in qs:
        s = field_of_order(q)
        A, M, N, I = s.add_table, s.mul_table, s.neg_table, s.inv_table
        x = np.arange(q)
        ok = (
            (A == A.T).all()
            and (M == M.T).all()
            and (A[A[:, :, None], x[None, None, :]] == A[x[:, None, None], A[None, :, :]]).all()
            and (M[M[:, :, None], x[None, None, :]] == M[x[:, None, None], M[None, :, :]]).all()
            and (M[x[:, None, None], A[None, :, :]] == A[M[:, :, None], M[:, None, :]]).all()
            and (A[0] == x).all()
            and (M[1] == x).all()
            and (A[x, N] == 0).all()
            and (M[x[1:], I[1:]] == 1).all()
        )
        checked += 1
        if not ok:
            return {"passed": False, "checked": checked, "counterexample": q}
    return {"passed": True, "checked": checked}


def power_sums(qs=SMALL_Q) -> dict:
    """sum_x x^k vanishes for 0 <= k < q-1 and is -1 for k = q-1."""
    checked = 0
    for q in qs:
        s = field_of_order(q)
        for k in range(q):
            want = s.neg(1) if k == q - 1 else 0
            checked += 1
            if power_sum(s, k).value != want:
                return {"passed": False, "checked": checked, "counterexample": [q, k]}
    return {"passed": True, "checked": checked}


def mu_contract(trials: int = 200, seed: int = 0) -> dict:
    """Random target sets: mu vanishes off the minimum, not on it, deg <= |S|-1."""
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        q = int(rng.choice([2, 3, 4, 5]))
        m = int(rng.integers(1, 4))
        s = field_of_order(q)
        pts = all_points(s, m)
        size = int(rng.integers(1, min(len(pts), 8) + 1))
        S = [tuple(int(c) for c in pts[i]) for i in rng.choice(len(pts), size, replace=False)]
        mu = build_mu(s, S)
        first = mu.target_set[0]
        ok = (
            mu.mu.eval_int(first) != 0
            and all(mu.mu.eval_int(v) == 0 for v in mu.target_set[1:])
            and mu.degree <= size - 1
        )
        if not ok:
            return {"passed": False, "checked": trial + 1, "counterexample": {"q": q, "S": S}}
    return {"passed": True, "checked": trials}


def _grid_instances(config: Config):
    for q, coeffs, n in GRID:
        s = field_of_order(q)
        phi = build_phi(s, UniPoly(s, coeffs), n)
        mu = build_mu(s, preimage_zero(phi))
        yield q, coeffs, n, build_P(phi, mu, config=config)


def pointwise_identity(config: Config = DEFAULT) -> dict:
    checked = 0
    for q, coeffs, n, ind in _grid_instances(config):
        report = pointwise_identity_check(ind, config=config)
        checked += report.checked
        if not report.passed:
            return {"passed": False, "checked": checked, "counterexample": [q, coeffs, n, report.to_json()]}
    return {"passed": True, "checked": checked}


def rank_certificates(config: Config = DEFAULT) -> dict:
    checked = 0
    for q, coeffs, n, ind in _grid_instances(config):
        cert = certify(ind.P, range(q**n), config=config)
        cap = 2 * count_monomials(n, q, ind.claimed_degree_bound / 2)
        checked += 1
        if not (cert.passed and cert.bound <= cap):
            return {"passed": False, "checked": checked, "counterexample": [q, coeffs, n, cert.to_json()]}
    return {"passed": True, "checked": checked}


def gamma_table(config: Config = DEFAULT) -> dict:
    rows = []
    for q, nmax in ((2, 6), (3, 3)):
        s = field_of_order(q)
        report = minimize(q, 2, config.d_mode)
        for n in range(1, nmax + 1):
            alpha = max_free_set(forbidden_set("poly_ring", s, UniPoly(s, [0, 0, 1]), n, config=config)).alpha
            bound = bound_value(report, n).value
            rows.append({"q": q, "n": n, "gamma": alpha, "bound": bound})
            if alpha > bound:
                return {"passed": False, "checked": len(rows), "rows": rows}
    return {"passed": True, "checked": len(rows), "rows": rows}


SUITES = {
    "field_axioms": lambda config: field_axioms(),
    "power_sums": lambda config: power_sums(),
    "mu_contract": lambda config: mu_contract(seed=config.seed),
    "pointwise_identity": pointwise_identity,
    "rank_certificates": rank_certificates,
    "gamma_vs_bound": gamma_table,
}


def run_selftest(config: Config = DEFAULT) -> dict:
    results = {name: suite(config) for name, suite in SUITES.items()}
    return {"passed": all(r["passed"] for r in results.values()), "suites": results}

