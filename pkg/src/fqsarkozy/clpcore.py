"""The weight polynomial mu and the indicator polynomial P.

    P(x) = sum_{a in F_q^m} mu(a) * prod_i (1 - (x_i - phi_i(a))^(q-1))

evaluates at b to the mu-weighted number of Phi-preimages of b, so it
vanishes off the image of Phi and P(0) is the mu-sum over the roots of F.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import DEFAULT, Config
from .errors import (
    DegreeBoundViolated,
    DuplicatePoints,
    EmptySet,
    MuSumZero,
    SizeLimitExceeded,
    ValidationError,
)
from .field import FieldSpec
from .phimap import PhiMap, digit_sum_max, preimage_zero
from .polynomial import MultiPoly, UniPoly, from_dense, grid_values, power_sum, weighted_degree
from .vectors import encode_point


@dataclass(frozen=True)
class MuPolynomial:
    mu: MultiPoly
    target_set: tuple[tuple[int, ...], ...]
    witness_sum: int

    @property
    def degree(self) -> int:
        return max(self.mu.degree, 0)

    def to_json(self) -> dict:
        return {
            "mu": self.mu.to_json(),
            "degree": self.degree,
            "target_set": [list(v) for v in self.target_set],
            "witness_sum": self.witness_sum,
        }


def build_mu(spec: FieldSpec, S) -> MuPolynomial:
    """Product of affine forms vanishing on all of S but its smallest point.

    For each other point v the form is ``x_i - v_i`` with i the first
    coordinate where v differs from the smallest point.
    """
    pts = [tuple(int(c) for c in v) for v in S]
    if not pts:
        raise EmptySet("mu needs a nonempty target set")
    m = len(pts[0])
    if any(len(v) != m for v in pts):
        raise ValidationError("points of S have different lengths")
    for v in pts:
        for c in v:
            spec.check(c)
    if len(set(pts)) != len(pts):
        raise DuplicatePoints("target set contains repeated points")
    pts.sort(key=lambda v: encode_point(spec, v))
    first = pts[0]
    mu = MultiPoly.constant(spec, m)
    for v in pts[1:]:
        i = next(i for i in range(m) if v[i] != first[i])
        form = MultiPoly.variable(spec, m, i) - MultiPoly.constant(spec, m, v[i])
        mu = mu * form
    total = 0
    for v in pts:
        total = spec.add(total, mu.eval_int(v))
    assert total == mu.eval_int(first) != 0
    return MuPolynomial(mu, tuple(pts), total)


def d_exact(q: int, k: int) -> int:
    return min(k, digit_sum_max(q, k))


def degree_bound(q: int, n: int, m: int, d, deg_mu: int) -> Fraction:
    """(q-1)(n - m/d) + deg(mu)/d as an exact rational."""
    d = Fraction(d)
    return (q - 1) * (n - m / d) + deg_mu / d


@dataclass(frozen=True)
class IndicatorPolynomial:
    P: MultiPoly
    phi: PhiMap
    mu: MuPolynomial
    d: Fraction
    claimed_degree_bound: Fraction
    support_mode: str
    checks: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return max(self.P.degree, 0) if not self.P.is_zero() else -1

    @property
    def p0(self) -> int:
        return self.P.terms.get((0,) * self.P.nvars, 0)

    def to_json(self) -> dict:
        return {
            "mu": self.mu.to_json(),
            "P": self.P.to_json(),
            "degP": self.degree,
            "bound": str(self.claimed_degree_bound),
            "d": str(self.d),
            "support_mode": self.support_mode,
            "checks": dict(self.checks),
        }


def _selector_table(spec: FieldSpec) -> np.ndarray:
    """Row c holds the coefficients of 1 - (x - c)^(q-1), the indicator of x = c."""
    q = spec.q
    x = UniPoly(spec, [0, 1])
    rows = np.zeros((q, q), dtype=np.int64)
    for c in range(q):
        g = UniPoly(spec, [1]) - (x - UniPoly(spec, [c])) ** (q - 1)
        rows[c, : len(g.coeffs)] = g.coeffs
    return rows


def _outer(spec: FieldSpec, vectors: list[np.ndarray]) -> np.ndarray:
    T = vectors[0]
    for v in vectors[1:]:
        if spec.e == 1:
            T = (T[..., None] * v) % spec.p
        else:
            T = spec.mul_table[T[..., None], v]
    return T


def _field_scale(spec: FieldSpec, c: int, T: np.ndarray) -> np.ndarray:
    return (c * T) % spec.p if spec.e == 1 else spec.mul_table[c, T]


def _field_add(spec: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return (A + B) % spec.p if spec.e == 1 else spec.add_table[A, B]


def mu_sum_over_zero_preimage(phi: PhiMap, mu: MuPolynomial) -> int:
    spec = phi.spec
    total = 0
    for a in preimage_zero(phi):
        total = spec.add(total, mu.mu.eval_int(a))
    return total


def build_P(phi: PhiMap, mu: MuPolynomial, *, d=None, config: Config = DEFAULT) -> IndicatorPolynomial:
    """Sum the indicator products over every a in F_q^m and verify the result.

    ``d`` defaults to the integer digit-sum bound min{k, D*_q(k)}; any value
    at least the largest deg phi_i is admissible.
    """
    spec, q, n, m = phi.spec, phi.spec.q, phi.n, phi.m
    if mu.mu.nvars != m:
        raise ValidationError(f"mu has {mu.mu.nvars} variables, Phi has {m} inputs")
    if q**m > config.max_enumeration:
        raise SizeLimitExceeded(f"q^m = {q**m} exceeds limit {config.max_enumeration}")
    if q**n > config.max_enumeration:
        raise SizeLimitExceeded(f"q^n = {q**n} exceeds limit {config.max_enumeration}")
    if mu_sum_over_zero_preimage(phi, mu) == 0:
        raise MuSumZero("sum of mu over Phi^-1(0) is zero")
    d = Fraction(d_exact(q, phi.k) if d is None else d)
    if d < phi.max_degree:
        raise ValidationError(f"d = {d} is below max deg phi_i = {phi.max_degree}")

    selectors = _selector_table(spec)
    mu_values = grid_values(mu.mu) if not mu.mu.is_zero() else np.zeros(q**m, dtype=np.int64)
    coords = phi.coordinate_values
    acc = np.zeros((q,) * n, dtype=np.int64)
    for a in range(q**m):
        w = int(mu_values[a])
        if not w:
            continue
        term = _outer(spec, [selectors[int(c)] for c in coords[a]])
        acc = _field_add(spec, acc, _field_scale(spec, w, term))
    P = from_dense(spec, acc)

    bound = degree_bound(q, n, m, d, mu.degree)
    ind = IndicatorPolynomial(P, phi, mu, d, bound, "exhaustive")
    support_ok, mode = _check_support(ind, config)
    ind = IndicatorPolynomial(P, phi, mu, d, bound, mode)
    checks = {
        "p0_nonzero": ind.p0 != 0,
        "support": support_ok,
        "degree": ind.degree <= bound,
        "exponents_below_q": all(e <= q - 1 for exps in P.terms for e in exps),
    }
    ind.checks.update(checks)
    if not checks["degree"]:
        raise DegreeBoundViolated(f"deg P = {ind.degree} exceeds {bound}")
    if not (checks["p0_nonzero"] and checks["support"] and checks["exponents_below_q"]):
        raise DegreeBoundViolated(f"indicator polynomial failed its contract: {checks}")
    return ind


def _check_support(ind: IndicatorPolynomial, config: Config) -> tuple[bool, str]:
    phi, spec = ind.phi, ind.phi.spec
    q, n = spec.q, phi.n
    img = np.unique(phi.image_codes)
    if q**n <= config.support_exhaustive:
        values = grid_values(ind.P) if not ind.P.is_zero() else np.zeros(q**n, dtype=np.int64)
        outside = np.ones(q**n, dtype=bool)
        outside[img] = False
        return bool(not values[outside].any()), "exhaustive"
    rng = np.random.default_rng(config.seed)
    img_set = set(int(v) for v in img)
    checked = 0
    while checked < config.support_samples:
        b = int(rng.integers(q**n))
        if b in img_set:
            continue
        point = tuple((b // q**i) % q for i in range(n))
        if ind.P.eval_int(point):
            return False, "sampled"
        checked += 1
    return True, "sampled"


@dataclass(frozen=True)
class IdentityReport:
    passed: bool
    checked: int
    counterexample: tuple | None = None  # (b, P(b), sum of mu over preimages)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": list(self.counterexample) if self.counterexample else None,
        }


def preimage_weights(phi: PhiMap, mu: MuPolynomial) -> np.ndarray:
    """w[b] = sum of mu(a) over a with Phi(a) = b, for every b in F_q^n."""
    spec, q = phi.spec, phi.spec.q
    mu_values = grid_values(mu.mu) if not mu.mu.is_zero() else np.zeros(q**phi.m, dtype=np.int64)
    codes = phi.image_codes
    if spec.e == 1:
        w = np.bincount(codes, weights=mu_values, minlength=q**phi.n)
        return np.rint(w).astype(np.int64) % spec.p
    w = np.zeros(q**phi.n, dtype=np.int64)
    add = spec.add
    for b, v in zip(codes.tolist(), mu_values.tolist()):
        if v:
            w[b] = add(int(w[b]), v)
    return w


def pointwise_identity_check(ind: IndicatorPolynomial, *, config: Config = DEFAULT) -> IdentityReport:
    phi = ind.phi
    q = phi.spec.q
    if q**phi.n > config.max_enumeration or q**phi.m > config.max_enumeration:
        raise SizeLimitExceeded("pointwise identity check exceeds enumeration limits")
    expected = preimage_weights(phi, ind.mu)
    values = grid_values(ind.P) if not ind.P.is_zero() else np.zeros(q**phi.n, dtype=np.int64)
    bad = np.flatnonzero(values != expected)
    if bad.size:
        b = int(bad[0])
        return IdentityReport(False, q**phi.n, (b, int(values[b]), int(expected[b])))
    return IdentityReport(True, q**phi.n)


@dataclass(frozen=True)
class DegreeAudit:
    d: int
    weighted_degree_Q: int  # deg* Q in units of 1/d
    weighted_bound_Q: int  # deg(mu) + d (q-1) n, same units
    symbolic: bool
    q_terms: int | None
    low_monomials_vanish: bool | None
    lift_reproduces_P: bool | None
    degP: int
    bound: Fraction

    @property
    def passed(self) -> bool:
        return (
            self.weighted_degree_Q <= self.weighted_bound_Q
            and self.low_monomials_vanish is not False
            and self.lift_reproduces_P is not False
            and self.degP <= self.bound
        )

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "weighted_degree_Q": self.weighted_degree_Q,
            "weighted_bound_Q": self.weighted_bound_Q,
            "symbolic": self.symbolic,
            "q_terms": self.q_terms,
            "low_monomials_vanish": self.low_monomials_vanish,
            "lift_reproduces_P": self.lift_reproduces_P,
            "degP": self.degP,
            "bound": str(self.bound),
            "passed": self.passed,
        }


def _q_factors(ind: IndicatorPolynomial) -> list[MultiPoly]:
    """mu(a) and the n factors 1 - (x_i - phi_i(a))^(q-1), in m + n variables (a first)."""
    phi = ind.phi
    spec, q, m, n = phi.spec, phi.spec.q, phi.m, phi.n
    nv = m + n
    one = MultiPoly.constant(spec, nv)
    factors = [ind.mu.mu.embed(nv, 0)]
    for i, p in enumerate(phi.phis):
        x_i = MultiPoly.variable(spec, nv, m + i)
        factors.append(one - (x_i - p.embed(nv, 0)) ** (q - 1))
    return factors


def degree_audit(ind: IndicatorPolynomial, d: int, *, config: Config = DEFAULT) -> DegreeAudit:
    """Re-derive deg P <= (q-1)(n - m/d) + deg(mu)/d through Q(a, x).

    deg* Q is the sum of the factors' weighted degrees (weighted leading
    forms multiply to a nonzero form over a field).  When Q expands within
    ``config.symbolic_terms`` terms, the sum over a in F_q^m is also redone
    monomial by monomial using power sums, checking that every monomial of
    a-degree < (q-1)m contributes nothing and that the result equals P.
    """
    phi = ind.phi
    spec, q, m, n = phi.spec, phi.spec.q, phi.m, phi.n
    if int(d) != d or d < 1:
        raise ValidationError(f"degree audit needs a positive integer d, got {d}")
    d = int(d)
    if d < phi.max_degree:
        raise ValidationError(f"d = {d} is below max deg phi_i = {phi.max_degree}")
    a_vars = range(m)
    factors = _q_factors(ind)
    wdeg = sum(weighted_degree(f, a_vars, d).value for f in factors)
    wbound = ind.mu.degree + d * (q - 1) * n

    Q = factors[0]
    for f in factors[1:]:
        if len(Q) * len(f) > 4 * config.symbolic_terms:
            Q = None
            break
        Q = Q * f
        if len(Q) > config.symbolic_terms:
            Q = None
            break
    symbolic = Q is not None
    q_terms = vanish_ok = lift_ok = None
    if symbolic:
        q_terms = len(Q)
        direct = weighted_degree(Q, a_vars, d).value
        assert direct == wdeg, f"deg* Q mismatch: expanded {direct}, factorwise {wdeg}"
        sums = [power_sum(spec, k).value for k in range(max(max(Q.max_exponents()[:m], default=0), 0) + 1)]
        threshold = (q - 1) * m
        vanish_ok = True
        lifted: dict = {}
        for exps, c in Q.terms.items():
            a_exps, x_exps = exps[:m], exps[m:]
            s = c
            for i in a_exps:
                s = spec.mul(s, sums[i])
            if sum(a_exps) < threshold and s:
                vanish_ok = False
            if s:
                v = spec.add(lifted.get(x_exps, 0), s)
                if v:
                    lifted[x_exps] = v
                else:
                    lifted.pop(x_exps)
        lift_ok = MultiPoly(spec, n, lifted) == ind.P

    bound = degree_bound(q, n, m, d, ind.mu.degree)
    audit = DegreeAudit(d, wdeg, wbound, symbolic, q_terms, vanish_ok, lift_ok, ind.degree, bound)
    if not audit.passed:
        raise DegreeBoundViolated(f"degree audit failed: {audit}")
    return audit
