"""The constants t_{q,k} and c_{q,k} of the bound gamma_{q,k}(n) <= c * t^n.

    t = inf_{0<x<1} (1 + x + ... + x^{q-1}) / x^s,  s = (q-1)(1 - 1/(kd)) / 2
    c = 2 / x*^{(k-1)/(2d)}

Two choices of d are supported: ``paper`` uses the real number
min{k, (q-1)(1 + log_q k)}, ``exact`` the integer min{k, max_{t<=k} D_q(t)}
where D_q is the base-q digit sum.  The integer value never exceeds the
real one, and it is what the degree argument actually needs.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceFailure, DomainError, ValidationError
from .field import prime_power
from .phimap import digit_sum_max, input_dimension

log = logging.getLogger(__name__)

GRID_POINTS = 10_000
GOLDEN_TOL = 1e-12
INVPHI = (math.sqrt(5) - 1) / 2


def d_paper(q: int, k: int) -> float:
    return min(float(k), (q - 1) * (1 + math.log(k, q)))


def d_exact(q: int, k: int) -> int:
    return min(k, digit_sum_max(q, k))


def choose_d(q: int, k: int, d_mode: str):
    if d_mode == "paper":
        return d_paper(q, k)
    if d_mode == "exact":
        return d_exact(q, k)
    raise ValidationError(f"d_mode must be 'paper' or 'exact', got {d_mode!r}")


def exponent(q: int, k: int, d) -> float:
    return (q - 1) * (1 - 1 / (k * d)) / 2


def _numerator(x, q: int):
    acc = 1.0 if np.isscalar(x) else np.ones_like(x)
    for _ in range(q - 1):
        acc = acc * x + 1.0
    return acc


def objective(x: float, q: int, k: int, d) -> float:
    """(1 + x + ... + x^{q-1}) / x^s; at x = 1 this is the continuous value q."""
    if not 0 < x <= 1:
        raise DomainError(f"objective is defined for 0 < x < 1, got {x}")
    if d <= 0:
        raise DomainError(f"d must be positive, got {d}")
    return _numerator(x, q) / x ** exponent(q, k, d)


def _stationarity(x: float, q: int, s: float) -> float:
    """x N'(x) - s N(x) for N = 1 + x + ... + x^{q-1}; zero exactly at critical points."""
    return sum((j - s) * x**j for j in range(q))


def _polish(x: float, lo: float, hi: float, q: int, s: float, iters: int = 200) -> float:
    """Bisection on the stationarity condition inside a bracket around x.

    The objective is flat at its minimum, so golden section pins x only to
    about sqrt(machine epsilon); the derivative has a simple root there.
    """
    g_lo, g_hi = _stationarity(lo, q, s), _stationarity(hi, q, s)
    if not (g_lo < 0 < g_hi):
        return x
    for _ in range(iters):
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        if _stationarity(mid, q, s) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def golden_section(f, lo: float, hi: float, tol: float = GOLDEN_TOL, max_iter: int = 500):
    """Minimise f on [lo, hi]; returns (x, f(x))."""
    a, b = lo, hi
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a < tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    else:
        raise ConvergenceFailure(f"golden section did not reach width {tol} on [{lo}, {hi}]")
    x = (a + b) / 2
    return x, f(x)


@dataclass(frozen=True)
class BoundReport:
    q: int
    k: int
    d_mode: str
    d: float
    s: float
    x_star: float
    t: float
    c: float
    attained: bool
    grid_x: float
    witnesses: dict = field(default_factory=dict)

    def bound(self, n: int) -> float:
        return bound_value(self, n).value

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "d_mode": self.d_mode,
            "d": self.d,
            "s": self.s,
            "x_star": self.x_star,
            "t": self.t,
            "c": self.c,
            "attained": self.attained,
            "grid_x": self.grid_x,
            "witnesses": dict(self.witnesses),
        }


def minimize(q: int, k: int, d_mode: str = "paper") -> BoundReport:
    """Grid scan of the objective on (0, 1), golden-section refinement, then
    bisection on the derivative's sign to pin x* to machine precision.

    For k = 1 the exponent s vanishes, the objective increases on (0, 1) and
    its infimum 1 is only approached as x -> 0; the report then has
    ``attained=False``, t = 1 and c = 2 (the c exponent is 0 as well).
    """
    if prime_power(q) is None:
        raise ValidationError(f"q = {q} is not a prime power")
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    d = choose_d(q, k, d_mode)
    s = exponent(q, k, d)

    def f(x):
        return _numerator(x, q) / x**s

    h = 1.0 / (GRID_POINTS + 1)
    grid = np.arange(1, GRID_POINTS + 1) * h
    values = f(grid)
    j = int(np.argmin(values))
    grid_x = float(grid[j])
    lo = grid[j - 1] if j > 0 else 0.0
    hi = grid[j + 1] if j + 1 < GRID_POINTS else 1.0
    x_star, t = golden_section(f, max(lo, 1e-300), hi)
    attained = s > 0
    if attained:
        x_star = _polish(x_star, max(lo, 1e-300), hi, q, s)
        t = float(f(x_star))
    else:
        t = 1.0
    if attained and abs(x_star - grid_x) > 2 * h:
        log.warning("grid argmin %.6g and refined minimiser %.6g disagree (q=%d, k=%d)", grid_x, x_star, q, k)

    if not t < q:
        raise ConvergenceFailure(f"t = {t} is not below q = {q}")
    if t < 1:
        raise ConvergenceFailure(f"t = {t} below 1")
    c = 2.0 / x_star ** ((k - 1) / (2 * d))
    witnesses = {}
    for dx in (-1e-6, 1e-6):
        x = x_star + dx
        if 0 < x < 1:
            witnesses[f"{dx:+.0e}"] = float(f(x))
    return BoundReport(q, k, d_mode, float(d), float(s), float(x_star), float(t), float(c), attained, grid_x, witnesses)


class BoundValue(NamedTuple):
    value: float  # c * t^n
    witness: float  # the pre-relaxation form at x = x*


def bound_value(report: BoundReport, n: int) -> BoundValue:
    """c * t^n, plus 2 (1 + ... + x^{q-1})^n / x^{((q-1)(n - m/d) + (k-1)/d)/2} at x*.

    The second form uses the actual m = floor((n-1)/k) + 1 >= n/k and so is
    never larger than the first.
    """
    if n < 0:
        raise ValidationError("n must be >= 0")
    q, k, d, x = report.q, report.k, report.d, report.x_star
    value = report.c * report.t**n
    m = input_dimension(n, k) if n > 0 else 0
    expo = ((q - 1) * (n - m / d) + (k - 1) / d) / 2
    witness = 2 * _numerator(x, q) ** n / x**expo
    return BoundValue(float(value), float(witness))


def table(qmax: int, kmax: int, d_mode: str = "paper") -> list[dict]:
    rows = []
    for q in range(2, qmax + 1):
        if prime_power(q) is None:
            continue
        for k in range(1, kmax + 1):
            r = minimize(q, k, d_mode)
            rows.append(
                {
                    "q": q,
                    "k": k,
                    "d_paper": d_paper(q, k),
                    "d_exact": d_exact(q, k),
                    "x_star": r.x_star,
                    "t": r.t,
                    "c": r.c,
                }
            )
    return rows
