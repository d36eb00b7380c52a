"""Lauricella hypergeometric function F_D and the surface-area identity.

F_D(a; b_1..b_n; c; x_1..x_n) is evaluated two independent ways:

* :func:`fd_series` sums the multi-index power series by total-degree
  shells.  The shell sum of degree s is the coefficient of y^s in
  prod_i (1 - x_i y)^(-b_i), so it is assembled by convolving the n
  one-dimensional factor series instead of enumerating compositions;
  the factor coefficients follow the incremental Pochhammer recurrence
  and the shared ratio (a)_s / (c)_s is carried as a (sign, log) pair
  because (c)_s overflows float64 near shell 170.

* :func:`fd_integral` evaluates the Euler-type representation
  Gamma(c)/(Gamma(a)Gamma(c-a)) * integral_0^1 u^(a-1) (1-u)^(c-a-1)
  prod_i (1 - u x_i)^(-b_i) du, with square-root substitutions at both
  endpoints to absorb the algebraic singularities.

The isoperimetric ratio of an ellipsoid with inverse axes q is

    R = sqrt(alpha) * sum_j q_j^2
        * F_D(1/2; eta_1j..eta_nj; n/2 + 1; 1 - alpha q_1^2, ...)

with eta_ij = 1/2 + (1 if i == j else 0), valid (and alpha-free) for
any alpha with |1 - alpha q_j^2| < 1.  This constant was rederived here
from the moment-generating-function route because the commonly printed
prefactor n * Gamma(n/2)^2 / Gamma((n+1)/2)^2 with denominator
parameter (n+1)/2 fails the unit-ball check (it gives 9*pi/8 instead of
3 at n = 3); see docs/alpha_integral_discrepancy.md for the comparison.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .geometry import Ellipsoid, Estimate
from .quadrature import QuadConfig, QuadResult, check_alpha_admissible, default_alpha, _Panels

#: Series route is the default up to this dimension; beyond it the
#: 1-D integral route is used (auto routing).
SERIES_DEFAULT_MAX_N = 8


@dataclass(frozen=True)
class FdParams:
    """Argument bundle (a; b_1..b_n; c; x_1..x_n) of F_D."""

    a: float
    b: tuple
    c: float
    x: tuple

    def __init__(self, a: float, b: Sequence[float], c: float, x: Sequence[float]):
        b = tuple(float(v) for v in b)
        x = tuple(float(v) for v in x)
        if len(b) != len(x):
            raise ValueError(f"b and x must have equal length, got {len(b)} and {len(x)}")
        if len(b) < 1:
            raise ValueError("F_D needs at least one (b, x) pair")
        object.__setattr__(self, "a", float(a))
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", float(c))
        object.__setattr__(self, "x", x)

    @property
    def n(self) -> int:
        return len(self.b)


def eta_vector(n: int, j: int) -> np.ndarray:
    """The exponent vector (1/2 + delta_ij)_i for the j-th term."""
    if not 0 <= j < n:
        raise ValueError(f"j must be in [0, {n}), got {j}")
    b = np.full(n, 0.5)
    b[j] = 1.5
    return b


def _factor_coeffs(b: float, x: float, degree: int) -> np.ndarray:
    """Coefficients of (1 - x y)^(-b) up to y^degree: (b)_m x^m / m!."""
    out = np.empty(degree + 1)
    out[0] = 1.0
    g = 1.0
    for m in range(degree):
        g = g * (b + m) * x / (m + 1)
        out[m + 1] = g
    return out


def _shell_coeffs(p: FdParams, degree: int) -> np.ndarray:
    prod = _factor_coeffs(p.b[0], p.x[0], degree)
    for i in range(1, p.n):
        prod = np.convolve(prod, _factor_coeffs(p.b[i], p.x[i], degree))[:degree + 1]
    return prod


def _pochhammer_ratio(a: float, c: float, degree: int) -> np.ndarray:
    """(a)_s / (c)_s for s = 0..degree, via incremental (sign, log) pairs."""
    out = np.empty(degree + 1)
    out[0] = 1.0
    log_mag = 0.0
    sign = 1.0
    dead = False
    for s in range(degree):
        num = a + s
        if dead or num == 0.0:
            dead = True
            out[s + 1] = 0.0
            continue
        log_mag += math.log(abs(num)) - math.log(abs(c + s))
        sign *= math.copysign(1.0, num) * math.copysign(1.0, c + s)
        out[s + 1] = sign * math.exp(log_mag)
    return out


def fd_series(p: FdParams, tol: float = 1e-12, max_total_degree: int = 2000) -> QuadResult:
    """Sum the F_D power series by total-degree shells.

    Stops once the absolute shell contribution stays below
    tol * |partial sum| for two consecutive shells; if the degree budget
    runs out first, the partial value is returned with
    ``converged=False``.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    x_arr = np.asarray(p.x)
    if (np.abs(x_arr) >= 1.0).any():
        j = int(np.argmax(np.abs(x_arr) >= 1.0))
        raise ValueError(f"series route requires |x_i| < 1; |x_{j + 1}| = {abs(p.x[j])!r}")
    if p.c <= 0 and p.c == round(p.c):
        raise ValueError(f"c must not be a nonpositive integer, got {p.c}")

    degree = 64
    shells = _shell_coeffs(p, degree)
    ratios = _pochhammer_ratio(p.a, p.c, degree)

    partial = 0.0
    below = 0
    last = [0.0, 0.0]
    s = 0
    while s <= max_total_degree:
        if s > degree:
            degree = min(2 * degree, max_total_degree)
            shells = _shell_coeffs(p, degree)
            ratios = _pochhammer_ratio(p.a, p.c, degree)
        term = ratios[s] * shells[s]
        partial += term
        last[s % 2] = abs(term)
        if s >= 1 and abs(term) <= tol * max(abs(partial), 1e-300):
            below += 1
            if below >= 2:
                return QuadResult(value=partial, est_error=max(last),
                                  evals=s + 1, converged=True)
        else:
            below = 0
        s += 1
    return QuadResult(value=partial, est_error=max(last), evals=s, converged=False)


def fd_integral(p: FdParams, cfg: Optional[QuadConfig] = None) -> QuadResult:
    """Evaluate F_D through its 1-D Euler-type integral.

    Requires a > 0 and c - a > 0, and every x_i < 1 so the integrand has
    no pole on [0, 1].
    """
    cfg = cfg or QuadConfig()
    if not p.a > 0:
        raise ValueError(f"integral route requires a > 0, got a = {p.a}")
    if not p.c - p.a > 0:
        raise ValueError(f"integral route requires c - a > 0, got c - a = {p.c - p.a}")
    x_arr = np.asarray(p.x)
    if (x_arr >= 1.0).any():
        j = int(np.argmax(x_arr >= 1.0))
        raise ValueError(
            f"x_{j + 1} = {p.x[j]!r} >= 1 puts a pole inside the integration interval"
        )
    b_arr = np.asarray(p.b)
    a, c = p.a, p.c

    def safe_exp(log_value: float) -> float:
        # graceful underflow to 0; a genuinely overflowing integrand is
        # surfaced as inf and flagged by the panel machinery
        if log_value > 709.0:
            return math.inf
        return math.exp(log_value) if log_value > -746.0 else 0.0

    def log_prod(u: float) -> float:
        return -float((b_arr * np.log1p(-u * x_arr)).sum())

    pan = _Panels(cfg)

    # integrand exponents are combined in log space before a single exp:
    # with many factors the product and the (1-u) power can each leave
    # float64 range while their combination stays finite.  The rule
    # never evaluates panel endpoints, but the v = 0 / w = 0 limits are
    # kept well defined anyway.

    # u in [0, 1/2] under u = v^2
    def left(v: float) -> float:
        u = v * v
        if v == 0.0:
            exp0 = 2 * a - 1
            return 2.0 if exp0 == 0 else (0.0 if exp0 > 0 else math.inf)
        return 2.0 * safe_exp((2 * a - 1) * math.log(v)
                              + (c - a - 1) * math.log1p(-u) + log_prod(u))

    pan.add(left, 0.0, math.sqrt(0.5))

    # u in [1/2, 1] under 1 - u = w^2
    def right(w: float) -> float:
        u = 1.0 - w * w
        if w == 0.0:
            exp1 = 2 * (c - a) - 1
            if exp1 == 0:
                return 2.0 * safe_exp(log_prod(1.0))
            return 0.0 if exp1 > 0 else math.inf
        return 2.0 * safe_exp((2 * (c - a) - 1) * math.log(w)
                              + (a - 1) * math.log(u) + log_prod(u))

    pan.add(right, 0.0, math.sqrt(0.5))

    pref = math.exp(math.lgamma(c) - math.lgamma(a) - math.lgamma(c - a))
    value = pref * pan.value
    err = pref * pan.error
    converged = err <= cfg.rel_tol * abs(value) + cfg.abs_tol
    return QuadResult(value=value, est_error=err, evals=pan.evals, converged=converged)


def iso_ratio_lauricella(e: Ellipsoid, alpha: Optional[float] = None,
                         route: str = "auto",
                         cfg: Optional[QuadConfig] = None) -> Estimate:
    """Isoperimetric ratio through the F_D identity.

    The result is alpha-invariant for admissible alpha (checked by the
    test suite); the default alpha maximizes the admissibility margin.
    """
    cfg = cfg or QuadConfig()
    q = e.inverse_axes()
    n = e.n
    if alpha is None:
        alpha = cfg.alpha if cfg.alpha is not None else default_alpha(q)
    x = check_alpha_admissible(q, alpha)

    if route == "auto":
        route = "series" if n <= SERIES_DEFAULT_MAX_N else "integral"
    if route not in ("series", "integral"):
        raise ValueError(f"route must be 'series', 'integral', or 'auto', got {route!r}")

    q2 = q * q
    c = 0.5 * n + 1.0
    total = 0.0
    err = 0.0
    evals = 0
    converged = True
    for j in range(n):
        params = FdParams(0.5, eta_vector(n, j), c, x)
        if route == "series":
            f = fd_series(params, tol=cfg.rel_tol)
        else:
            f = fd_integral(params, cfg)
        total += q2[j] * f.value
        err += q2[j] * f.est_error
        evals += f.evals
        converged = converged and f.converged

    root_alpha = math.sqrt(alpha)
    return Estimate(value=root_alpha * total, abs_error=root_alpha * err,
                    method="lauricella", evals=max(evals, 1), seed=None,
                    converged=converged)
