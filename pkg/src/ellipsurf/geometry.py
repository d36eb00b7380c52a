"""Exact closed-form geometry of spheres, balls, and axis-aligned ellipsoids.

Index convention, used everywhere in this package: ``unit_sphere_area(n)``
is the area of the n-sphere S^n embedded in R^(n+1).  The boundary of the
unit ball of R^n is therefore S^(n-1), with area ``unit_sphere_area(n-1)
= n * unit_ball_volume(n)``.  Mixing this up is the main correctness
hazard of the whole library, so no other module computes these constants
on its own.

All gamma/area/volume arithmetic goes through log-gamma and stays in
log space until a linear value is requested; this keeps dimensions up to
about 10^6 usable without overflow.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

#: Methods an Estimate may be tagged with.
METHODS = ("mc", "gauss", "laplace", "lauricella", "asymptotic", "closed_form")

#: Methods whose estimates depend on a random seed.
STOCHASTIC_METHODS = ("mc", "gauss")

#: Largest log-volume that still exponentiates to a finite float64.
_LOG_FLOAT_MAX = math.log(np.finfo(np.float64).max)

#: Unit vectors must satisfy | ||u|| - 1 | <= this; no silent renormalizing.
UNIT_NORM_TOL = 1e-12


class VolumeOverflowError(OverflowError):
    """A linear volume/area does not fit in float64.

    The log-space value is preserved in ``log_value`` so callers can keep
    working in log space.
    """

    def __init__(self, message: str, log_value: float):
        super().__init__(message)
        self.log_value = log_value


def _check_dimension_index(n: int) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"dimension index must be a nonnegative integer, got {n!r}")
    return int(n)


def log_unit_sphere_area(n: int) -> float:
    """log of the area of S^n: log(2 pi^((n+1)/2) / Gamma((n+1)/2))."""
    n = _check_dimension_index(n)
    return math.log(2.0) + 0.5 * (n + 1) * math.log(math.pi) - math.lgamma(0.5 * (n + 1))


def unit_sphere_area(n: int) -> float:
    """Area of the unit n-sphere S^n (S^0 has 'area' 2)."""
    return math.exp(log_unit_sphere_area(n))


def log_unit_ball_volume(n: int) -> float:
    """log of the volume of the unit ball B^n: log(pi^(n/2) / Gamma(n/2 + 1))."""
    n = _check_dimension_index(n)
    return 0.5 * n * math.log(math.pi) - math.lgamma(0.5 * n + 1.0)


def unit_ball_volume(n: int) -> float:
    """Volume of the unit ball B^n (B^0 is a point with volume 1)."""
    return math.exp(log_unit_ball_volume(n))


@dataclass(frozen=True)
class SphereConstants:
    """Area of S^n and volume of B^n, in linear and log form."""

    n: int
    omega: float
    kappa: float
    log_omega: float
    log_kappa: float


def sphere_constants(n: int) -> SphereConstants:
    lo = log_unit_sphere_area(n)
    lk = log_unit_ball_volume(n)
    return SphereConstants(n=int(n), omega=math.exp(lo), kappa=math.exp(lk),
                           log_omega=lo, log_kappa=lk)


def log_gamma_half_ratio(n: float, d: float) -> float:
    """log of Gamma(n/2) / Gamma((n+d)/2)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n + d <= 0:
        raise ValueError(f"gamma pole: need n + d > 0, got n={n}, d={d}")
    return math.lgamma(0.5 * n) - math.lgamma(0.5 * (n + d))


def gamma_half_ratio(n: float, d: float) -> float:
    """Gamma(n/2) / Gamma((n+d)/2), via log-gamma so n ~ 1e8 is fine.

    This is the conversion factor between the mean of a d-homogeneous
    function over S^(n-1) and its Gaussian-weighted expectation.
    """
    return math.exp(log_gamma_half_ratio(n, d))


@dataclass(frozen=True)
class Estimate:
    """A computed scalar with provenance.

    ``abs_error`` is an estimated one-sigma error for stochastic methods
    and a propagated deterministic error bound otherwise; it is zero for
    closed forms.  ``seed`` is present exactly for stochastic methods.
    """

    value: float
    abs_error: float
    method: str
    evals: int
    seed: Optional[int] = None
    converged: bool = True

    def __post_init__(self):
        # numpy scalars from vector arithmetic are normalized to plain
        # Python types so estimates serialize cleanly
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "abs_error", float(self.abs_error))
        object.__setattr__(self, "evals", int(self.evals))
        object.__setattr__(self, "converged", bool(self.converged))
        if self.seed is not None:
            object.__setattr__(self, "seed", int(self.seed))
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if not self.abs_error >= 0.0:
            raise ValueError(f"abs_error must be >= 0, got {self.abs_error}")
        if self.evals < 1:
            raise ValueError(f"evals must be >= 1, got {self.evals}")
        stochastic = self.method in STOCHASTIC_METHODS
        if stochastic and self.seed is None:
            raise ValueError(f"method {self.method!r} is stochastic and requires a seed")
        if not stochastic and self.seed is not None:
            raise ValueError(f"method {self.method!r} is deterministic; seed must be None")


@dataclass(frozen=True)
class Ellipsoid:
    """Axis-aligned ellipsoid {x : sum_i (x_i / a_i)^2 <= 1}.

    Semi-axes must be positive and finite; degenerate values are rejected
    at construction because every downstream formula divides by them.
    """

    axes: tuple
    _inverse: tuple = field(init=False, repr=False, compare=False)

    def __init__(self, axes: Sequence[float]):
        axes = tuple(float(a) for a in axes)
        if len(axes) < 1:
            raise ValueError("an ellipsoid needs at least one semi-axis")
        for i, a in enumerate(axes):
            if not (math.isfinite(a) and a > 0.0):
                raise ValueError(
                    f"axis {i + 1} must be a positive finite number, got {a!r}"
                )
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "_inverse", tuple(1.0 / a for a in axes))

    @classmethod
    def from_inverse_axes(cls, q: Sequence[float]) -> "Ellipsoid":
        q = [float(v) for v in q]
        for i, v in enumerate(q):
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(
                    f"inverse axis {i + 1} must be a positive finite number, got {v!r}"
                )
        return cls([1.0 / v for v in q])

    @property
    def n(self) -> int:
        return len(self.axes)

    def axes_array(self) -> np.ndarray:
        return np.asarray(self.axes, dtype=np.float64)

    def inverse_axes(self) -> np.ndarray:
        """q with q_i = 1/a_i; identical bits on every call."""
        return np.asarray(self._inverse, dtype=np.float64)


def log_ellipsoid_volume(e: Ellipsoid) -> float:
    """log of kappa_n * prod(a_i)."""
    return log_unit_ball_volume(e.n) + math.fsum(math.log(a) for a in e.axes)


def ellipsoid_volume(e: Ellipsoid) -> float:
    """Volume kappa_n * prod(a_i); raises instead of silently returning inf."""
    lv = log_ellipsoid_volume(e)
    if lv > _LOG_FLOAT_MAX:
        raise VolumeOverflowError(
            f"volume overflows float64 (log volume = {lv:.6g})", log_value=lv
        )
    return math.exp(lv)


def projection_volume(e: Ellipsoid, u: Sequence[float]) -> float:
    """(n-1)-volume of the shadow of the ellipsoid along unit direction u.

    Equals kappa_(n-1) * sqrt(sum u_i^2 q_i^2) * prod(a_i).  The caller
    must pass a unit vector; nothing is renormalized here because a
    non-unit u always indicates an upstream bug.
    """
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (e.n,):
        raise ValueError(f"direction has shape {u.shape}, expected ({e.n},)")
    norm = float(np.sqrt((u * u).sum()))
    if abs(norm - 1.0) > UNIT_NORM_TOL:
        raise ValueError(
            f"direction must be a unit vector to within {UNIT_NORM_TOL}; got norm {norm!r}"
        )
    q = e.inverse_axes()
    quad = float(((u * q) ** 2).sum())
    lv = (log_unit_ball_volume(e.n - 1)
          + math.fsum(math.log(a) for a in e.axes)
          + 0.5 * math.log(quad))
    if lv > _LOG_FLOAT_MAX:
        raise VolumeOverflowError(
            f"projection volume overflows float64 (log value = {lv:.6g})", log_value=lv
        )
    return math.exp(lv)


def surface_area(e: Ellipsoid, ratio: Estimate) -> Estimate:
    """Surface area from an isoperimetric-ratio estimate: S = R * volume.

    The error propagates multiplicatively and the method tag is inherited
    from the ratio estimate.
    """
    if not ratio.value > 0.0:
        raise ValueError(f"isoperimetric ratio must be positive, got {ratio.value}")
    v = ellipsoid_volume(e)
    return Estimate(
        value=ratio.value * v,
        abs_error=ratio.abs_error * v,
        method=ratio.method,
        evals=ratio.evals,
        seed=ratio.seed,
        converged=ratio.converged,
    )


def cauchy_mean_projection(e: Ellipsoid, mean_vu: float) -> float:
    """Surface area from the spherical mean of shadow volumes.

    For a convex body K in R^n, the surface area equals
    (n-1) * (omega_(n-1)/omega_(n-2)) * mean over S^(n-1) of V_u(K).
    Consistency with :func:`surface_area` is a test property, not
    enforced here.
    """
    if e.n < 2:
        raise ValueError("the mean-projection formula needs dimension n >= 2")
    if not mean_vu > 0.0:
        raise ValueError(f"mean projection volume must be positive, got {mean_vu}")
    n = e.n
    ratio = math.exp(log_unit_sphere_area(n - 1) - log_unit_sphere_area(n - 2))
    return (n - 1) * ratio * mean_vu
