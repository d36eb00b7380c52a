"""Monte Carlo estimators on the sphere and for Gaussian expectations.

Two sampling measures are used:

* the uniform measure on S^(n-1), sampled by normalizing standard
  Gaussian vectors;
* the product measure with one-dimensional density exp(-x^2)/sqrt(pi)
  per coordinate, i.e. centered Gaussians with variance 1/2.  Samplers
  draw standard normals and scale by 1/sqrt(2); this is the single
  documented scaling in the module.

For a function f homogeneous of degree d, the two are linked by

    mean over S^(n-1) of f = gamma_half_ratio(n, d) * E[f(X_1..X_n)]

which is what :func:`sphere_mean_via_gaussian` implements.

Determinism contract: an estimate is a pure function of
(samples, seed, chunk_size).  Samples are split into fixed chunks, chunk
c is generated from the counter-based Philox stream keyed by
(seed, c), and per-chunk statistics are merged pairwise in chunk order.
Worker-thread count (ELLIPSURF_THREADS) therefore cannot change the
result bits.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import _kernels
from . import geometry
from .geometry import Ellipsoid, Estimate

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

#: Set to a truthy value to spot-check homogeneity of caller-supplied
#: functions before estimating (debug aid, never on by default).
_DEBUG_ENV = "ELLIPSURF_DEBUG_HOMOGENEITY"


@dataclass(frozen=True)
class RngStream:
    """One reproducible random stream: Philox keyed by (seed, stream_id).

    Identical (seed, stream_id) pairs reproduce the identical sample
    sequence on every platform; distinct stream_ids are independent by
    the counter-based construction.
    """

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        key = np.array(
            [np.uint64(self.seed & 0xFFFFFFFFFFFFFFFF),
             np.uint64(self.stream_id & 0xFFFFFFFFFFFFFFFF)],
            dtype=np.uint64,
        )
        return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class McConfig:
    """Sample budget, seed, and the fixed chunking of the sample stream."""

    samples: int
    seed: int
    chunk_size: int = 65536

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError(f"samples must be >= 2, got {self.samples}")
        if self.chunk_size < 1:
            raise ValueError(f"chunk_size must be >= 1, got {self.chunk_size}")

    def chunk_sizes(self) -> list:
        full, rem = divmod(self.samples, self.chunk_size)
        sizes = [self.chunk_size] * full
        if rem:
            sizes.append(rem)
        return sizes


@dataclass(frozen=True)
class HomogeneousFn:
    """A degree-d homogeneous function evaluated on batches of points.

    ``eval`` maps an (m, n) array of row points to an (m,) array of
    values.  Homogeneity (eval(lam*x) = lam**d * eval(x)) is assumed,
    not checked, unless the ELLIPSURF_DEBUG_HOMOGENEITY environment
    variable is set; see :func:`validate_homogeneity`.
    """

    degree: float
    eval: Callable[[np.ndarray], np.ndarray]
    name: str = ""


def sqrt_qform_fn(q: Sequence[float]) -> HomogeneousFn:
    """f(x) = sqrt(sum_i q_i^2 x_i^2), homogeneous of degree 1."""
    q2 = np.asarray(q, dtype=np.float64) ** 2
    return HomogeneousFn(1.0, lambda x: _kernels.row_sqrt_qform(x, q2), name="sqrt_qform")


def lp_norm_fn(p: float) -> HomogeneousFn:
    """f(x) = ||x||_p, homogeneous of degree 1."""
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    p = float(p)
    return HomogeneousFn(1.0, lambda x: _kernels.row_pnorm(x, p), name=f"l{p}_norm")


def coord_abs_pow_fn(p: float, index: int = 0) -> HomogeneousFn:
    """f(x) = |x_index|^p, homogeneous of degree p."""
    return HomogeneousFn(float(p), lambda x: np.abs(x[:, index]) ** p,
                         name=f"abs_x{index}^%g" % p)


def coord_square_fn(index: int = 0) -> HomogeneousFn:
    """f(x) = x_index^2, homogeneous of degree 2."""
    return HomogeneousFn(2.0, lambda x: x[:, index] ** 2, name=f"x{index}^2")


def sample_sphere(n: int, rng: RngStream) -> np.ndarray:
    """One point drawn uniformly from S^(n-1).

    The measure-zero event of a zero Gaussian vector is retried, never
    returned.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    gen = rng.generator()
    while True:
        x = gen.standard_normal(n)
        norm = float(np.sqrt((x * x).sum()))
        if norm > 0.0:
            return x / norm


def validate_homogeneity(f: HomogeneousFn, n: int, rng: RngStream,
                         rel_tol: float = 1e-10) -> None:
    """Spot-check f(lam x) = lam^d f(x) at 8 random points, lam in {0.5, 2}."""
    gen = rng.generator()
    x = gen.standard_normal((8, n))
    base = np.asarray(f.eval(x), dtype=np.float64)
    for lam in (0.5, 2.0):
        scaled = np.asarray(f.eval(lam * x), dtype=np.float64)
        expected = lam ** f.degree * base
        bad = np.abs(scaled - expected) > rel_tol * np.maximum(np.abs(expected), 1e-300)
        if bad.any():
            i = int(np.argmax(bad))
            raise ValueError(
                f"function {f.name or f.eval!r} is not homogeneous of degree "
                f"{f.degree}: f({lam}*x) = {scaled[i]!r} but expected {expected[i]!r} "
                f"at x = {x[i]!r}"
            )


def _merge_stats(a, b):
    # Chan's parallel update of (count, mean, sum of squared deviations).
    ma, mean_a, m2a = a
    mb, mean_b, m2b = b
    m = ma + mb
    delta = mean_b - mean_a
    mean = mean_a + delta * (mb / m)
    m2 = m2a + m2b + delta * delta * (ma * mb / m)
    return (m, mean, m2)


def _pairwise_merge(stats):
    stats = list(stats)
    while len(stats) > 1:
        merged = []
        for i in range(0, len(stats) - 1, 2):
            merged.append(_merge_stats(stats[i], stats[i + 1]))
        if len(stats) % 2:
            merged.append(stats[-1])
        stats = merged
    return stats[0]


def _chunk_stats(v: np.ndarray):
    m = int(v.size)
    mean = float(v.mean())
    d = v - mean
    return (m, mean, float((d * d).sum()))


def _check_finite(v: np.ndarray, points: np.ndarray, fname: str) -> None:
    finite = np.isfinite(v)
    if not finite.all():
        i = int(np.argmin(finite))
        raise ValueError(
            f"non-finite value {v[i]!r} from {fname or 'f'} at sample point "
            f"{points[i].tolist()!r}"
        )


def _draw_sphere(gen: np.random.Generator, m: int, n: int) -> np.ndarray:
    x = gen.standard_normal((m, n))
    norms = _kernels.row_norm(x)
    while True:
        bad = norms == 0.0
        if not bad.any():
            break
        k = int(bad.sum())
        x[bad] = gen.standard_normal((k, n))
        norms = _kernels.row_norm(x)
    return x / norms[:, None]


def _draw_gauss(gen: np.random.Generator, m: int, n: int) -> np.ndarray:
    return gen.standard_normal((m, n)) * _INV_SQRT2


def _mc_mean(f: HomogeneousFn, n: int, cfg: McConfig, draw) -> tuple:
    if os.environ.get(_DEBUG_ENV, "").strip().lower() in {"1", "true", "yes", "on"}:
        validate_homogeneity(f, n, RngStream(cfg.seed, stream_id=2**32))

    sizes = cfg.chunk_sizes()

    def run_chunk(c: int):
        gen = RngStream(cfg.seed, stream_id=c).generator()
        pts = draw(gen, sizes[c], n)
        v = np.asarray(f.eval(pts), dtype=np.float64)
        _check_finite(v, pts, f.name)
        return _chunk_stats(v)

    workers = min(_kernels.backend_threads(), len(sizes))
    if workers <= 1 or len(sizes) == 1:
        stats = [run_chunk(c) for c in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(run_chunk, range(len(sizes))))

    count, mean, m2 = _pairwise_merge(stats)
    stderr = math.sqrt(m2 / (count - 1)) / math.sqrt(count) if count > 1 else 0.0
    return mean, stderr


def sphere_mean_mc(f: HomogeneousFn, n: int, cfg: McConfig) -> Estimate:
    """Sample mean of f over uniform points of S^(n-1).

    abs_error is the one-sigma standard error of the mean.
    """
    mean, se = _mc_mean(f, n, cfg, _draw_sphere)
    return Estimate(value=mean, abs_error=se, method="mc",
                    evals=cfg.samples, seed=cfg.seed)


def gaussian_mean_mc(f: HomogeneousFn, n: int, cfg: McConfig) -> Estimate:
    """Monte Carlo estimate of E[f(X)] for the variance-1/2 Gaussian X."""
    mean, se = _mc_mean(f, n, cfg, _draw_gauss)
    return Estimate(value=mean, abs_error=se, method="gauss",
                    evals=cfg.samples, seed=cfg.seed)


def sphere_mean_via_gaussian(f: HomogeneousFn, n: int, cfg: McConfig) -> Estimate:
    """Sphere mean of a homogeneous f through its Gaussian expectation."""
    factor = geometry.gamma_half_ratio(n, f.degree)
    base = gaussian_mean_mc(f, n, cfg)
    return Estimate(value=factor * base.value, abs_error=factor * base.abs_error,
                    method="gauss", evals=base.evals, seed=base.seed)


def iso_ratio_mc(e: Ellipsoid, cfg: McConfig, route: str = "direct_sphere") -> Estimate:
    """Isoperimetric ratio R = n * sphere mean of sqrt(sum u_i^2 q_i^2).

    route 'direct_sphere' samples the sphere; 'gaussian_transform' uses
    the homogeneous-moment identity.  The two agree within error bars,
    which is a test property.
    """
    n = e.n
    f = sqrt_qform_fn(e.inverse_axes())
    if route == "direct_sphere":
        base = sphere_mean_mc(f, n, cfg)
    elif route == "gaussian_transform":
        base = sphere_mean_via_gaussian(f, n, cfg)
    else:
        raise ValueError(
            f"route must be 'direct_sphere' or 'gaussian_transform', got {route!r}"
        )
    return Estimate(value=n * base.value, abs_error=n * base.abs_error,
                    method=base.method, evals=base.evals, seed=base.seed)


def mean_lp_norm_mc(n: int, p: float, cfg: McConfig) -> Estimate:
    """Sphere mean of the L^p norm, via the Gaussian transform."""
    return sphere_mean_via_gaussian(lp_norm_fn(p), n, cfg)
