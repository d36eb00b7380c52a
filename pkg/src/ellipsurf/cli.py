"""Command-line front end.

Subcommands: ``area`` (single computation), ``compare`` (multi-method
agreement report), ``converge`` (large-n study, CSV), ``bounds``
(two-sided report), ``selftest`` (embedded invariants).

Exit codes, exhaustively: 0 success or verdict, 1 selftest failure,
2 invalid input, 3 numerical non-convergence.

Value output for a fixed request (including seed) is byte-identical
across runs; wall_time_ms is the single field excluded from that
contract.
"""

import argparse
import csv
import hashlib
import io
import json
import math
import sys
import time
from dataclasses import dataclass, asdict
from typing import Optional, Sequence

from . import bounds as bounds_mod
from . import geometry
from . import lauricella as lauricella_mod
from . import mc as mc_mod
from . import quadrature as quad_mod
from .geometry import Ellipsoid, VolumeOverflowError
from .selftest import run_selftest

AREA_METHODS = ("auto", "mc", "gauss", "laplace", "lauricella", "asymptotic", "bounds")
COMPARE_METHODS = ("mc", "gauss", "laplace", "lauricella", "asymptotic")

#: auto method switches from quadrature to the asymptotic formula here.
AUTO_ASYMPTOTIC_ABOVE = 10**5

#: deterministic-pair agreement tolerance used by ``compare``.
DETERMINISTIC_PAIR_RTOL = 1e-6


@dataclass(frozen=True)
class RunRequest:
    """A parsed single-computation request; round-trips through JSON."""

    axes: tuple
    inverse: bool = False
    method: str = "auto"
    tol: float = 1e-12
    samples: int = 100_000
    seed: int = 0
    alpha: Optional[float] = None
    format: str = "json"

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunRequest":
        data = json.loads(text)
        data["axes"] = tuple(data["axes"])
        return cls(**data)


def parse_axes(raw: str) -> tuple:
    """Parse '1,2,3' or '@path' (one decimal per line) into floats."""
    if raw.startswith("@"):
        with open(raw[1:], "r", encoding="ascii") as fh:
            items = [line.strip() for line in fh if line.strip()]
    else:
        items = [part.strip() for part in raw.split(",") if part.strip()]
    if not items:
        raise ValueError("no axes given")
    out = []
    for i, item in enumerate(items):
        try:
            out.append(float(item))
        except ValueError:
            raise ValueError(f"axis {i + 1} is not a number: {item!r}") from None
    return tuple(out)


def build_ellipsoid(axes: Sequence[float], inverse: bool) -> Ellipsoid:
    if inverse:
        return Ellipsoid.from_inverse_axes(axes)
    return Ellipsoid(axes)


def axes_sha256(e: Ellipsoid) -> str:
    payload = ",".join(repr(a) for a in e.axes).encode("ascii")
    return hashlib.sha256(payload).hexdigest()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_flat(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(report.keys())
        writer.writerow("" if v is None else v for v in report.values())
        return buf.getvalue()
    lines = [f"{k}: {v}" for k, v in report.items()]
    return "\n".join(lines) + "\n"


def _estimate_ratio(e: Ellipsoid, method: str, req: RunRequest) -> tuple:
    """Run one method; returns (ratio Estimate, alpha actually used)."""
    if method == "mc":
        cfg = mc_mod.McConfig(samples=req.samples, seed=req.seed)
        return mc_mod.iso_ratio_mc(e, cfg, route="direct_sphere"), None
    if method == "gauss":
        cfg = mc_mod.McConfig(samples=req.samples, seed=req.seed)
        return mc_mod.iso_ratio_mc(e, cfg, route="gaussian_transform"), None
    if method == "laplace":
        return quad_mod.iso_ratio_quad(e, quad_mod.QuadConfig(rel_tol=req.tol)), None
    if method == "lauricella":
        alpha = req.alpha if req.alpha is not None else quad_mod.default_alpha(e.inverse_axes())
        est = lauricella_mod.iso_ratio_lauricella(
            e, alpha=alpha, cfg=quad_mod.QuadConfig(rel_tol=req.tol))
        return est, alpha
    if method == "asymptotic":
        return bounds_mod.iso_ratio_asymptotic(e), None
    raise ValueError(f"unknown method {method!r}")


def _area_report(e: Ellipsoid, method: str, req: RunRequest) -> dict:
    t0 = time.perf_counter()
    ratio, alpha = _estimate_ratio(e, method, req)
    surface = geometry.surface_area(e, ratio)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    return {
        "dimension": e.n,
        "axes_sha256": axes_sha256(e),
        "method": ratio.method,
        "volume": geometry.ellipsoid_volume(e),
        "iso_ratio": ratio.value,
        "surface_area": surface.value,
        "abs_error": surface.abs_error,
        "evals": ratio.evals,
        "seed": ratio.seed,
        "alpha": alpha,
        "converged": ratio.converged,
        "wall_time_ms": wall_ms,
    }


def cmd_area(args) -> int:
    req = RunRequest(axes=parse_axes(args.axes), inverse=args.inverse,
                     method=args.method, tol=args.tol, samples=args.samples,
                     seed=args.seed, alpha=args.alpha, format=args.format)
    e = build_ellipsoid(req.axes, req.inverse)
    method = req.method
    if method == "auto":
        method = "laplace" if e.n <= AUTO_ASYMPTOTIC_ABOVE else "asymptotic"
    if method == "bounds":
        return cmd_bounds_from(e, check=False, tol=req.tol, fmt=req.format, out=args.out)
    report = _area_report(e, method, req)
    _emit(_render_flat(report, req.format), args.out)
    return 0 if report["converged"] else 3


def _bounds_report(e: Ellipsoid, check: bool, tol: float) -> dict:
    rep = bounds_mod.bounds_l2(e)
    out = {
        "dimension": rep.n,
        "axes_sha256": axes_sha256(e),
        "lower_const": rep.lower_const,
        "upper_const": rep.upper_const,
        "l2_norm": rep.l2_norm,
        "ratio_lower": rep.ratio_lower,
        "ratio_upper": rep.ratio_upper,
        "area_lower": rep.area_lower,
        "area_upper": rep.area_upper,
    }
    if check:
        est = quad_mod.iso_ratio_quad(e, quad_mod.QuadConfig(rel_tol=tol))
        rn = est.value / e.n
        out["iso_ratio_laplace"] = est.value
        out["contained"] = bool(
            rep.ratio_lower * (1 - 1e-12) <= rn <= rep.ratio_upper * (1 + 1e-12)
        )
    return out


def cmd_bounds_from(e: Ellipsoid, check: bool, tol: float, fmt: str,
                    out: Optional[str]) -> int:
    report = _bounds_report(e, check, tol)
    _emit(_render_flat(report, fmt), out)
    return 0


def cmd_bounds(args) -> int:
    e = build_ellipsoid(parse_axes(args.axes), args.inverse)
    return cmd_bounds_from(e, check=args.check, tol=args.tol, fmt=args.format,
                           out=args.out)


def cmd_compare(args) -> int:
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    if len(methods) < 2:
        raise ValueError("compare needs at least two methods")
    for m in methods:
        if m not in COMPARE_METHODS:
            raise ValueError(f"unknown method {m!r}; choose from {COMPARE_METHODS}")
    req = RunRequest(axes=parse_axes(args.axes), inverse=args.inverse,
                     method="auto", tol=args.tol, samples=args.samples,
                     seed=args.seed, alpha=args.alpha, format=args.format)
    e = build_ellipsoid(req.axes, req.inverse)

    per_method = {}
    failed = False
    for m in methods:
        t0 = time.perf_counter()
        ratio, alpha = _estimate_ratio(e, m, req)
        surface = geometry.surface_area(e, ratio)
        per_method[m] = {
            "iso_ratio": ratio.value,
            "surface_area": surface.value,
            "abs_error": surface.abs_error,
            "evals": ratio.evals,
            "seed": ratio.seed,
            "alpha": alpha,
            "converged": ratio.converged,
            "wall_time_ms": (time.perf_counter() - t0) * 1000.0,
        }
        failed = failed or not ratio.converged

    deviations = []
    all_pass = True
    names = list(methods)
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            a, b = names[i], names[j]
            sa, sb = per_method[a]["surface_area"], per_method[b]["surface_area"]
            diff = abs(sa - sb)
            rel = diff / max(abs(sa), abs(sb))
            stochastic = a in ("mc", "gauss") or b in ("mc", "gauss")
            if stochastic:
                tol = 4.0 * math.hypot(per_method[a]["abs_error"],
                                       per_method[b]["abs_error"])
                ok = diff <= tol
                kind = "4sigma_abs"
            else:
                tol = DETERMINISTIC_PAIR_RTOL
                ok = rel <= tol
                kind = "relative"
            all_pass = all_pass and ok
            deviations.append({"a": a, "b": b, "rel_deviation": rel,
                               "tolerance_kind": kind, "tolerance": tol,
                               "pass": ok})

    diag = bounds_mod.concentration_diagnostic(e.inverse_axes())
    brep = bounds_mod.bounds_l2(e)
    report = {
        "dimension": e.n,
        "axes_sha256": axes_sha256(e),
        "methods": per_method,
        "deviations": deviations,
        "bound_interval": [brep.area_lower, brep.area_upper],
        "concentration_ratio": diag.ratio,
        "verdict": "PASS" if all_pass else "FAIL",
    }
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        lines = [f"dimension: {e.n}", f"verdict: {report['verdict']}"]
        for m, info in per_method.items():
            lines.append(f"{m}: surface_area={info['surface_area']!r} "
                         f"abs_error={info['abs_error']!r}")
        for d in deviations:
            lines.append(f"{d['a']} vs {d['b']}: rel_dev={d['rel_deviation']:.3e} "
                         f"{'PASS' if d['pass'] else 'FAIL'}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 3 if failed else 0


def _axes_for_law(law: str, n: int, seed: int):
    kind, _, rest = law.partition(":")
    kind = kind.strip()
    if kind == "uniform":
        parts = rest.split(",")
        if len(parts) != 2:
            raise ValueError(f"uniform law needs 'uniform:lo,hi', got {law!r}")
        lo, hi = float(parts[0]), float(parts[1])
        if not (0 < lo <= hi):
            raise ValueError(f"uniform law needs 0 < lo <= hi, got {law!r}")
        gen = mc_mod.RngStream(seed, stream_id=n).generator()
        return lo + (hi - lo) * gen.random(n)
    if kind == "equal":
        v = float(rest)
        if not v > 0:
            raise ValueError(f"equal law needs a positive value, got {law!r}")
        return [v] * n
    if kind == "zipf-like":
        s = float(rest)
        return [float(i) ** s for i in range(1, n + 1)]
    raise ValueError(
        f"unknown axis law {law!r}; expected uniform:lo,hi | equal:v | zipf-like:exponent"
    )


def cmd_converge(args) -> int:
    dims = [int(part) for part in args.dims.split(",") if part.strip()]
    if not dims or any(b <= a for a, b in zip(dims, dims[1:])):
        raise ValueError("dims must be a strictly ascending comma-separated list")
    rows = []
    for n in dims:
        e = Ellipsoid(_axes_for_law(args.axis_law, n, args.seed))
        diag = bounds_mod.concentration_diagnostic(e.inverse_axes())
        quad_value = quad_mod.iso_ratio_quad(e).value
        asym_value = bounds_mod.iso_ratio_asymptotic(e).value
        rows.append((n, diag.ratio, quad_value, asym_value,
                     abs(quad_value / asym_value - 1.0)))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["dimension", "concentration_ratio", "iso_ratio_laplace",
                     "iso_ratio_asymptotic", "rel_deviation"])
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_selftest(_args) -> int:
    return run_selftest()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellipsurf",
        description="Surface area, volume, and isoperimetric ratio of "
                    "n-dimensional ellipsoids by independent methods.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_axes(p):
        p.add_argument("--axes", required=True,
                       help="comma-separated semi-axes, or @FILE with one per line")
        p.add_argument("--inverse", action="store_true",
                       help="interpret the values as inverse semi-axes q_i = 1/a_i")

    area = sub.add_parser("area", help="compute volume, iso ratio, and surface area")
    add_axes(area)
    area.add_argument("--method", choices=AREA_METHODS, default="auto")
    area.add_argument("--tol", type=float, default=1e-12)
    area.add_argument("--samples", type=int, default=100_000)
    area.add_argument("--seed", type=int, default=0)
    area.add_argument("--alpha", type=float, default=None)
    area.add_argument("--format", choices=("json", "csv", "text"), default="json")
    area.add_argument("--out", default=None, metavar="FILE")
    area.set_defaults(handler=cmd_area)

    comp = sub.add_parser("compare", help="run several methods and report agreement")
    add_axes(comp)
    comp.add_argument("--methods", required=True,
                      help="comma-separated list from: " + ",".join(COMPARE_METHODS))
    comp.add_argument("--tol", type=float, default=1e-12)
    comp.add_argument("--samples", type=int, default=100_000)
    comp.add_argument("--seed", type=int, default=0)
    comp.add_argument("--alpha", type=float, default=None)
    comp.add_argument("--format", choices=("json", "text"), default="json")
    comp.add_argument("--out", default=None, metavar="FILE")
    comp.set_defaults(handler=cmd_compare)

    conv = sub.add_parser("converge", help="large-n study of the asymptotic formula (CSV)")
    conv.add_argument("--dims", required=True, help="ascending dimensions, e.g. 100,10000")
    conv.add_argument("--axis-law", required=True, dest="axis_law",
                      help="uniform:lo,hi | equal:v | zipf-like:exponent")
    conv.add_argument("--seed", type=int, default=0)
    conv.add_argument("--out", default=None, metavar="FILE")
    conv.set_defaults(handler=cmd_converge)

    bnd = sub.add_parser("bounds", help="two-sided surface-area bounds")
    add_axes(bnd)
    bnd.add_argument("--check", action="store_true",
                     help="also compute the quadrature value and report containment")
    bnd.add_argument("--tol", type=float, default=1e-12)
    bnd.add_argument("--format", choices=("json", "csv", "text"), default="json")
    bnd.add_argument("--out", default=None, metavar="FILE")
    bnd.set_defaults(handler=cmd_bounds)

    st = sub.add_parser("selftest", help="run the embedded invariant suite")
    st.set_defaults(handler=cmd_selftest)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, VolumeOverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
