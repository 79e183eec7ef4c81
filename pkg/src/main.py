"""Command-line front end for the smoothing experiments and certification sweeps."""
import argparse
import math
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from src.complexes import (
    AllRightComplex,
    PatchSystem,
    absorption_panel,
    cubify,
    dnp_panel,
    load_complex,
    patch_panel,
    polygon_suspension,
    validate,
    validate_cubes,
)
from src.config import settings
from src.hyptrig import identity_panel
from src.metricfield import FiberAtlas, MetricFamily, model_curvature_panel
from src.models import CheckResult, Report, RunConfig, SmoothingParams
from src.orchestrator import SweepChunk, SweepRunner, split_samples
from src.smoothing import (
    SurfaceSmoothing,
    continued_dim1_family,
    continued_dim1_limit,
    cut_limit_estimate,
    dim1_cut_limit,
    dim1_family,
    dim1_limit,
    extension_points,
    independence_panel,
    model_panel,
    overlap_panel,
    pinch_circle,
    pinch_surface,
    property_panel,
    reindexed_family,
    reindexed_limit,
)
from src.utils.errors import GeometryError
from src.utils.logger import setup_logger
from src.warping import (
    RadialMetric,
    constants,
    extension_chart_panel,
    increasing_in_c,
    radius_chart_panel,
    ratio_panel,
    slow_family_panel,
)
from src.widths import (
    RadiusSchedule,
    WidthSet,
    dnp_check,
    dnp_terms,
    gap_checks,
    induced_link_widths,
    link_sines,
    schedule_checks,
    slice_checks,
    width_table,
)

logger = setup_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

Outcome = Tuple[List[CheckResult], List[dict]]
Handler = Callable[[argparse.Namespace, "Context"], Outcome]


class Context:
    """Per-run state shared by the handlers: resolved tolerances, seed and the sweep runner."""

    def __init__(self, args: argparse.Namespace):
        self.seed = settings.seed if args.seed is None else args.seed
        self.workers = settings.workers if args.workers is None else args.workers
        self.tol: Optional[float] = args.tol
        self.runner = SweepRunner(workers=self.workers, seed=self.seed)

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def tolerance(self, default: float) -> float:
        return default if self.tol is None else self.tol

    def sweep(self, chunks: Sequence[SweepChunk]) -> Outcome:
        outcome = self.runner.run_sync(chunks)
        return outcome.checks, outcome.rows

    def tolerances(self) -> Dict[str, float]:
        out = {
            "identity_tol": settings.identity_tol,
            "exact_region_tol": settings.exact_region_tol,
            "overlap_tol": settings.overlap_tol,
            "cut_limit_tol": settings.cut_limit_tol,
        }
        if self.tol is not None:
            out["tol"] = self.tol
        return out


def _renamed(checks: Sequence[CheckResult], prefix: str) -> List[CheckResult]:
    return [check.model_copy(update={"name": f"{prefix}_{check.name}"}) for check in checks]


def _complex(args: argparse.Namespace) -> AllRightComplex:
    return load_complex(args.complex)


def _chunked(name: str, total: int, workers: int, task: Callable[[int, np.random.Generator], Outcome]) -> List[SweepChunk]:
    """Split a sample budget into one chunk per worker."""
    return [
        SweepChunk(f"{name}{i}", lambda rng, count=count: task(count, rng))
        for i, count in enumerate(split_samples(total, workers))
    ]


# --- pinching ----------------------------------------------------------------

def cmd_pinch2d(args: argparse.Namespace, ctx: Context) -> Outcome:
    def search(L: int) -> Callable[[np.random.Generator], Outcome]:
        def task(rng: np.random.Generator) -> Outcome:
            result = pinch_circle(L, args.eps, d_min=args.d_min, d_max=args.d_max)
            rows = [{"L": L, **row} for row in result.rows] or [{"L": L, "t": None, "K": None}]
            return _renamed(result.checks, f"L{L}"), rows

        return task

    return ctx.sweep([SweepChunk(f"L{L}", search(L)) for L in args.L])


def cmd_smooth2d(args: argparse.Namespace, ctx: Context) -> Outcome:
    result = pinch_surface(
        args.L,
        args.eps,
        widths=args.widths,
        samples=args.samples,
        rng=ctx.rng(),
        xi=args.xi,
        c=args.c,
        varsigma=args.varsigma,
    )
    d = result.d if result.found else args.widths[-1]
    params = SmoothingParams(xi=args.xi, d=[d, d], r=2.0 * d + 8.0, c=args.c, varsigma=args.varsigma)
    complex_ = polygon_suspension(args.L)
    patched = SurfaceSmoothing.build(complex_, params).patched

    def overlaps(count: int, rng: np.random.Generator) -> Outcome:
        return overlap_panel(patched, count, rng, ctx.tol)

    chunks = _chunked("overlaps", args.overlap_samples, ctx.workers, overlaps)
    chunks.append(SweepChunk("properties", lambda rng: property_panel(complex_, params, args.property_samples, rng)))
    chunks.append(SweepChunk("model", lambda rng: model_panel(complex_, params, args.property_samples, rng)))
    checks, rows = ctx.sweep(chunks)
    search_rows = [{"chunk": "search", **attempt} for attempt in result.attempts]
    return result.checks + checks, search_rows + rows


def cmd_independence(args: argparse.Namespace, ctx: Context) -> Outcome:
    complex_ = _complex(args)
    params = SmoothingParams(xi=args.xi, d=args.d, r=args.r, c=args.c, varsigma=args.varsigma)
    return independence_panel(complex_, params, args.xi2, args.c2, args.samples, ctx.rng(), ctx.tolerance(1e-10))


# --- identities and curvature ------------------------------------------------

def cmd_identities(args: argparse.Namespace, ctx: Context) -> Outcome:
    tol = ctx.tolerance(settings.identity_tol)
    return identity_panel(args.samples, tol, ctx.seed, (args.s_min, args.s_max)), []


def cmd_curvature(args: argparse.Namespace, ctx: Context) -> Outcome:
    return model_curvature_panel(args.samples, ctx.rng(), ctx.tol)


# --- widths ------------------------------------------------------------------

def cmd_widths_dnp(args: argparse.Namespace, ctx: Context) -> Outcome:
    b = WidthSet(varsigma=args.varsigma, c=args.c)
    a = WidthSet(varsigma=args.varsigma, c=args.c_prime)
    terms = dnp_terms(b, a, args.count)
    check = CheckResult.below(
        "dnp",
        float(np.max(terms)),
        math.sqrt(2.0) / 2.0,
        "sin(beta_k) / sin(alpha_{k-1}) <= sqrt(2)/2",
        holds=dnp_check(b, a, args.count),
        admissible=b.admissible and a.admissible,
    )
    if not (b.admissible and a.admissible):
        check = check.model_copy(update={"passed": False})
    return [check], [{"k": k, "ratio": float(v)} for k, v in enumerate(terms)]


def cmd_widths_natural(args: argparse.Namespace, ctx: Context) -> Outcome:
    b = WidthSet(varsigma=args.varsigma, c=args.c)
    check = CheckResult.flag("natural", b.is_natural, "sin(beta_i) = sin(beta_0)^{i+1}", c=args.c)
    return [check], width_table(b, args.count)


def cmd_widths_induced(args: argparse.Namespace, ctx: Context) -> Outcome:
    b = WidthSet(varsigma=args.varsigma, c=args.c)
    induced = induced_link_widths(b, args.k, args.count)
    sines = link_sines(b, args.k, args.count)
    expected = induced.sines(args.count)
    gap = float(np.max(np.abs(sines / expected - 1.0)))
    checks = [
        CheckResult.below("induced_widths", gap, ctx.tolerance(1e-12), "|sin(beta''_j) / varsigma^{j+1} - 1|", k=args.k),
        CheckResult.flag(
            "induced_equals_source",
            (induced == b) == b.is_natural,
            "B'' = B exactly when B is natural",
            natural=b.is_natural,
        ),
    ]
    return checks, [{"j": j, "sine": float(s)} for j, s in enumerate(sines)]


def cmd_widths_schedule(args: argparse.Namespace, ctx: Context) -> Outcome:
    schedule = RadiusSchedule(args.r, args.m, args.varsigma, args.c, args.xi)
    checks = schedule_checks(schedule) + slice_checks(schedule)
    if args.c_prime is not None:
        checks += gap_checks(args.r, args.m, args.varsigma, args.c, args.c_prime, args.xi)
    rows = [{"k": k, "r_k": schedule.r_k(k)} for k in range(-1, args.m - 1)]
    return checks, rows


# --- patches -----------------------------------------------------------------

def _patch_system(args: argparse.Namespace) -> PatchSystem:
    complex_ = _complex(args)
    schedule = RadiusSchedule.from_top(args.top, complex_.dim, args.varsigma, args.c, args.xi)
    return PatchSystem(complex_, schedule)


def _patch_sweep(args: argparse.Namespace, ctx: Context, names: Optional[Sequence[str]]) -> Outcome:
    system = _patch_system(args)

    def task(count: int, rng: np.random.Generator) -> Outcome:
        checks = patch_panel(system, count, rng)
        return [c for c in checks if names is None or c.name in names], []

    return ctx.sweep(_chunked("patches", args.samples, ctx.workers, task))


def cmd_patches_cover(args: argparse.Namespace, ctx: Context) -> Outcome:
    return _patch_sweep(args, ctx, ["patch_coverage_gap"])


def cmd_patches_disjoint(args: argparse.Namespace, ctx: Context) -> Outcome:
    return _patch_sweep(args, ctx, [
        "patch_crossing",
        "patch_open_star",
        "patch_lower_skeleton",
        "patch_ball",
        "patch_s_disjoint",
        "patch_x_inside_y",
    ])


def cmd_patches_absorb(args: argparse.Namespace, ctx: Context) -> Outcome:
    complex_ = _complex(args)

    def task(count: int, rng: np.random.Generator) -> Outcome:
        return absorption_panel(complex_, count, rng, args.varsigma, args.c, args.xi, radii=args.radii), []

    return ctx.sweep(_chunked("rays", args.rays, ctx.workers, task))


def cmd_patches_dnp(args: argparse.Namespace, ctx: Context) -> Outcome:
    complex_ = _complex(args)
    b = WidthSet(varsigma=args.varsigma, c=args.c)
    a = WidthSet(varsigma=args.varsigma, c=args.c_prime)

    def task(count: int, rng: np.random.Generator) -> Outcome:
        return dnp_panel(complex_, b, a, count, rng), []

    return ctx.sweep(_chunked("dnp", args.samples, ctx.workers, task))


# --- bounds and constants ----------------------------------------------------

def cmd_bounds_lemma361(args: argparse.Namespace, ctx: Context) -> Outcome:
    return ratio_panel(t0_values=args.t0, t_max=args.t_max), []


def cmd_bounds_lemma355(args: argparse.Namespace, ctx: Context) -> Outcome:
    return radius_chart_panel(r0_values=args.r0, xi=args.xi, nodes=args.nodes), []


def cmd_bounds_prop332(args: argparse.Namespace, ctx: Context) -> Outcome:
    fam = MetricFamily.constant(FiberAtlas.circle(), interval=(0.0, max(args.centers) + 2.0 + args.xi))
    return slow_family_panel(fam, args.xi, args.centers), []


def cmd_bounds_prop351(args: argparse.Namespace, ctx: Context) -> Outcome:
    atlas = FiberAtlas.circle()
    h = RadialMetric.constant_cut(atlas, lambda X: args.scale * atlas.round_form(X), label="scaled round")
    return extension_chart_panel(h, xi=args.xi, r=args.r), []


def cmd_constants(args: argparse.Namespace, ctx: Context) -> Outcome:
    table = constants(args.n, args.xi, args.c, args.c_star, args.eps, k=args.k)
    checks = [
        CheckResult.flag("constants_finite_logs", all(math.isfinite(v) for v in table.log_values.values()), "ln C finite"),
        CheckResult.flag("constants_increasing_in_c", increasing_in_c(args.n, args.xi), "C, C_1 increasing in c"),
    ]
    rows = [
        {"name": name, "value": value, "log": table.log_values.get(name)}
        for name, value in sorted(table.values.items())
    ]
    return checks, rows


# --- cut limits --------------------------------------------------------------

def _limit_sweep(ctx: Context, label: str, offsets: Sequence[float], build: Callable[[float, np.random.Generator], object]) -> Outcome:
    tol = ctx.tolerance(settings.cut_limit_tol)

    def chunk(b: float) -> Callable[[np.random.Generator], Outcome]:
        def task(rng: np.random.Generator) -> Outcome:
            report = build(b, rng)
            return _renamed(report.checks(tol), f"b{b:g}"), report.rows

        return task

    return ctx.sweep([SweepChunk(f"{label}_b{b:g}", chunk(b)) for b in offsets])


def cmd_cutlimits_dim1(args: argparse.Namespace, ctx: Context) -> Outcome:
    def build(b: float, rng: np.random.Generator):
        return cut_limit_estimate(
            dim1_family(args.k_prime, args.d2), b, args.window, closed_form=dim1_limit(args.k_prime, args.d2, b), label="dim1",
        )

    return _limit_sweep(ctx, "dim1", args.b, build)


def cmd_cutlimits_continuation(args: argparse.Namespace, ctx: Context) -> Outcome:
    def build(b: float, rng: np.random.Generator):
        return cut_limit_estimate(
            continued_dim1_family(args.k_prime, args.d2, args.d),
            b,
            args.window,
            closed_form=continued_dim1_limit(args.k_prime, args.d2, args.d, b),
            label="continued",
        )

    return _limit_sweep(ctx, "continued", args.b, build)


def cmd_cutlimits_reindexed(args: argparse.Namespace, ctx: Context) -> Outcome:
    atlas = FiberAtlas.circle()

    def base_limit(u: np.ndarray, offset: float) -> np.ndarray:
        return dim1_cut_limit(args.k_prime, args.d2, offset) * atlas.round_form(u)

    def build(b: float, rng: np.random.Generator):
        X = extension_points(1, 1, args.betas, rng)
        return cut_limit_estimate(
            reindexed_family(dim1_family(args.k_prime, args.d2), args.beta0),
            b,
            args.window,
            X=X,
            closed_form=reindexed_limit(base_limit, args.beta0, b),
            label="reindexed",
        )

    return _limit_sweep(ctx, "reindexed", args.b, build)


# --- cubification ------------------------------------------------------------

def cmd_cubify(args: argparse.Namespace, ctx: Context) -> Outcome:
    complex_ = _complex(args)
    source = validate(complex_)
    cubes = cubify(complex_)
    report = validate_cubes(cubes)
    checks = [
        CheckResult.flag("source_valid", source.ok, "all-right simplicial complex", violations=len(source.violations)),
        CheckResult.flag("cubes_valid", report.ok, "cube faces, counts, pseudomanifold", violations=len(report.violations)),
        CheckResult.flag(
            "euler_characteristic",
            cubes.euler_characteristic() == complex_.euler_characteristic(),
            "chi(cubes) = chi(P)",
            cubes=cubes.euler_characteristic(),
            simplices=complex_.euler_characteristic(),
        ),
    ]
    simplices = complex_.f_vector()
    rows = [
        {"dim": k, "simplices": simplices[k] if k < len(simplices) else 0, "cubes": count}
        for k, count in enumerate(cubes.f_vector())
    ]
    return checks, rows


# --- parser ------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="Tolerance override")
    common.add_argument("--seed", type=int, default=None, help=f"Random seed (default: {settings.seed})")
    common.add_argument("--out", default=None, help="Output file (stdout when omitted)")
    common.add_argument("--format", choices=["json", "csv"], default=settings.output_format, help="Report format")
    common.add_argument("--workers", type=int, default=None, help=f"Worker pool size (default: {settings.workers})")
    return common


def _suite(parser: argparse.ArgumentParser) -> None:
    """Flags of the (xi, c, varsigma) complex suite."""
    parser.add_argument("--xi", type=float, default=settings.default_xi)
    parser.add_argument("--c", type=float, default=settings.default_c)
    parser.add_argument("--varsigma", type=float, default=settings.default_varsigma)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="hypercone",
        description="Smoothing of hyperbolic cones: experiments, certification sweeps and report emission.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Optional[Handler], group=commands, **kwargs) -> argparse.ArgumentParser:
        if handler is None:
            return group.add_parser(name, **kwargs)
        sub = group.add_parser(name, parents=[common], **kwargs)
        sub.set_defaults(handler=handler)
        return sub

    p = add("pinch2d", cmd_pinch2d, help="Doubling search for pinched smoothed circle cones")
    p.add_argument("--L", type=int, nargs="+", default=[5], help="Link lengths L pi/2 (k' = L)")
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--d-min", type=float, default=4.0)
    p.add_argument("--d-max", type=float, default=64.0)

    p = add("smooth2d", cmd_smooth2d, help="Smoothed metric over a polygon suspension")
    p.add_argument("--L", type=int, default=5)
    p.add_argument("--eps", type=float, default=0.15)
    p.add_argument("--widths", type=float, nargs="+", default=[32.0, 64.0, 128.0])
    p.add_argument("--samples", type=int, default=48, help="Curvature sample points")
    p.add_argument("--overlap-samples", type=int, default=1000)
    p.add_argument("--property-samples", type=int, default=20)
    _suite(p)

    p = add("independence", cmd_independence, help="Compare G(P, r) under two (xi, c) pairs")
    p.add_argument("--complex", default="circle5")
    p.add_argument("--d", type=float, nargs="+", default=[8.0, 8.0])
    p.add_argument("--r", type=float, default=20.0)
    p.add_argument("--xi2", type=float, default=0.8)
    p.add_argument("--c2", type=float, default=1.2)
    p.add_argument("--samples", type=int, default=50)
    _suite(p)

    p = add("identities", cmd_identities, help="Hyperbolic trigonometry identity sweeps")
    p.add_argument("--samples", type=int, default=settings.samples)
    p.add_argument("--s-min", type=float, default=0.1)
    p.add_argument("--s-max", type=float, default=20.0)

    p = add("curvature", cmd_curvature, help="Sectional curvature of the warped models")
    p.add_argument("--samples", type=int, default=200)

    widths = add("widths", None, help="Sets of widths").add_subparsers(dest="action", required=True)
    p = add("dnp", cmd_widths_dnp, widths)
    p.add_argument("--varsigma", type=float, required=True)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--c-prime", type=float, default=1.0)
    p.add_argument("--count", type=int, default=settings.width_cap)
    p = add("natural", cmd_widths_natural, widths)
    p.add_argument("--varsigma", type=float, required=True)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--count", type=int, default=8)
    p = add("induced", cmd_widths_induced, widths)
    p.add_argument("--varsigma", type=float, required=True)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--count", type=int, default=4)
    p = add("schedule", cmd_widths_schedule, widths)
    p.add_argument("--r", type=float, default=20.0)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--c-prime", type=float, default=None)
    _suite(p)

    patches = add("patches", None, help="Patch system of a hyperbolic cone").add_subparsers(dest="action", required=True)
    for name, handler in (("cover", cmd_patches_cover), ("disjoint", cmd_patches_disjoint)):
        p = add(name, handler, patches)
        p.add_argument("--complex", default="octahedron")
        p.add_argument("--samples", type=int, default=settings.samples)
        p.add_argument("--top", type=float, default=20.0, help="r_{m-2}")
        _suite(p)
    p = add("absorb", cmd_patches_absorb, patches)
    p.add_argument("--complex", default="octahedron")
    p.add_argument("--rays", type=int, default=1000)
    p.add_argument("--radii", type=float, nargs="+", default=[10.0, 20.0, 40.0, 80.0])
    _suite(p)
    p = add("dnp", cmd_patches_dnp, patches)
    p.add_argument("--complex", default="octahedron")
    p.add_argument("--samples", type=int, default=settings.samples)
    p.add_argument("--c-prime", type=float, default=1.0)
    _suite(p)

    bounds = add("bounds", None, help="Analytic bound panels").add_subparsers(dest="action", required=True)
    p = add("lemma361", cmd_bounds_lemma361, bounds)
    p.add_argument("--t0", type=float, nargs="+", default=[2.0, 3.0, 5.0, 10.0])
    p.add_argument("--t-max", type=float, default=50.0)
    p = add("lemma355", cmd_bounds_lemma355, bounds)
    p.add_argument("--r0", type=float, nargs="+", default=[10.0, 15.0])
    p.add_argument("--xi", type=float, default=1.0)
    p.add_argument("--nodes", type=int, default=64)
    p = add("prop332", cmd_bounds_prop332, bounds)
    p.add_argument("--centers", type=float, nargs="+", default=[5.0, 10.0, 15.0])
    p.add_argument("--xi", type=float, default=2.0)
    p = add("prop351", cmd_bounds_prop351, bounds)
    p.add_argument("--xi", type=float, default=1.5)
    p.add_argument("--r", type=float, default=12.0)
    p.add_argument("--scale", type=float, default=1.25)

    cut = add("cutlimits", None, help="Cut limits of indexed families").add_subparsers(dest="action", required=True)
    for name, handler in (
        ("dim1", cmd_cutlimits_dim1),
        ("continuation", cmd_cutlimits_continuation),
        ("reindexed", cmd_cutlimits_reindexed),
    ):
        p = add(name, handler, cut)
        p.add_argument("--k-prime", type=int, default=5)
        p.add_argument("--d2", type=float, default=8.0)
        p.add_argument("--b", type=float, nargs="+", default=[-4.0, -1.0, 0.0, 2.0])
        p.add_argument("--window", type=float, nargs="+", default=[20.0, 40.0, 80.0])
        if name == "continuation":
            p.add_argument("--d", type=float, default=4.0)
        if name == "reindexed":
            p.add_argument("--beta0", type=float, default=math.pi / 6.0)
            p.add_argument("--betas", type=float, nargs="+", default=[0.1, 0.3, math.pi / 6.0, 1.2])

    p = add("constants", cmd_constants, help="Explicit constants table")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--xi", type=float, default=1.0)
    p.add_argument("--c", type=float, default=2.0)
    p.add_argument("--c-star", type=float, default=2.0)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--k", type=int, default=1)

    p = add("cubify", cmd_cubify, help="Cubical subdivision of a complex")
    p.add_argument("--complex", default="octahedron")

    return parser


def _command_path(args: argparse.Namespace) -> str:
    action = getattr(args, "action", None)
    return f"{args.command} {action}" if action else args.command


def _parameters(args: argparse.Namespace) -> Dict[str, object]:
    skip = {"handler", "command", "action", "tol", "seed", "out", "format", "workers"}
    return {key: value for key, value in sorted(vars(args).items()) if key not in skip}


def run(argv: Optional[Sequence[str]] = None) -> Tuple[int, Optional[Report]]:
    """Parse, execute and emit one command; returns the exit code and the report."""
    args = build_parser().parse_args(argv)
    ctx = Context(args)
    config = RunConfig(
        command=_command_path(args),
        parameters=_parameters(args),
        seed=ctx.seed,
        tol=args.tol,
        workers=ctx.workers,
        out=args.out,
        format=args.format,
    )
    logger.info("command started", command=config.command, seed=config.seed, workers=config.workers)
    try:
        checks, rows = args.handler(args, ctx)
    except (GeometryError, ValidationError) as e:
        logger.error("command failed", command=config.command, error_type=type(e).__name__, error=str(e))
        return EXIT_ERROR, None

    report = Report(
        command=config.command,
        seed=config.seed,
        tolerances=ctx.tolerances(),
        parameters=config.parameters,
        checks=checks,
        rows=rows,
    )
    text = report.to_json() if config.format == "json" else report.to_csv()
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    logger.info("command finished", command=config.command, passed=report.passed, checks=len(checks))
    return (EXIT_OK if report.passed else EXIT_FAILED), report


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
