"""Command-line front end: verify identities, emit moment tables, benchmark
reductions.

Exit codes: 0 all checks passed; 1 at least one mathematical failure;
2 numerically inconclusive results only; 64 bad usage or configuration.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .identities import REGISTRY_IDS, RunSettings, build_registry, verify_suite
from .moments import moment_table
from .reduction import SinProductIntegral, benchmark_reduction
from .report import REPORT_FORMATS, Report, render_report
from .testfuncs import get_test_function
from .verdicts import TOL_CLASSES

EX_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """argparse parser that reports usage problems with exit code 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _add_common(p: _Parser):
    p.add_argument("--format", choices=REPORT_FORMATS, default=None,
                   help="report format (default: text)")
    p.add_argument("--out", default=None, help="write the report to this path")
    p.add_argument("--seed", type=int, default=None,
                   help="seed for every randomized component (default: 0)")
    p.add_argument("--jobs", type=int, default=None,
                   help="record-level parallelism (default: available cores)")
    p.add_argument("--timing", action="store_true", default=None,
                   help="include wall time in the report payload")
    p.add_argument("--config", default=None,
                   help="JSON config file mirroring the flags; flags win")
    p.add_argument("--mc-samples", type=int, default=None,
                   help="Monte Carlo sample count (default: 10^7)")
    p.add_argument("--max-evals", type=int, default=None,
                   help="per-integral evaluation budget (default: 2*10^6)")


def _build_parser() -> _Parser:
    parser = _Parser(prog="intident", description=__doc__)
    parser.add_argument("--version", action="version",
                        version=f"intident {__version__}")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    pv = sub.add_parser("verify", help="verify registered identities")
    group = pv.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="run every identity")
    group.add_argument("--id", action="append", dest="ids", metavar="ID",
                       help="identity id (repeatable)")
    pv.add_argument("--grid", action="append", default=None, metavar="AXIS=V1,V2,...",
                    help="override a grid axis, e.g. x=0.1,0.5 (repeatable)")
    pv.add_argument("--tol", action="append", default=None, metavar="CLASS=VAL",
                    help="override a tolerance class, e.g. standard=1e-7")
    _add_common(pv)

    pm = sub.add_parser("moments", help="emit the moment table")
    pm.add_argument("--max-n", type=int, required=True, metavar="N",
                    help="largest moment index (2..30)")
    pm.add_argument("--tolerance", type=float, default=1e-8,
                    help="recursion/oracle agreement tolerance")
    _add_common(pm)

    pr = sub.add_parser("reduce", help="benchmark a reduction")
    pr.add_argument("--n", type=int, required=True, choices=(2, 3, 4),
                    help="number of angular variables")
    pr.add_argument("--fn", required=True, metavar="FID",
                    help="test-function id, e.g. exp_neg, power:2")
    pr.add_argument("--x", type=float, required=True, help="scale parameter")
    pr.add_argument("--target-error", type=float, default=1e-8,
                    help="error target for both routes")
    _add_common(pr)

    return parser


def _load_config(args) -> dict:
    cfg = {}
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file {args.config!r}: {exc}")
        if not isinstance(cfg, dict):
            raise UsageError("config file must hold a JSON object")
    return cfg


def _merged(args, cfg: dict, key: str, default):
    """Flag value if given, else config-file value, else default."""
    val = getattr(args, key, None)
    if val is not None:
        return val
    return cfg.get(key, default)


def _parse_grid(items) -> dict[str, tuple[float, ...]]:
    grids = {}
    for item in items or ():
        axis, _, vals = str(item).partition("=")
        if not axis or not vals:
            raise UsageError(f"bad --grid value {item!r}; expected AXIS=V1,V2,...")
        try:
            grids[axis] = tuple(float(v) for v in vals.split(","))
        except ValueError:
            raise UsageError(f"bad --grid numbers in {item!r}")
    return grids


def _parse_tols(items) -> tuple[tuple[str, float], ...]:
    out = []
    for item in items or ():
        cls, _, val = str(item).partition("=")
        if cls not in TOL_CLASSES or TOL_CLASSES[cls] is None:
            raise UsageError(f"unknown tolerance class {cls!r}")
        try:
            out.append((cls, float(val)))
        except ValueError:
            raise UsageError(f"bad --tol value {item!r}")
    return tuple(out)


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _settings(args, cfg) -> tuple[RunSettings, dict]:
    seed = int(_merged(args, cfg, "seed", 0))
    jobs = int(_merged(args, cfg, "jobs", os.cpu_count() or 1))
    mc_samples = int(_merged(args, cfg, "mc_samples", 10_000_000))
    max_evals = int(_merged(args, cfg, "max_evals", 2_000_000))
    fmt = _merged(args, cfg, "format", "text")
    timing = bool(_merged(args, cfg, "timing", False))
    common = {"seed": seed, "jobs": jobs, "mc_samples": mc_samples,
              "max_evals": max_evals, "format": fmt, "timing": timing}
    return RunSettings(seed=seed, mc_samples=mc_samples,
                       max_evals=max_evals), common


def cmd_verify(args) -> int:
    cfg = _load_config(args)
    settings, common = _settings(args, cfg)
    grid = _parse_grid(args.grid if args.grid is not None else cfg.get("grid_raw"))
    tols = _parse_tols(args.tol if args.tol is not None else cfg.get("tol_raw"))
    settings = RunSettings(seed=settings.seed, mc_samples=settings.mc_samples,
                           max_evals=settings.max_evals, tol_class_values=tols)

    ids = args.ids if args.ids is not None else cfg.get("ids")
    if args.all or (ids is None and cfg.get("all")):
        ids = None
    elif ids is None:
        raise UsageError("select identities with --all or --id")
    if ids is not None:
        known = set(REGISTRY_IDS)
        bad = [i for i in ids if i not in known]
        if bad:
            raise UsageError(f"unknown identity id(s): {', '.join(bad)}")

    t0 = time.perf_counter()
    records = verify_suite(ids=ids, settings=settings, grid_overrides=grid,
                           jobs=common["jobs"])
    wall = time.perf_counter() - t0

    config_echo = {
        "command": "verify",
        "ids": list(ids) if ids is not None else ["--all"],
        "grid": {k: list(v) for k, v in grid.items()},
        "tol": {k: v for k, v in tols},
        **common,
    }
    report = Report(config=config_echo, records=records, wall_time_s=wall)
    _emit(render_report(report, common["format"], include_timing=common["timing"]),
          _merged(args, cfg, "out", None))
    s = report.summary
    print(f"verify: {len(records)} records in {wall:.2f} s "
          f"({s['pass']} pass, {s['fail']} fail, {s['inconclusive']} inconclusive)",
          file=sys.stderr)
    return report.exit_status


def _fmt_float(x) -> str:
    return "" if x is None else repr(float(x))


def cmd_moments(args) -> int:
    cfg = _load_config(args)
    _, common = _settings(args, cfg)
    n_max = args.max_n
    if not (2 <= n_max <= 30):
        raise UsageError("--max-n must lie in [2, 30]")
    t0 = time.perf_counter()
    table = moment_table(n_max, tolerance=args.tolerance, strict=False)
    wall = time.perf_counter() - t0

    rows = [{
        "n": r.n,
        "recursion_value": r.recursion_value,
        "oracle_value": r.oracle_value,
        "oracle_err": r.oracle_err,
        "abs_diff": r.abs_diff,
        "max_recursion_term": r.max_recursion_term,
        "verdict": r.verdict,
    } for r in table.rows]
    summary = {
        "pass": sum(r.verdict in ("pass", "base") for r in table.rows),
        "fail": sum(r.verdict == "fail" for r in table.rows),
        "inconclusive": sum(r.verdict == "inconclusive" for r in table.rows),
    }
    fmt = common["format"]
    if fmt == "json":
        payload = {"version": __version__,
                   "config": {"command": "moments", "max_n": n_max,
                              "tolerance": args.tolerance, **common},
                   "rows": rows, "summary": summary}
        if common["timing"]:
            payload["wall_time_s"] = wall
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        lines = ["n,recursion_value,oracle_value,oracle_err,abs_diff,"
                 "max_recursion_term,verdict"]
        for r in table.rows:
            lines.append(",".join([
                str(r.n), _fmt_float(r.recursion_value),
                _fmt_float(r.oracle_value), _fmt_float(r.oracle_err),
                _fmt_float(r.abs_diff), _fmt_float(r.max_recursion_term),
                r.verdict,
            ]))
        lines.append(f"# pass={summary['pass']} fail={summary['fail']} "
                     f"inconclusive={summary['inconclusive']}")
        text = "\n".join(lines) + "\n"
    else:
        lines = [f"intident {__version__} moment table (n_max={n_max}, "
                 f"tolerance={args.tolerance:g})",
                 f"{'n':>3} {'recursion':<24} {'oracle':<24} "
                 f"{'abs_diff':<12} {'max_term':<12} verdict"]
        for r in table.rows:
            lines.append(
                f"{r.n:>3} {r.recursion_value!r:<24} {r.oracle_value!r:<24} "
                f"{(r.abs_diff if r.abs_diff is not None else float('nan')):<12.3e} "
                f"{(r.max_recursion_term if r.max_recursion_term is not None else float('nan')):<12.3e} "
                f"{r.verdict}")
        lines.append(f"summary: {summary['pass']} pass, {summary['fail']} fail, "
                     f"{summary['inconclusive']} inconclusive")
        text = "\n".join(lines) + "\n"
    _emit(text, _merged(args, cfg, "out", None))
    print(f"moments: n_max={n_max} in {wall:.2f} s, worst diff "
          f"{table.worst_diff:.3e}", file=sys.stderr)
    if summary["fail"]:
        return 1
    if summary["inconclusive"]:
        return 2
    return 0


def cmd_reduce(args) -> int:
    cfg = _load_config(args)
    _, common = _settings(args, cfg)
    try:
        get_test_function(args.fn)
    except KeyError as exc:
        raise UsageError(str(exc))
    try:
        integral = SinProductIntegral(args.n, args.x, args.fn)
    except ValueError as exc:
        raise UsageError(str(exc))

    bench = benchmark_reduction(integral, target_error=args.target_error)
    payload = {
        "version": __version__,
        "config": {"command": "reduce", "n": args.n, "fn": args.fn,
                   "x": args.x, "target_error": args.target_error, **common},
        "original": {"value": bench.naive_value, "err": bench.naive_err,
                     "evaluations": bench.naive_evaluations,
                     "seconds": bench.naive_seconds},
        "reduced": {"value": bench.reduced_value, "err": bench.reduced_err,
                    "evaluations": bench.reduced_evaluations,
                    "seconds": bench.reduced_seconds},
        "closed_form": bench.closed_form,
        "speedup_evaluations": bench.speedup_evaluations,
    }
    fmt = common["format"]
    if fmt == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        text = ("route,value,err,evaluations,seconds\n"
                f"original,{bench.naive_value!r},{bench.naive_err!r},"
                f"{bench.naive_evaluations},{bench.naive_seconds!r}\n"
                f"reduced,{bench.reduced_value!r},{bench.reduced_err!r},"
                f"{bench.reduced_evaluations},{bench.reduced_seconds!r}\n"
                + (f"closed,{bench.closed_form!r},0.0,0,0.0\n"
                   if bench.closed_form is not None else ""))
    else:
        lines = [
            f"intident {__version__} reduction benchmark",
            f"integral: n={args.n} fn={args.fn} x={args.x:g} "
            f"target_error={args.target_error:g}",
            f"original : value={bench.naive_value!r} "
            f"evaluations={bench.naive_evaluations} "
            f"({bench.naive_seconds:.3f} s)",
            f"reduced  : value={bench.reduced_value!r} "
            f"evaluations={bench.reduced_evaluations} "
            f"({bench.reduced_seconds:.3f} s)",
        ]
        if bench.closed_form is not None:
            lines.append(f"closed   : value={bench.closed_form!r}")
        lines.append(f"evaluation speedup: {bench.speedup_evaluations:.1f}x")
        text = "\n".join(lines) + "\n"
    _emit(text, _merged(args, cfg, "out", None))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "moments":
            return cmd_moments(args)
        if args.command == "reduce":
            return cmd_reduce(args)
    except UsageError as exc:
        print(f"intident {args.command}: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except KeyError as exc:
        print(f"intident {args.command}: error: {exc}", file=sys.stderr)
        return EX_USAGE
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
