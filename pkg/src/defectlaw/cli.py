"""Command-line front end: scan, analyze, simulate, pvalue.

Data and reports go to files in the output directory; diagnostics go to
stderr. Output files are written atomically (temp file then rename), and
every command is deterministic given identical inputs, flags, and seed.
Warnings never change the exit code; it is nonzero only on error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass

from . import analysis, defects, lexer, metrics, simulator, stats, svgplot


@dataclass
class RunConfig:
    """Flag values shared across subcommands; one field per flag."""

    language: str = lexer.C_LIKE
    granularity: str = lexer.FILE_GRANULARITY
    fraction: float = analysis.DEFAULT_FRACTION
    normalize: float = 1.0
    d_max: int | None = None  # None = smallest cap covering 99% of components
    out_dir: str = "."
    seed: int = 0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        config = cls()
        for name in ("language", "granularity", "fraction", "normalize",
                     "d_max", "out_dir", "seed"):
            if hasattr(args, name):
                setattr(config, name, getattr(args, name))
        return config


def _write_atomic(path: str, content: str) -> None:
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-defectlaw-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_atomic_via(path: str, writer) -> None:
    """Run a path-taking writer against a temp file, then rename into place."""
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-defectlaw-")
    os.close(fd)
    try:
        writer(tmp)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _parse_d_max(text: str) -> int | None:
    if text == "auto":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--d-max expects 'auto' or an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError("--d-max must be >= 0")
    return value


def cmd_scan(args: argparse.Namespace, config: RunConfig) -> int:
    if args.extensions:
        ext_map = {
            ext if ext.startswith(".") else f".{ext}": config.language
            for ext in args.extensions.split(",")
            if ext
        }
    else:
        ext_map = lexer.default_extension_map(config.language)
    try:
        components, warnings = lexer.scan_tree(args.source_dir, ext_map, config.granularity)
    except NotADirectoryError as exc:
        return _fail(str(exc))
    measured, measure_warnings = metrics.measure_components(components)
    for message in warnings + measure_warnings:
        _warn(message)
    if not measured:
        return _fail(f"no components found under {args.source_dir}")
    os.makedirs(config.out_dir, exist_ok=True)
    out_path = os.path.join(config.out_dir, "metrics.csv")
    _write_atomic_via(out_path, lambda p: metrics.write_metrics_csv(p, measured))
    summary = metrics.summarize(measured)
    print(f"M={summary.M} T={summary.T} I_total={summary.I_total:.6g}")
    print(f"wrote {out_path}")
    return 0


def cmd_analyze(args: argparse.Namespace, config: RunConfig) -> int:
    try:
        component_metrics, warnings = metrics.load_metrics_csv(args.metrics)
        records = defects.load_defects(args.defects)
    except (ValueError, OSError) as exc:
        return _fail(str(exc))
    for message in warnings:
        _warn(message)
    if not component_metrics:
        return _fail(f"{args.metrics}: no usable components")

    joined, orphans = defects.join(component_metrics, records, args.missing_policy)
    if orphans:
        if len(orphans) == len(records) and records:
            return _fail(
                f"{args.defects}: none of the {len(records)} defect records matches "
                f"a component (first orphan: {orphans[0]})"
            )
        _warn(f"{len(orphans)} defect records match no component (first: {orphans[0]})")
    if not joined:
        return _fail("join produced no components (missing policy skipped everything)")

    report = analysis.maturity_assess(
        joined,
        fraction=config.fraction,
        r2_threshold=args.r2_threshold,
        alpha=args.alpha,
        normalize=config.normalize,
        d_max=config.d_max,
    )
    d_cap = config.d_max
    if d_cap is None:
        d_cap = max(
            defects.coverage_cutoff(joined, analysis.DEFAULT_CAP_COVERAGE),
            report.cutoff_d,
        )
    all_bins = defects.bin_by_defects(joined, d_cap, config.normalize)
    cut_bins = defects.bin_by_defects(joined, report.cutoff_d, config.normalize)

    os.makedirs(config.out_dir, exist_ok=True)
    paths = {name: os.path.join(config.out_dir, name) for name in (
        "bins.csv", "regression.txt", "maturity.txt", "maturity.json",
        "scatter_all.svg", "scatter_cut.svg",
    )}
    _write_atomic_via(paths["bins.csv"], lambda p: defects.write_bins_csv(p, all_bins))

    try:
        all_fit = analysis.defect_law_regression(joined, d_cap, config.normalize)
        regression_text = format_lm_header(config) + stats.format_r_style(all_fit)
        all_line = (all_fit.slope, all_fit.intercept)
    except stats.InsufficientDataError as exc:
        all_fit = None
        regression_text = f"regression unavailable: {exc}\n"
        all_line = (None, None)
    _write_atomic(paths["regression.txt"], regression_text)
    _write_atomic(paths["maturity.txt"], report.to_text())
    _write_atomic(paths["maturity.json"], json.dumps(report.to_dict(), indent=2) + "\n")

    _write_atomic(
        paths["scatter_all.svg"],
        svgplot.scatter_svg(
            [b.mean_info for b in all_bins],
            [float(b.d) for b in all_bins],
            slope=all_line[0],
            intercept=all_line[1],
            title=f"defects vs mean information content (all bins, d <= {d_cap})",
            xlabel="mean information content per defect level"
            + (f" (/{config.normalize:g})" if config.normalize != 1.0 else ""),
            ylabel="defects",
        ),
    )
    cut_line: tuple[float | None, float | None] = (None, None)
    if len(cut_bins) >= 3:
        cut_fit = stats.ols_fit([(b.mean_info, float(b.d)) for b in cut_bins])
        cut_line = (cut_fit.slope, cut_fit.intercept)
    _write_atomic(
        paths["scatter_cut.svg"],
        svgplot.scatter_svg(
            [b.mean_info for b in cut_bins],
            [float(b.d) for b in cut_bins],
            slope=cut_line[0],
            intercept=cut_line[1],
            title=f"defects vs mean information content (d <= {report.cutoff_d})",
            xlabel="mean information content per defect level"
            + (f" (/{config.normalize:g})" if config.normalize != 1.0 else ""),
            ylabel="defects",
        ),
    )
    print(report.to_text(), end="")
    print(f"wrote {', '.join(sorted(paths.values()))}")
    return 0


def format_lm_header(config: RunConfig) -> str:
    normalize = f", x normalized by {config.normalize:g}" if config.normalize != 1.0 else ""
    return f"fit: defects ~ mean information content{normalize}\n\n"


def cmd_simulate(args: argparse.Namespace, config: RunConfig) -> int:
    try:
        spec = simulator.EnsembleSpec(
            M=args.M,
            beta=args.beta,
            a_min=args.a_min,
            a_max=args.a_max,
            token_factor=args.token_factor,
            defect_rate=args.defect_rate,
            seed=config.seed,
        )
    except ValueError as exc:
        return _fail(str(exc))
    sample = simulator.sample_powerlaw(spec)
    # separate stream for injection so defect noise is independent of the draw
    sample.defects = simulator.inject_defects(sample, spec.defect_rate, seed=spec.seed + 1)

    os.makedirs(config.out_dir, exist_ok=True)
    metrics_path = os.path.join(config.out_dir, "metrics.csv")
    defects_path = os.path.join(config.out_dir, "defects.csv")
    _write_atomic_via(metrics_path, lambda p: metrics.write_metrics_csv(p, sample.components))
    _write_atomic_via(defects_path, lambda p: defects.write_defects_csv(p, sample.defects))
    total_defects = sum(r.d for r in sample.defects)
    print(
        f"M={spec.M} T={sample.realized_T} I={sample.realized_I:.6g} D={total_defects}"
    )
    print(f"wrote {metrics_path}, {defects_path}")
    return 0


def _format_pvalue(p: float) -> str:
    """4 significant digits; fixed-point for moderate magnitudes."""
    if p == 0.0:
        return "0.000"
    exponent = math.floor(math.log10(abs(p)))
    if -5 <= exponent < 4:
        decimals = max(0, 3 - exponent)
        return f"{p:.{decimals}f}"
    return f"{p:.3e}"


def cmd_pvalue(args: argparse.Namespace, config: RunConfig) -> int:
    try:
        if args.kind == "f":
            if args.df2 is None:
                return _fail("pvalue f needs a statistic and two df arguments")
            p = stats.f_pvalue(args.stat, args.df1, args.df2)
        else:
            if args.df2 is not None:
                return _fail("pvalue t takes a statistic and one df argument")
            p = stats.t_pvalue_two_sided(args.stat, args.df1)
    except (ValueError, ArithmeticError) as exc:
        return _fail(str(exc))
    print(_format_pvalue(p))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defectlaw",
        description=(
            "Measure token counts and unique-alphabet sizes per source component, "
            "join defect records, and test whether defect counts scale with "
            "information content."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="tokenize a source tree and write metrics.csv")
    scan.add_argument("source_dir", help="root of the source tree")
    scan.add_argument("--language", choices=lexer.LANGUAGES, default=lexer.C_LIKE)
    scan.add_argument("--granularity", choices=lexer.GRANULARITIES,
                      default=lexer.FILE_GRANULARITY)
    scan.add_argument("--extensions",
                      help="comma-separated extensions to scan (default per language)")
    scan.add_argument("--out-dir", default=".")
    scan.set_defaults(func=cmd_scan)

    analyze = sub.add_parser(
        "analyze", help="join metrics with defects, fit, and report maturity"
    )
    analyze.add_argument("metrics", help="metrics CSV (id,t,a,info)")
    analyze.add_argument("defects", help="defects CSV (component_id,defects)")
    analyze.add_argument("--fraction", type=float, default=analysis.DEFAULT_FRACTION,
                         help="coverage fraction for the cutoff (default 0.95)")
    analyze.add_argument("--normalize", type=float, default=1.0,
                         help="divide mean information content by this factor")
    analyze.add_argument("--d-max", type=_parse_d_max, default=None, metavar="auto|K",
                         help="cap for the all-bins fit: 'auto' (99%% coverage) or a count")
    analyze.add_argument("--r2-threshold", type=float,
                         default=analysis.DEFAULT_R2_THRESHOLD)
    analyze.add_argument("--alpha", type=float, default=analysis.DEFAULT_ALPHA)
    analyze.add_argument("--missing-policy", choices=(defects.MISSING_ZERO,
                         defects.MISSING_SKIP), default=defects.MISSING_ZERO,
                         help="components without a defect record get d=0 or are dropped")
    analyze.add_argument("--out-dir", default=".")
    analyze.set_defaults(func=cmd_analyze)

    simulate = sub.add_parser(
        "simulate", help="write a synthetic metrics/defects CSV pair"
    )
    simulate.add_argument("--M", type=int, required=True, help="number of components")
    simulate.add_argument("--beta", type=float, required=True,
                          help="alphabet-distribution exponent")
    simulate.add_argument("--a-min", type=int, default=2)
    simulate.add_argument("--a-max", type=int, default=1024)
    simulate.add_argument("--token-factor", type=float,
                          default=simulator.DEFAULT_TOKEN_FACTOR,
                          help="tokens per alphabet entry (t = factor * a)")
    simulate.add_argument("--defect-rate", type=float, default=0.0,
                          help="expected defects per nat of information content")
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--out-dir", default=".")
    simulate.set_defaults(func=cmd_simulate)

    pvalue = sub.add_parser("pvalue", help="tail probability of an F or t statistic")
    pvalue.add_argument("kind", choices=("f", "t"))
    pvalue.add_argument("stat", type=float)
    pvalue.add_argument("df1", type=int)
    pvalue.add_argument("df2", type=int, nargs="?", default=None)
    pvalue.set_defaults(func=cmd_pvalue)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args, RunConfig.from_args(args))


if __name__ == "__main__":
    sys.exit(main())
