"""Command-line front end: generate, resample, decompose, estimate, bench."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench as bench_mod
from . import data
from .baselines import LinearForecaster, PsfForecaster
from .decomposition import (
    dynamic_pattern_prob_recursive,
    enumerate_exact,
    mixture_pdf_curve,
    pattern_mixture,
)
from .patterns import PatternBits
from .tree import PatternTreeForecaster


def _parse_grid(spec: str) -> tuple[float, float, int]:
    try:
        lo, hi, steps = spec.split(":")
        return float(lo), float(hi), int(steps)
    except ValueError:
        raise ValueError(f"bad --grid {spec!r}; expected min:max:steps") from None


def _parse_int_list(spec: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in spec.split(",") if tok)


def cmd_generate(args: argparse.Namespace) -> int:
    if args.model == "mackey-glass":
        series = data.mackey_glass(
            args.n, a=args.a, b=args.b, tau=args.tau, dt=args.dt, x0=args.x0, burn_in=args.burn_in
        )
    elif args.model == "random-walk":
        series = data.random_walk(
            args.n, mu=args.mu, sigma=args.sigma, seed=args.seed, up_prob=args.up_prob
        )
    elif args.model == "iid":
        series = data.iid_gaussian(args.n, mu=args.mu, sigma=args.sigma, seed=args.seed)
    else:  # argparse choices guard this
        raise ValueError(f"unknown model {args.model}")
    data.save_csv(series, args.out)
    return 0


def cmd_resample(args: argparse.Namespace) -> int:
    series = data.load_csv(args.input)
    data.save_csv(data.downsample(series, args.factor), args.out)
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    pattern = PatternBits.from_string(args.pattern)
    dist = pattern_mixture(pattern, args.mu, args.sigma, backend=args.backend)
    curve = mixture_pdf_curve(dist, _parse_grid(args.grid))
    out = Path(args.out)
    lines = ["x,density"]
    lines.extend(f"{x:.17g},{y:.17g}" for x, y in curve)
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")

    exact = enumerate_exact(pattern)
    prob_recursive = dynamic_pattern_prob_recursive(pattern)
    prob_exact = float(exact.prob)
    sidecar = {
        "pattern": str(pattern),
        "backend": args.backend,
        "prob": prob_recursive if args.backend == "recursive" else prob_exact,
        "prob_recursive": prob_recursive,
        "prob_exact": prob_exact,
        "components": [
            {"weight": w, "alpha": p.alpha, "beta": p.beta} for w, p in dist.components
        ],
    }
    out.with_suffix(".json").write_text(json.dumps(sidecar, indent=2) + "\n", encoding="utf-8")
    return 0


def cmd_estimate(args: argparse.Namespace) -> int:
    series = data.load_csv(args.input)
    depth = args.depth if args.depth is not None else args.order
    if depth is None:
        raise ValueError("estimate needs --depth (or --order)")
    if args.method == "pt":
        forecaster = PatternTreeForecaster(depth=depth)
    elif args.method == "lp":
        forecaster = LinearForecaster(order=depth)
    else:
        forecaster = PsfForecaster(window=depth, n_labels=args.labels)
    forecaster.fit(series)
    payload = forecaster.report_.to_dict(verbose=args.verbose)
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    cfg = bench_mod.BenchConfig(
        source=args.model,
        methods=tuple(tok for tok in args.methods.split(",") if tok),
        depths=_parse_int_list(args.depths),
        downsample_factors=_parse_int_list(args.downsample),
        n=args.n,
        n_labels=args.labels,
    )
    try:
        result = bench_mod.run_bench(cfg)
    except bench_mod.BenchError as exc:
        print(f"bench failed: {exc}", file=sys.stderr)
        return 1
    if args.out:
        bench_mod.emit_table(result, args.format, args.out)
    else:
        renderers = {
            "csv": result.to_csv,
            "json": result.to_json,
            "markdown": result.to_markdown,
        }
        sys.stdout.write(renderers[args.format]())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patseries",
        description="Pattern-based decomposition and online estimation of time series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a synthetic series to CSV")
    g.add_argument("--model", required=True, choices=["mackey-glass", "random-walk", "iid"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--a", type=float, default=0.1)
    g.add_argument("--b", type=float, default=0.2)
    g.add_argument("--tau", type=float, default=17.0)
    g.add_argument("--dt", type=float, default=0.1)
    g.add_argument("--burn-in", type=int, default=10000, dest="burn_in")
    g.add_argument("--x0", type=float, default=1.2)
    g.add_argument("--mu", type=float, default=0.0)
    g.add_argument("--sigma", type=float, default=1.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--up-prob", type=float, default=None, dest="up_prob")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("resample", help="keep every k-th sample of a CSV series")
    r.add_argument("--input", required=True)
    r.add_argument("--factor", type=int, required=True)
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_resample)

    d = sub.add_parser("decompose", help="tabulate a pattern-conditioned mixture density")
    d.add_argument("--pattern", required=True, help="bit literal, newest bit first (e.g. 101)")
    d.add_argument("--mu", type=float, default=0.0)
    d.add_argument("--sigma", type=float, default=1.0)
    d.add_argument("--backend", choices=["recursive", "exact"], default="recursive")
    d.add_argument("--grid", default="-4:4:401", help="min:max:steps")
    d.add_argument("--out", required=True, help="CSV output; a .json sidecar is also written")
    d.set_defaults(func=cmd_decompose)

    e = sub.add_parser("estimate", help="run one forecaster over a CSV series")
    e.add_argument("--input", required=True)
    e.add_argument("--method", required=True, choices=list(bench_mod.KNOWN_METHODS))
    e.add_argument("--depth", type=int, default=None)
    e.add_argument("--order", type=int, default=None, help="alias for --depth")
    e.add_argument("--labels", type=int, default=5, help="PSF label count")
    e.add_argument("--verbose", action="store_true", help="include per-step records")
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_estimate)

    b = sub.add_parser("bench", help="run a method x depth x downsampling grid")
    b.add_argument("--model", default="mackey-glass", help="'mackey-glass' or 'csv:<path>'")
    b.add_argument("--methods", default="pt,lp,psf")
    b.add_argument("--depths", default="1,2,3,4,5")
    b.add_argument("--downsample", default="1")
    b.add_argument("--n", type=int, default=10000)
    b.add_argument("--labels", type=int, default=5)
    b.add_argument("--format", choices=["csv", "json", "markdown"], default="csv")
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
