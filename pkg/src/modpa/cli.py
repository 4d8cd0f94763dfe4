"""Command-line interface: bench, pa, audit, and security subcommands."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench, pa, report, security
from .bignum import MulAlgorithm, ThresholdTable, WordOrder

_SUFFIX = {"k": 1_000, "m": 1_000_000, "g": 1_000_000_000}


def parse_size(text: str) -> int:
    """Parse a block size like '1000000', '1M', or '16m'."""
    t = text.strip().lower()
    mult = 1
    if t and t[-1] in _SUFFIX:
        mult = _SUFFIX[t[-1]]
        t = t[:-1]
    try:
        return int(t) * mult
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size {text!r}") from None


def parse_sizes(text: str) -> tuple[int, ...]:
    return tuple(parse_size(part) for part in text.split(",") if part.strip())


def parse_thresholds(text: str) -> ThresholdTable:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            "thresholds need three comma-separated limb counts, e.g. 32,256,2048")
    try:
        a, b, c = (int(p) for p in parts)
        return ThresholdTable(a, b, c)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


_ORDERS = {
    "lsf": WordOrder.LEAST_SIGNIFICANT_FIRST,
    "msf": WordOrder.MOST_SIGNIFICANT_FIRST,
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rng-seed", type=int, default=0,
                   help="shared entropy value; equal seeds reproduce equal outputs")
    p.add_argument("--alg", choices=[a.value for a in MulAlgorithm], default="auto",
                   help="force a multiplication algorithm (default: auto)")
    p.add_argument("--thresholds", type=parse_thresholds, default=None,
                   metavar="A,B,C",
                   help="algorithm selection bands in limbs: schoolbook,karatsuba,toom3")
    p.add_argument("--format", choices=["csv", "json"], default="csv",
                   dest="report_format", help="report format (default: csv)")
    p.add_argument("--order", choices=["lsf", "msf"], default="lsf",
                   help="byte significance order for key files (default: lsf)")
    p.add_argument("--out", dest="out_path", default=None, help="output file")


def _add_pa_like(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--ratio", type=float, default=None,
                       help="output/input length ratio in (0, 1] (default 0.5)")
    group.add_argument("--out-bits", type=int, default=None,
                       help="absolute output length in bits")
    p.add_argument("--epsilon", type=float, default=None,
                   help="failure parameter for the security budget")
    p.add_argument("--hmin", type=float, default=None, dest="h_min",
                   help="smooth min-entropy estimate in bits")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="modpa",
        description="Privacy amplification by modular-arithmetic hashing: "
                    "benchmarks, batch key hashing, collision audits, and "
                    "security arithmetic.")
    sub = top.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="time hashing rounds over a block-size ladder")
    b.add_argument("--sizes", type=parse_sizes, default=bench.DEFAULT_SIZE_LADDER,
                   help="comma-separated block sizes, e.g. 1M,2M,4M "
                        "(default: the 1M..100M ladder)")
    b.add_argument("--trials", type=int, default=5,
                   help="timing trials per size; the median is reported (default 5)")
    b.add_argument("--timing", choices=[bench.TIMING_PIPELINE, bench.TIMING_MULTIPLY],
                   default=bench.TIMING_PIPELINE,
                   help="time the whole round or only the big multiply")
    b.add_argument("--no-plot", action="store_true",
                   help="skip the figure next to the written report")
    _add_pa_like(b)
    _add_common(b)

    k = sub.add_parser("pa", help="hash the blocks of a key file")
    k.add_argument("--in", dest="in_path", required=True, help="raw input key file")
    k.add_argument("--sizes", type=parse_sizes, required=True,
                   help="block size in bits (exactly one, whole bytes)")
    _add_pa_like(k)
    _add_common(k)

    a = sub.add_parser("audit", help="collision audit of the hash family")
    a.add_argument("--alpha", type=int, required=True, help="input width in bits")
    a.add_argument("--beta", type=int, required=True, help="output width in bits")
    a.add_argument("--sample-seeds", type=int, default=None, dest="seed_sample",
                   help="audit a uniform random sample of seeds instead of all")
    a.add_argument("--no-plot", action="store_true",
                   help="skip the figure next to the written report")
    _add_common(a)

    s = sub.add_parser("security", help="print key-length and leftover bounds")
    s.add_argument("--hmin", type=float, required=True, dest="h_min",
                   help="smooth min-entropy estimate in bits")
    s.add_argument("--epsilon", type=float, required=True,
                   help="failure parameter in (0, 1)")
    s.add_argument("--out-bits", type=int, default=None,
                   help="also evaluate the leftover bound at this output length")
    s.add_argument("--format", choices=["text", "csv", "json"], default="text",
                   dest="report_format", help="output format (default: text)")
    return top


def _config(args: argparse.Namespace, **overrides) -> bench.RunConfig:
    kwargs = dict(
        rng_seed=args.rng_seed,
        alg=MulAlgorithm(args.alg),
        report_format=getattr(args, "report_format", "csv"),
        order=_ORDERS[args.order],
        out_path=args.out_path,
    )
    if args.thresholds is not None:
        kwargs["thresholds"] = args.thresholds
    for name in ("sizes", "ratio", "out_bits", "epsilon", "h_min", "in_path",
                 "trials", "timing", "alpha", "beta", "seed_sample"):
        if hasattr(args, name) and getattr(args, name) is not None:
            kwargs[name] = getattr(args, name)
    kwargs.update(overrides)
    return bench.RunConfig(**kwargs)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_bench(args: argparse.Namespace) -> int:
    cfg = _config(args)
    records = bench.run_bench(cfg)
    if not records:
        print("no sizes completed", file=sys.stderr)
        return 1
    text = (report.bench_csv(records) if cfg.report_format == "csv"
            else report.bench_json(records))
    _emit(text, cfg.out_path)
    if cfg.out_path:
        print(f"report written to {cfg.out_path}")
        if not args.no_plot:
            fig = report.render_bench_figure(records, report.figure_path(cfg.out_path))
            print(f"figure written to {fig}")
    return 0


def _cmd_pa(args: argparse.Namespace) -> int:
    if args.out_path is None:
        print("pa: --out is required", file=sys.stderr)
        return 2
    cfg = _config(args)
    try:
        result = bench.run_pa(cfg)
    except FileNotFoundError as exc:
        print(f"pa: input file not found: {exc.filename}", file=sys.stderr)
        return 1
    except pa.SecurityBoundError as exc:
        print(f"pa: {exc}", file=sys.stderr)
        print(f"pa: maximum permissible output length r_max={exc.r_max}",
              file=sys.stderr)
        return 1
    sys.stdout.write(report.budget_summary(result.budget))
    print(f"hashed {result.blocks} block(s) of {result.n} bits to "
          f"{result.r} bits each -> {result.out_path}")
    return 0


def _cmd_audit(args: argparse.Namespace) -> int:
    cfg = _config(args)
    rep = bench.run_audit(cfg)
    text = (report.audit_csv(rep) if cfg.report_format == "csv"
            else report.audit_json(rep))
    _emit(text, cfg.out_path)
    if cfg.out_path:
        sys.stdout.write(report.audit_summary(rep))
        print(f"report written to {cfg.out_path}")
        if not args.no_plot:
            fig = report.render_audit_figure(rep, report.figure_path(cfg.out_path))
            print(f"figure written to {fig}")
    else:
        sys.stderr.write(report.audit_summary(rep))
    return 0


def _cmd_security(args: argparse.Namespace) -> int:
    r_max = security.max_key_length(args.h_min, args.epsilon)
    r = args.out_bits
    eps_bar = security.leftover_bound(args.h_min, r, args.epsilon) if r is not None else None
    if args.report_format == "json":
        text = report.security_json(args.h_min, args.epsilon, r_max, r,
                                    eps_bar.log2 if eps_bar else None)
    elif args.report_format == "csv":
        cols = ["h_min", "epsilon", "r_max"] + (["r", "eps_bar_log2"] if r is not None else [])
        vals = [args.h_min, args.epsilon, r_max] + ([r, eps_bar.log2] if r is not None else [])
        text = ",".join(cols) + "\n" + ",".join(str(v) for v in vals) + "\n"
    else:
        lines = [f"h_min = {args.h_min:g} bits, epsilon = {args.epsilon:g}",
                 f"maximum key length r_max = {r_max} bits"]
        if r is not None:
            ok = "within" if r <= r_max else "EXCEEDS"
            lines.append(f"requested r = {r} bits ({ok} the bound)")
            lines.append(f"leftover bound eps_bar = 2^{eps_bar.log2:.6g}")
        text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    return 0


_COMMANDS = {
    "bench": _cmd_bench,
    "pa": _cmd_pa,
    "audit": _cmd_audit,
    "security": _cmd_security,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"modpa {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
