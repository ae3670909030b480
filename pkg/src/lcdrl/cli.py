"""Command-line interface.

Subcommands: verify, distance, lcd-check, train, bler, ablation,
variance-sweep. Exit codes: 0 success, 1 domain failure (e.g. a code
that is not LCD, or a distance mismatch), 2 usage error (unparseable
files or configs). Report commands write CSV plus a rendered PNG figure
alongside it unless --no-plot is given.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import codes, plots
from .channel import ChannelConfig, sweep_bler
from .errors import EnumerationCapError, FieldError, MatrixParseError
from .trainer import (
    TrainConfig,
    load_config,
    run_ablation,
    run_variance_sweep,
    save_config,
    train,
)

BLER_CSV_HEADER = "snr_db,frames,errors,bler,half_width_95"


def _load_code(path: str):
    try:
        return codes.load_code(path)
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        return None
    except (MatrixParseError, FieldError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return None


def _print_report(code, report) -> None:
    print(f"code: [{code.n},{code.k}]_{code.q}")
    print(f"lcd: {'yes' if report.is_lcd else 'no'}")
    print(f"hull dimension: {report.hull_dim}")
    if report.min_distance is not None:
        d = report.min_distance
        print(f"minimum distance: {d}")
        print(f"singleton slack: {report.singleton_slack}")
        print(f"detects {report.detectable_errors} errors, "
              f"corrects {report.correctable_errors}")
        bound = codes.lookup_distance_bound(code.q, code.n, code.k)
        if bound is not None:
            lo, hi = bound
            span = str(lo) if lo == hi else f"{lo}-{hi}"
            print(f"known optimal-distance range: {span}")


def cmd_verify(args) -> int:
    code = _load_code(args.file)
    if code is None:
        return 2
    try:
        report = codes.analyze(code, cap=args.cap)
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _print_report(code, report)
    if not report.is_lcd:
        print("result: not LCD")
        return 1
    if args.expect_d is not None and report.min_distance != args.expect_d:
        print(f"result: distance {report.min_distance} != expected {args.expect_d}")
        return 1
    print("result: ok")
    return 0


def cmd_distance(args) -> int:
    code = _load_code(args.file)
    if code is None:
        return 2
    try:
        print(codes.min_distance(code, cap=args.cap))
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_lcd_check(args) -> int:
    code = _load_code(args.file)
    if code is None:
        return 2
    report = codes.analyze(code, with_distance=False)
    _print_report(code, report)
    return 0 if report.is_lcd else 1


def _load_train_config(path: str) -> TrainConfig | None:
    try:
        return load_config(path)
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        return None
    except (ValueError, FieldError) as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return None


def cmd_train(args) -> int:
    cfg = _load_train_config(args.config)
    if cfg is None:
        return 2
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    trace = out_dir / "rnd_trace.csv" if args.rnd_trace and cfg.rnd_enabled else None
    result = train(cfg, rnd_trace_path=trace)

    save_config(cfg, out_dir / "config.txt")
    result.write_log(out_dir / "train_log.csv")
    if result.best_code is not None:
        codes.save_code(result.best_code, out_dir / "best_code.txt",
                        distance=result.best_report.min_distance)
    if not args.no_plot and result.episodes_run > 0:
        plots.plot_training_curves(result.episode_mean_total,
                                   result.episode_mean_extrinsic,
                                   result.episode_lcd_rate,
                                   out_dir / "train_log.png")

    print(f"episodes run: {result.episodes_run}")
    if result.best_code is not None:
        r = result.best_report
        print(f"best code: [{result.best_code.n},{result.best_code.k}]_"
              f"{result.best_code.q}, lcd={r.is_lcd}, d={r.min_distance}, "
              f"found at episode {result.best_episode}")
    else:
        print("best code: none (no LCD state visited)")
    print(f"wall time: {result.wall_time:.1f}s")
    print(f"bundle written to {out_dir}")
    return 0


def _write_csv(path: str | None, header: str, rows: list[str]) -> None:
    if path is None:
        print(header)
        for row in rows:
            print(row)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(header + "\n")
            for row in rows:
                fh.write(row + "\n")


def cmd_bler(args) -> int:
    code = _load_code(args.file)
    if code is None:
        return 2
    if code.q != 2:
        print("error: BLER simulation needs a binary code; this code is "
              f"over GF({code.q}) (ternary codes are evaluated by minimum "
              "distance instead)", file=sys.stderr)
        return 1
    snrs = np.arange(args.snr_lo, args.snr_hi + 1e-9, args.snr_step)
    cfg = ChannelConfig(frames=args.frames, osd_order=args.order,
                        seed=args.seed, max_errors=args.max_errors)
    rows = sweep_bler(code, snrs, cfg)
    lines = [
        f"{r['snr_db']!r},{r['frames']},{r['errors']},{r['bler']!r},{r['half_width_95']!r}"
        for r in rows
    ]
    _write_csv(args.output, BLER_CSV_HEADER, lines)
    if args.output and not args.no_plot:
        plots.plot_bler_sweep(rows, Path(args.output).with_suffix(".png"))
    return 0


def cmd_ablation(args) -> int:
    cfg = _load_train_config(args.config)
    if cfg is None:
        return 2
    seeds = [int(s) for s in args.seeds.split(",") if s.strip()]
    try:
        result = run_ablation(cfg, seeds)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    lines = [
        f"{seed},{w!r},{wo!r}"
        for seed, w, wo in zip(result.seeds, result.last100_with, result.last100_without)
    ]
    _write_csv(args.output, "seed,last100_with_rnd,last100_without_rnd", lines)
    if args.output and not args.no_plot:
        plots.plot_ablation(result.curves_with, result.curves_without,
                            Path(args.output).with_suffix(".png"))
    print(f"mean last-100 extrinsic: with={result.mean_with:.6f} "
          f"without={result.mean_without:.6f} ratio={result.ratio:.4f}")
    print(f"median last-100 extrinsic: with={result.median_with:.6f} "
          f"without={result.median_without:.6f}")
    return 0


def cmd_variance_sweep(args) -> int:
    cfg = _load_train_config(args.config)
    if cfg is None:
        return 2
    sigmas = [float(s) for s in args.sigmas.split(",") if s.strip()]
    if not sigmas:
        print("error: --sigmas must list at least one value", file=sys.stderr)
        return 2
    result = run_variance_sweep(cfg, sigmas)
    lines = []
    for sigma2, total, extrinsic, lcd in zip(result.sigma2_values, result.curves_total,
                                             result.curves_extrinsic, result.lcd_rates):
        for ep, (t, e, l) in enumerate(zip(total, extrinsic, lcd), start=1):
            lines.append(f"{sigma2!r},{ep},{t!r},{e!r},{l!r}")
    _write_csv(args.output, "sigma2,episode,mean_total,mean_extrinsic,lcd_rate", lines)
    if args.output and not args.no_plot:
        plots.plot_variance_sweep(result.sigma2_values, result.curves_extrinsic,
                                  Path(args.output).with_suffix(".png"))
    for sigma2, best in zip(result.sigma2_values, result.best_metrics):
        print(f"sigma2 {sigma2:g}: best metric {best}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcdrl",
        description="Construct and verify binary/ternary LCD codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="full report on a code file")
    p.add_argument("file")
    p.add_argument("--expect-d", type=int, default=None,
                   help="fail (exit 1) unless the minimum distance equals this")
    p.add_argument("--cap", type=int, default=codes.DEFAULT_ENUMERATION_CAP,
                   help="codeword enumeration cap for the distance computation")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("distance", help="print the exact minimum distance")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=codes.DEFAULT_ENUMERATION_CAP)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("lcd-check", help="LCD test and hull dimension only")
    p.add_argument("file")
    p.set_defaults(func=cmd_lcd_check)

    p = sub.add_parser("train", help="run the policy-gradient construction loop")
    p.add_argument("config", help="flat key = value config file")
    p.add_argument("--out", default="train_out", help="result bundle directory")
    p.add_argument("--rnd-trace", action="store_true",
                   help="also write the per-update novelty trace CSV")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("bler", help="BLER sweep CSV for a binary code file")
    p.add_argument("file")
    p.add_argument("--snr-lo", type=float, default=0.0)
    p.add_argument("--snr-hi", type=float, default=5.0)
    p.add_argument("--snr-step", type=float, default=1.0)
    p.add_argument("--frames", type=int, default=10_000)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-errors", type=int, default=100)
    p.add_argument("--output", "-o", default=None,
                   help="CSV path (stdout if omitted; PNG written alongside)")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_bler)

    p = sub.add_parser("ablation", help="novelty-module on/off comparison")
    p.add_argument("config")
    p.add_argument("--seeds", default="1,2,3,4,5", help="comma-separated seeds")
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_ablation)

    p = sub.add_parser("variance-sweep", help="compare action variances")
    p.add_argument("config")
    p.add_argument("--sigmas", default="0.01,0.1,0.3",
                   help="comma-separated sigma^2 values")
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_variance_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
