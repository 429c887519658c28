"""``ssa-autogroup`` command line: analyze, simulate, wcorr."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from pathlib import Path

from .errors import DegenerateComponent, NumericalFailure, SsaError
from .hc import LINKAGES, hc_grouping
from .inference import Correction, infer_grouping
from .io import (
    grouping_keyvalue,
    grouping_table,
    load_csv,
    study_table,
    write_matrix_csv,
    write_reconstruction_csv,
    write_study_csv,
)
from .separability import wcorr_matrix
from .simulation import Scenario, Signal, run_study
from .ssa import decompose, embed, split
from .wbdd import AUX_PRESETS, AUX_REGISTRY, BootstrapConfig, WindowKind

log = logging.getLogger("ssa_autogroup")

EXIT_NUMERICAL = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _ell(value: str):
    if value == "auto":
        return value
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"ell must be an integer or 'auto', got {value!r}") from None


def _add_bootstrap_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("bootstrap")
    g.add_argument("--config", type=Path, help="JSON file with keys ell, window, aux, B, seed")
    g.add_argument("--B", type=int, default=None, help="bootstrap replications (default 1000)")
    g.add_argument("--seed", type=int, default=None, help="master seed (default 0)")
    g.add_argument("--ell", type=_ell, default=None, help="block size or 'auto' (default auto)")
    g.add_argument("--taper", choices=[k.value for k in WindowKind if k is not WindowKind.CUSTOM], default=None)
    g.add_argument("--aux", choices=sorted(set(AUX_REGISTRY) | set(AUX_PRESETS)), default=None)
    g.add_argument("--alpha", type=float, default=0.1)
    g.add_argument("--correction", choices=[c.value for c in Correction], default=Correction.HOLM.value)
    g.add_argument("--linkage", choices=LINKAGES, default="complete", help="HC baseline linkage")
    g.add_argument("--hc-clusters", type=int, default=None, help="HC baseline cluster count (default max(2, d//2))")


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", type=Path, required=True, help="CSV file")
    p.add_argument("--value-col", default="0", help="value column name or 0-based index (default 0)")
    p.add_argument("--label-col", default=None, help="optional label/date column")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--no-header", action="store_true")
    p.add_argument("--window", "-L", type=int, default=None, help="window length (default N/2)")


def bootstrap_config(args) -> BootstrapConfig:
    conf = {}
    if args.config is not None:
        try:
            conf = json.loads(args.config.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {args.config}: {exc}") from None
        unknown = set(conf) - {"ell", "window", "aux", "B", "seed"}
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
    for key, flag in (("ell", "ell"), ("window", "taper"), ("aux", "aux"), ("B", "B"), ("seed", "seed")):
        if getattr(args, flag) is not None:
            conf[key] = getattr(args, flag)
    return BootstrapConfig(**conf)


def _load(args):
    return load_csv(
        args.input,
        value_column=args.value_col,
        label_column=args.label_col,
        delimiter=args.delimiter,
        header=not args.no_header,
    )


def cmd_analyze(args) -> int:
    series = _load(args)
    cfg = bootstrap_config(args)
    L = len(series) // 2 if args.window is None else args.window
    dec = decompose(embed(series, L))
    if dec.d == 0:
        raise DegenerateComponent("series has no nonzero SSA components (d = 0)")
    result = infer_grouping(dec, cfg, args.correction, args.alpha)
    hc = hc_grouping(dec, args.linkage, args.hc_clusters)
    sp = split(dec, result.g_hat)

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    extra = {"input": str(args.input), "value_col": str(args.value_col), "linkage": args.linkage,
             "hc_clusters": "auto" if args.hc_clusters is None else args.hc_clusters, "g_hc": hc.g_hc}
    (out / "grouping_report.txt").write_text(grouping_table(result, extra), encoding="utf-8")
    (out / "grouping_report.kv").write_text(grouping_keyvalue(result, extra), encoding="utf-8")
    write_reconstruction_csv(out / "reconstruction.csv", series, sp.S, sp.Z)
    write_matrix_csv(out / "wcorr.csv", wcorr_matrix(dec))

    print(f"N={len(series)} L={L} d={dec.d}")
    print(f"g_hat={result.g_hat}")
    print(f"g_hc={hc.g_hc}")
    return 0


def cmd_simulate(args) -> int:
    if args.reps < 1:
        raise InputError(f"--reps must be >= 1, got {args.reps}")
    cfg = bootstrap_config(args)
    signals = [s for item in args.signals for s in item.split(",") if s]
    try:
        signals = [Signal(s.lower()) for s in signals]
    except ValueError as exc:
        raise InputError(str(exc)) from None
    snrs = [float(x) for item in args.snr for x in str(item).split(",") if x]
    scenarios = [
        Scenario(
            signal=s,
            snr=snr,
            N=args.N,
            L=args.window,
            reps=args.reps,
            alpha=args.alpha,
            cfg=cfg,
            correction=args.correction,
            linkage=args.linkage,
            hc_clusters=args.hc_clusters,
        )
        for s in signals
        for snr in snrs
    ]
    rows = run_study(scenarios, cfg.seed)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_study_csv(out, rows)
    sys.stdout.write(study_table(rows))
    failed = sum(r.failures for r in rows)
    return EXIT_NUMERICAL if failed else 0


def cmd_wcorr(args) -> int:
    series = _load(args)
    L = len(series) // 2 if args.window is None else args.window
    dec = decompose(embed(series, L))
    if dec.d == 0:
        raise DegenerateComponent("series has no nonzero SSA components (d = 0)")
    M = wcorr_matrix(dec)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    write_matrix_csv(args.out, M)
    print(f"wrote {M.shape[0]}x{M.shape[1]} w-correlation matrix to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ssa-autogroup", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decompose a CSV series and select the grouping index")
    _add_input_flags(p)
    _add_bootstrap_flags(p)
    p.add_argument("--out-dir", default="ssa_out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="Monte-Carlo study over synthetic signals")
    p.add_argument("--signals", nargs="+", default=["f1", "f2", "f3"])
    p.add_argument("--snr", nargs="+", default=["2", "5"])
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--N", type=int, default=50)
    p.add_argument("--window", "-L", type=int, default=None)
    p.add_argument("--out", default="study.csv")
    _add_bootstrap_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("wcorr", help="export the absolute w-correlation matrix")
    _add_input_flags(p)
    p.add_argument("--out", default="wcorr.csv")
    p.set_defaults(func=cmd_wcorr)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    logging.captureWarnings(True)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.func(args)
    except (NumericalFailure, DegenerateComponent) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InputError, SsaError, FileNotFoundError, KeyError, ValueError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
