"""Full simulation grid: signals f1-f3, SNR 2 and 5, both tapers, both corrections.

    python scripts/run_table1.py --reps 500 --out results/
"""

import argparse
import logging
from dataclasses import replace
from pathlib import Path

from ssa_autogroup.io import study_table, write_study_csv
from ssa_autogroup.simulation import Scenario, run_study
from ssa_autogroup.wbdd import BootstrapConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--reps", type=int, default=500)
    ap.add_argument("--B", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--aux", default="gaussian")
    ap.add_argument("--tapers", nargs="+", default=["triangle", "trapezoid043"])
    ap.add_argument("--corrections", nargs="+", default=["holm", "sidak"])
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    args.out.mkdir(parents=True, exist_ok=True)
    base = [Scenario(sig, snr, reps=args.reps) for sig in ("f1", "f2", "f3") for snr in (2.0, 5.0)]
    for taper in args.tapers:
        for corr in args.corrections:
            cfg = BootstrapConfig(B=args.B, seed=args.seed, window=taper, aux=args.aux)
            rows = run_study([replace(s, cfg=cfg, correction=corr) for s in base], seed=args.seed)
            tag = f"{taper}_{corr}_{args.aux}"
            write_study_csv(args.out / f"study_{tag}.csv", rows)
            print(f"\n== window={taper} correction={corr} aux={args.aux} reps={args.reps}")
            print(study_table(rows), end="")


if __name__ == "__main__":
    main()
