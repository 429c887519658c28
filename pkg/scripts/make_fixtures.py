"""Write the synthetic CSV fixtures used by the CLI tests.

    python scripts/make_fixtures.py [--out tests/fixtures]
"""

import argparse
from pathlib import Path

import numpy as np

from ssa_autogroup.io import write_csv
from ssa_autogroup.simulation import signal_value


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "tests" / "fixtures")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    t = np.arange(1, 51)
    f = signal_value("f1", t)
    y = f + np.sqrt(np.var(f, ddof=1) / 5) * np.random.default_rng(2024).standard_normal(50)
    write_csv(args.out / "f1_snr5.csv", ["t", "value"], zip(t, y))
    write_csv(args.out / "constant.csv", ["t", "value"], zip(range(1, 21), [3.0] * 20))
    write_csv(args.out / "zeros.csv", ["t", "value"], zip(range(1, 21), [0.0] * 20))


if __name__ == "__main__":
    main()
