"""Build the Emilia-Romagna 2022 hospitalisation fixture from the Civil Protection data.

Input is the regional file ``dati-regioni/dpc-covid19-ita-regioni.csv`` from
https://github.com/pcm-dpc/COVID-19 (download it yourself; this script does
not touch the network). Output has one row per day of 2022:

    date,totale_ospedalizzati,ricoverati_con_sintomi,terapia_intensiva

``totale_ospedalizzati`` (patients currently in hospital) is the column the
analysis uses by default.

    python scripts/extract_emilia_romagna.py dpc-covid19-ita-regioni.csv \
        --out tests/fixtures/emilia_romagna_2022.csv
"""

import argparse
import csv
import sys
from pathlib import Path

COLUMNS = ("totale_ospedalizzati", "ricoverati_con_sintomi", "terapia_intensiva")


def extract(src: Path, region: str = "Emilia-Romagna", year: str = "2022"):
    with src.open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            if row["denominazione_regione"] == region and row["data"].startswith(year):
                yield [row["data"][:10]] + [row[c] for c in COLUMNS]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("source", type=Path)
    ap.add_argument("--out", type=Path, default=Path("tests/fixtures/emilia_romagna_2022.csv"))
    ap.add_argument("--region", default="Emilia-Romagna")
    ap.add_argument("--year", default="2022")
    args = ap.parse_args()

    rows = sorted(extract(args.source, args.region, args.year))
    if len(rows) != 365:
        print(f"warning: expected 365 daily rows, got {len(rows)}", file=sys.stderr)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with args.out.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("date",) + COLUMNS)
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
