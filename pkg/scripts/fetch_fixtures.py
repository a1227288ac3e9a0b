#!/usr/bin/env python3
"""Build the case-study fixture CSVs used by the dataset acceptance tests.

Sources, in order of preference:
  --wheel PATH      a downloaded ``responsibly`` wheel, which bundles the raw
                    COMPAS and Adult files (``pip download --no-deps responsibly``)
  (default)         the upstream URLs below

COMPAS is reduced with the usual ProPublica filter (screening within 30 days
of arrest, known recidivism, no ordinary-traffic charges, a score present),
giving 6172 rows. Adult concatenates the train and test splits (48842 rows)
with the trailing "." stripped from test labels. Drug Consumption decodes
the ethnicity scores and binarizes cannabis use (CL0/CL1 -> 0, CL2..CL6 -> 1).

Writes into $BIASGAUGE_FIXTURES (default ./fixtures) and prints the sha256
of each file it writes.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import os
import sys
import urllib.request
import zipfile
from pathlib import Path

COMPAS_URL = "https://raw.githubusercontent.com/propublica/compas-analysis/master/compas-scores-two-years.csv"
ADULT_URLS = (
    "https://archive.ics.uci.edu/ml/machine-learning-databases/adult/adult.data",
    "https://archive.ics.uci.edu/ml/machine-learning-databases/adult/adult.test",
)
DRUG_URL = "https://archive.ics.uci.edu/ml/machine-learning-databases/00373/drug_consumption.data"

ADULT_COLUMNS = [
    "age", "workclass", "fnlwgt", "education", "education-num", "marital-status",
    "occupation", "relationship", "race", "sex", "capital-gain", "capital-loss",
    "hours-per-week", "native-country", "income",
]

DRUG_COLUMNS = [
    "id", "age", "gender", "education", "country", "ethnicity", "nscore", "escore",
    "oscore", "ascore", "cscore", "impulsive", "ss", "alcohol", "amphet", "amyl",
    "benzos", "caff", "cannabis", "choc", "coke", "crack", "ecstasy", "heroin",
    "ketamine", "legalh", "lsd", "meth", "mushrooms", "nicotine", "semer", "vsa",
]
DRUG_ETHNICITY = {
    "-0.50212": "Asian",
    "-1.10702": "Black",
    "1.90725": "Mixed-Black/Asian",
    "0.12600": "Mixed-White/Asian",
    "-0.22166": "Mixed-White/Black",
    "0.11440": "Other",
    "-0.31685": "White",
}


def _fetch(url: str) -> bytes:
    with urllib.request.urlopen(url, timeout=60) as resp:
        return resp.read()


def _from_wheel(wheel: Path, member: str) -> bytes:
    with zipfile.ZipFile(wheel) as zf:
        return zf.read(f"responsibly/dataset/{member}")


def build_compas(raw: bytes) -> str:
    reader = csv.DictReader(io.StringIO(raw.decode("utf-8"), newline=""))
    out = io.StringIO(newline="")
    writer = csv.DictWriter(out, fieldnames=reader.fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in reader:
        days = row["days_b_screening_arrest"]
        if days == "" or not -30 <= float(days) <= 30:
            continue
        if row["is_recid"] == "-1" or row["c_charge_degree"] == "O" or row["score_text"] == "N/A":
            continue
        writer.writerow(row)
    return out.getvalue()


def build_adult(train: bytes, test: bytes) -> str:
    out = io.StringIO(newline="")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(ADULT_COLUMNS)
    for blob in (train, test):
        for line in blob.decode("utf-8").splitlines():
            if not line.strip() or line.startswith("|"):
                continue
            fields = [f.strip() for f in line.split(",")]
            fields[-1] = fields[-1].rstrip(".")
            writer.writerow(fields)
    return out.getvalue()


def build_drug(raw: bytes) -> str:
    out = io.StringIO(newline="")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["id", "ethnicity", "cannabis"])
    for line in raw.decode("utf-8").splitlines():
        if not line.strip():
            continue
        fields = dict(zip(DRUG_COLUMNS, line.split(",")))
        code = f"{float(fields['ethnicity']):.5f}"
        ethnicity = DRUG_ETHNICITY[code]
        user = "0" if fields["cannabis"] in ("CL0", "CL1") else "1"
        writer.writerow([fields["id"], ethnicity, user])
    return out.getvalue()


def _write(directory: Path, name: str, text: str) -> None:
    data = text.encode("utf-8")
    (directory / name).write_bytes(data)
    print(f"{name}  sha256={hashlib.sha256(data).hexdigest()}  rows={text.count(chr(10)) - 1}")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--wheel", type=Path, help="responsibly wheel with bundled COMPAS/Adult files")
    parser.add_argument("--out", type=Path, default=Path(os.environ.get("BIASGAUGE_FIXTURES", "fixtures")))
    parser.add_argument("--only", choices=("compas", "adult", "drug"), action="append")
    args = parser.parse_args(argv)
    wanted = set(args.only or ("compas", "adult", "drug"))
    args.out.mkdir(parents=True, exist_ok=True)

    failures = 0
    if "compas" in wanted:
        try:
            raw = _from_wheel(args.wheel, "compas/compas-scores-two-years.csv") if args.wheel else _fetch(COMPAS_URL)
            _write(args.out, "compas-scores-two-years-filtered.csv", build_compas(raw))
        except Exception as exc:  # noqa: BLE001 - report and continue with the others
            print(f"compas: {exc}", file=sys.stderr)
            failures += 1
    if "adult" in wanted:
        try:
            if args.wheel:
                train = _from_wheel(args.wheel, "adult/adult.data")
                test = _from_wheel(args.wheel, "adult/adult.test")
            else:
                train, test = (_fetch(u) for u in ADULT_URLS)
            _write(args.out, "adult.csv", build_adult(train, test))
        except Exception as exc:  # noqa: BLE001
            print(f"adult: {exc}", file=sys.stderr)
            failures += 1
    if "drug" in wanted:
        try:
            _write(args.out, "drug-consumption-cannabis.csv", build_drug(_fetch(DRUG_URL)))
        except Exception as exc:  # noqa: BLE001
            print(f"drug: {exc}", file=sys.stderr)
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
