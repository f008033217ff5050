#!/usr/bin/env python3
"""Export the two benchmark datasets to the CSV layout this toolkit reads.

Every experiment scenario has a synthetic fallback and runs fully offline;
these files are only needed for runs on the real data, e.g.:

    python3 scripts/export_datasets.py --out data/
    fspa dataset-check data/breast_cancer.csv --label-column label
    fspa scenario downstream --config configs/downstream_digits.toml

Requires scikit-learn (which bundles both datasets).
"""

import argparse
import csv
import pathlib

from sklearn.datasets import load_breast_cancer, load_digits


def export(bunch, path: pathlib.Path) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        names = [n.replace(" ", "_") for n in getattr(bunch, "feature_names", [])]
        if not len(names):
            names = [f"f{i}" for i in range(bunch.data.shape[1])]
        writer.writerow(names + ["label"])
        for row, label in zip(bunch.data, bunch.target):
            writer.writerow([repr(v) for v in row] + [int(label)])
    print(f"wrote {path} ({bunch.data.shape[0]} rows, {bunch.data.shape[1]} features)")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path("data"))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    export(load_breast_cancer(), args.out / "breast_cancer.csv")
    export(load_digits(), args.out / "digits.csv")


if __name__ == "__main__":
    main()
