"""CSV reading and writing.

Layout: a header ``f0,f1,...,f{d-1},label`` followed by one row per sample.
Features are written with Python's shortest round-trip float repr, so a
write/read cycle reproduces every float bit for bit.  Labels are opaque
tokens and stay strings.
"""

from __future__ import annotations

import csv
import math

import numpy as np

from .core import Dataset
from .exceptions import ParseError, ShapeError


def format_float(x: float) -> str:
    return repr(float(x))


def read_csv(path) -> Dataset:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ShapeError(f"{path}: empty file")
    header = rows[0]
    width = len(header)
    if width < 2:
        raise ShapeError(f"{path}: header needs at least one feature and a label column")
    features, labels = [], []
    for r, row in enumerate(rows[1:], start=1):
        if not row:
            continue
        if len(row) != width:
            raise ShapeError(f"{path}: data row {r} has {len(row)} cells, expected {width}")
        values = []
        for c, cell in enumerate(row[:-1], start=1):
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(
                    f"{path}: row {r}, column {c}: not a number: {cell!r}", r, c
                ) from None
            if not math.isfinite(v):
                raise ParseError(f"{path}: row {r}, column {c}: non-finite value", r, c)
            values.append(v)
        label = row[-1]
        if not label:
            raise ParseError(f"{path}: row {r}, column {width}: empty label", r, width)
        features.append(values)
        labels.append(label)
    X = np.array(features, dtype=np.float64).reshape(len(features), width - 1)
    return Dataset(X, np.array(labels, dtype=object))


def write_csv(dataset: Dataset, path) -> None:
    d = dataset.n_features
    with open(path, "w", newline="") as fh:
        fh.write(",".join([f"f{j}" for j in range(d)] + ["label"]) + "\n")
        for row, label in zip(dataset.features.tolist(), dataset.labels.tolist()):
            token = str(label)
            if not token or "," in token or "\n" in token:
                raise ValueError(f"label {token!r} cannot be written as a CSV token")
            fh.write(",".join(format_float(v) for v in row) + "," + token + "\n")
