"""CSV ingestion and result files."""

import csv
import json
import math
from collections import defaultdict

import numpy as np

from ..dataset import Dataset
from ..errors import MissingResponse, ParseError, UnknownColumn

MISSING_TOKENS = ("", "NA")
RESULT_FIELDS = ["rate", "rep", "method", "variable", "inclusion_prob"]
QUANTILE_RULE = "linear"  # Hyndman-Fan type 7


def _parse_cell(text, row, col):
    text = text.strip()
    if text in MISSING_TOKENS:
        return math.nan
    try:
        value = float(text)
    except ValueError:
        raise ParseError(row, col, text) from None
    if not math.isfinite(value):
        raise ParseError(row, col, text)
    return value


def ingest_csv(path, response, predictors=None):
    """Read a comma-separated file into a :class:`Dataset`.

    Empty cells and ``NA`` are missing. Rows are numbered from 0 in errors,
    matching the row index of the resulting dataset. ``predictors=None``
    takes every column except the response, in file order.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise UnknownColumn(f"{path}: empty file, no header row") from None
        if predictors is None:
            predictors = [h for h in header if h != response]
        for name in [response, *predictors]:
            if name not in header:
                raise UnknownColumn(f"column {name!r} not found in {path}")
        iy = header.index(response)
        ix = [header.index(name) for name in predictors]
        ys, xs = [], []
        for row, cells in enumerate(reader):
            if not cells or all(not c.strip() for c in cells):
                continue
            if len(cells) != len(header):
                raise ParseError(row, None, ",".join(cells))
            y = _parse_cell(cells[iy], row, response)
            if math.isnan(y):
                raise MissingResponse(row)
            ys.append(y)
            xs.append([_parse_cell(cells[i], row, name) for i, name in zip(ix, predictors)])
    X = np.array(xs, dtype=float).reshape(len(ys), len(predictors))
    return Dataset(np.array(ys), X, np.isfinite(X), tuple(predictors))


def _fmt(x):
    return format(float(x), ".17g")


def write_results_csv(rows, path):
    """``rows`` are ``(rate, rep, method, variable, inclusion_prob)`` tuples."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RESULT_FIELDS)
        for rate, rep, method, variable, prob in rows:
            w.writerow([repr(float(rate)), int(rep), method, variable, _fmt(prob)])


def read_results_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != RESULT_FIELDS:
            raise ParseError(0, None, ",".join(reader.fieldnames or []))
        return [
            (float(r["rate"]), int(r["rep"]), r["method"], r["variable"], float(r["inclusion_prob"]))
            for r in reader
        ]


def five_numbers(values):
    v = np.asarray(values, dtype=float)
    q = np.quantile(v, [0.0, 0.25, 0.5, 0.75, 1.0], method=QUANTILE_RULE)
    return dict(zip(["min", "q1", "median", "q3", "max"], (float(x) for x in q)))


def summarize(rows, corrupted=(), failures=()):
    """Boxplot statistics per (rate, method, variable).

    Variables keep their first-seen order, so the summary of a re-read CSV
    equals the summary built from the records that wrote it.
    """
    groups = defaultdict(list)
    variables = []
    for rate, _rep, method, variable, prob in rows:
        groups[(float(rate), method, variable)].append(float(prob))
        if variable not in variables:
            variables.append(variable)
    stats = []
    for (rate, method, variable), values in sorted(
        groups.items(), key=lambda kv: (kv[0][0], kv[0][1], variables.index(kv[0][2]))
    ):
        stats.append({"rate": rate, "method": method, "variable": variable, "count": len(values),
                      **five_numbers(values)})
    return {
        "format": "fbfmi-boxplot-summary/1",
        "quantile_rule": "linear interpolation (type 7)",
        "variables": variables,
        "corrupted": [v for v in variables if v in set(corrupted)],
        "stats": stats,
        "failures": list(failures),
    }


def write_summary(summary, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_summary(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
