"""Rolling-window distance-correlation matrices between keyword series.

Each frame is labeled by the day after its window: the window for label
date t is the `window_days` dates immediately preceding t, exclusive of t.
A 15-day window over data starting 2020-03-16 therefore produces its first
frame on 2020-03-31 and its last on the day after the data ends.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from datetime import date, timedelta

import numpy as np

from . import kernels
from .errors import (
    LengthMismatch,
    MisalignedSeries,
    NonFiniteInput,
    WindowTooLong,
)
from .ingest import DailySeries


@dataclass(eq=False)
class CorrelationFrame:
    """Dated symmetric keyword-by-keyword distance-correlation matrix."""

    label_date: date
    window_days: int
    keywords: tuple[str, ...]
    matrix: np.ndarray = field(repr=False)


def distance_correlation(x, y) -> float:
    """Distance correlation of two equal-length vectors, in [0, 1].

    Constant inputs have zero distance variance and correlate 0 with
    anything by convention. The computation is symmetric in x and y.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1:
        raise ValueError("inputs must be 1-d vectors")
    if x.shape[0] != y.shape[0]:
        raise LengthMismatch(f"vector lengths differ: {x.shape[0]} vs {y.shape[0]}")
    if x.shape[0] < 2:
        raise ValueError("need at least 2 points")
    if not (np.isfinite(x).all() and np.isfinite(y).all()):
        raise NonFiniteInput("inputs must be finite")
    return float(kernels.dcor_matrix(np.column_stack((x, y)))[0, 1])


def rolling_correlation(
    series: dict[str, DailySeries],
    window_days: int,
    span: tuple[date, date] | None = None,
) -> list[CorrelationFrame]:
    """One CorrelationFrame per label date over all rolling windows.

    All series must cover the identical consecutive date range (pass `span`
    to assert which one). Keyword order follows the mapping order. The first
    label date is series start + window_days; the last is the day after the
    series end, so every window of data labels the day it leads into.
    """
    if not series:
        raise MisalignedSeries("no series given")
    if window_days < 1:
        raise ValueError("window_days must be positive")
    keywords = tuple(series.keys())
    first = series[keywords[0]]
    for kw in keywords:
        s = series[kw]
        if s.start_date != first.start_date or s.end_date != first.end_date:
            raise MisalignedSeries(
                f"{kw}: spans {s.start_date}..{s.end_date},"
                f" expected {first.start_date}..{first.end_date}"
            )
    if span is not None and (first.start_date, first.end_date) != span:
        raise MisalignedSeries(
            f"series span {first.start_date}..{first.end_date}"
            f" does not match requested {span[0]}..{span[1]}"
        )
    n_days = len(first)
    if window_days > n_days:
        raise WindowTooLong(f"window of {window_days} days exceeds {n_days} days of data")

    data = np.column_stack([series[kw].values for kw in keywords])
    if not np.isfinite(data).all():
        raise NonFiniteInput("series contain non-finite values")

    stack = kernels.rolling_dcor(data, window_days)
    start = first.start_date + timedelta(days=window_days)
    return [
        CorrelationFrame(
            label_date=start + timedelta(days=f),
            window_days=window_days,
            keywords=keywords,
            matrix=stack[f],
        )
        for f in range(stack.shape[0])
    ]


def emit_correlations_csv(frames: list[CorrelationFrame]) -> str:
    """Long-format `label_date,keyword_a,keyword_b,dcor` CSV, 12 significant digits."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["label_date", "keyword_a", "keyword_b", "dcor"])
    for frame in frames:
        kws = frame.keywords
        for i in range(len(kws)):
            for j in range(i + 1, len(kws)):
                writer.writerow(
                    [frame.label_date.isoformat(), kws[i], kws[j], f"{frame.matrix[i, j]:.12g}"]
                )
    return out.getvalue()
