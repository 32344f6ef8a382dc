"""Parsing and validation of search-interest CSV exports.

Daily exports arrive as segmented CSV files (one contiguous block of days
per file), weekly exports as one year-long file per keyword. Rows are
`YYYY-MM-DD,value`; any leading rows whose first field is not an ISO date
are treated as export preamble and skipped. The censored export value `<1`
maps to 0.5, the midpoint of its interval.
"""

from __future__ import annotations

import csv
import enum
import io
import math
import warnings
from dataclasses import dataclass
from datetime import date, timedelta

from .errors import (
    EmptySegment,
    EmptySeries,
    GapError,
    IrregularWeekSpacing,
    NonConsecutiveDates,
    OverlapError,
    SpanError,
    ValueOutOfRange,
)

DEFAULT_SPAN = (date(2020, 3, 16), date(2021, 3, 15))

DAY = timedelta(days=1)
WEEK = timedelta(days=7)


class Scale(enum.Enum):
    RAW = "raw"
    RESCALED = "rescaled"


@dataclass(frozen=True)
class DailySegment:
    """One contiguous block of daily values for a keyword."""

    keyword: str
    start_date: date
    end_date: date
    points: tuple[tuple[date, float], ...]

    @property
    def dates(self) -> tuple[date, ...]:
        return tuple(d for d, _ in self.points)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(v for _, v in self.points)


@dataclass(frozen=True)
class WeeklySeries:
    """Weekly values for a keyword; week starts exactly 7 days apart."""

    keyword: str
    points: tuple[tuple[date, float], ...]

    @property
    def week_starts(self) -> tuple[date, ...]:
        return tuple(d for d, _ in self.points)


@dataclass(frozen=True)
class DailySeries:
    """Consecutive daily values for a keyword, raw or rescaled.

    Raw values lie in [0, 100]. Rescaled values are nonnegative and may
    exceed 100 because weekly weights can exceed 1.
    """

    keyword: str
    points: tuple[tuple[date, float], ...]
    scale: Scale

    @property
    def start_date(self) -> date:
        return self.points[0][0]

    @property
    def end_date(self) -> date:
        return self.points[-1][0]

    @property
    def dates(self) -> tuple[date, ...]:
        return tuple(d for d, _ in self.points)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(v for _, v in self.points)

    def __len__(self) -> int:
        return len(self.points)


def _parse_iso_date(token: str) -> date | None:
    try:
        return date.fromisoformat(token.strip())
    except ValueError:
        return None


def _parse_value(token: str, when: date, upper: float | None = 100.0) -> float:
    token = token.strip()
    if token == "<1":
        return 0.5
    try:
        value = float(token)
    except ValueError:
        raise ValueOutOfRange(f"{when}: unparseable value {token!r}") from None
    if not math.isfinite(value) or value < 0 or (upper is not None and value > upper):
        hi = upper if upper is not None else "inf"
        raise ValueOutOfRange(f"{when}: value {token} outside [0,{hi}]")
    return value


def _data_rows(raw_csv: str, upper: float | None) -> list[tuple[date, float]]:
    """Extract (date, value) rows, skipping preamble lines."""
    rows = []
    for record in csv.reader(io.StringIO(raw_csv)):
        if not record:
            continue
        when = _parse_iso_date(record[0])
        if when is None:
            continue  # preamble or header
        if len(record) < 2:
            raise ValueOutOfRange(f"{when}: missing value field")
        rows.append((when, _parse_value(record[1], when, upper)))
    return rows


def parse_daily_segment(raw_csv: str, keyword: str) -> DailySegment:
    """Parse one segment export into a validated DailySegment.

    Dates must be strictly increasing with no gaps. A segment whose values
    neither reach 100 nor are all zero is suspicious (exports normalize the
    segment maximum to 100) and draws a warning, not an error.
    """
    rows = _data_rows(raw_csv, upper=100.0)
    if not rows:
        raise EmptySegment(f"{keyword}: no data rows")
    for (prev, _), (cur, _) in zip(rows, rows[1:]):
        if cur == prev:
            raise NonConsecutiveDates(f"{keyword}: duplicate date {cur}")
        if cur != prev + DAY:
            raise NonConsecutiveDates(
                f"{keyword}: missing date {prev + DAY} (rows jump {prev} -> {cur})"
            )
    values = [v for _, v in rows]
    if max(values) != 100.0 and any(v != 0.0 for v in values):
        warnings.warn(
            f"{keyword}: segment starting {rows[0][0]} has max {max(values)};"
            " expected a 100 (or an all-zero segment) in a normalized export",
            stacklevel=2,
        )
    return DailySegment(
        keyword=keyword.lower(),
        start_date=rows[0][0],
        end_date=rows[-1][0],
        points=tuple(rows),
    )


def parse_weekly(raw_csv: str, keyword: str) -> WeeklySeries:
    """Parse a weekly export; rows must be spaced exactly 7 days apart."""
    rows = _data_rows(raw_csv, upper=100.0)
    if not rows:
        raise EmptySeries(f"{keyword}: no weekly data rows")
    for (prev, _), (cur, _) in zip(rows, rows[1:]):
        if cur - prev != WEEK:
            raise IrregularWeekSpacing(
                f"{keyword}: week starts {prev} -> {cur} are {(cur - prev).days}"
                " days apart, expected 7"
            )
    return WeeklySeries(keyword=keyword.lower(), points=tuple(rows))


def assemble_daily(
    segments: list[DailySegment],
    span: tuple[date, date] | None = None,
) -> DailySeries:
    """Merge per-segment files into one continuous raw DailySeries.

    Segments must tile the timeline exactly: each one starts the day after
    the previous one ends. When `span` is given the merged series must cover
    it and is trimmed to it.
    """
    if not segments:
        raise EmptySegment("no segments to assemble")
    keywords = {s.keyword for s in segments}
    if len(keywords) > 1:
        raise ValueError(f"segments mix keywords: {sorted(keywords)}")
    ordered = sorted(segments, key=lambda s: s.start_date)
    points: list[tuple[date, float]] = list(ordered[0].points)
    for prev, cur in zip(ordered, ordered[1:]):
        if cur.start_date <= prev.end_date:
            raise OverlapError(
                f"{cur.keyword}: segments overlap at {cur.start_date}"
                f" (previous segment runs through {prev.end_date})"
            )
        if cur.start_date != prev.end_date + DAY:
            raise GapError(
                f"{cur.keyword}: missing date {prev.end_date + DAY}"
                f" between segments ({prev.end_date} -> {cur.start_date})"
            )
        points.extend(cur.points)

    keyword = ordered[0].keyword
    if span is not None:
        start, end = span
        if points[0][0] > start or points[-1][0] < end:
            raise SpanError(
                f"{keyword}: assembled span {points[0][0]}..{points[-1][0]}"
                f" does not cover {start}..{end}"
            )
        points = [(d, v) for d, v in points if start <= d <= end]
    return DailySeries(keyword=keyword, points=tuple(points), scale=Scale.RAW)


def parse_stitched(raw_csv: str, keyword: str, scale: Scale = Scale.RESCALED) -> DailySeries:
    """Parse a canonical stitched CSV (`date,value`, full float precision)."""
    upper = 100.0 if scale is Scale.RAW else None
    rows = _data_rows(raw_csv, upper=upper)
    if not rows:
        raise EmptySeries(f"{keyword}: no data rows")
    for (prev, _), (cur, _) in zip(rows, rows[1:]):
        if cur != prev + DAY:
            raise NonConsecutiveDates(
                f"{keyword}: dates not consecutive at {prev} -> {cur}"
            )
    return DailySeries(keyword=keyword.lower(), points=tuple(rows), scale=scale)


def emit_daily_csv(series: DailySeries | DailySegment) -> str:
    """Canonical `date,value` emitter; floats keep full round-trip precision."""
    lines = ["date,value"]
    for d, v in series.points:
        lines.append(f"{d.isoformat()},{v!r}")
    return "\n".join(lines) + "\n"
