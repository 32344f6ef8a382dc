"""Weekly-weight rescaling of segmented daily series.

Daily export segments are each normalized to their own local 0-100 scale,
so a value in one segment is not comparable to the same value in another.
The year-long weekly export shares one scale across the whole span; the
ratio of each week's exported value to the average of the daily values
falling in that week gives a per-week weight that lifts the daily data onto
the weekly scale. Multiplying each day by its week's weight restores the
week means to the weekly values, which is what makes days from different
segments comparable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import date, timedelta

from .errors import UncoveredDate
from .ingest import DailySeries, Scale, WeeklySeries

WEEK = timedelta(days=7)


@dataclass(frozen=True)
class WeekMetrics:
    """Per-week aggregates of the daily data plus the rescaling weight.

    `avg` is sum/count (0 for an empty week). `weight` is weekly_rsv/avg,
    defaulting to 1 when avg is 0 so rescaling leaves such weeks untouched.
    """

    week_start: date
    weekly_rsv: float
    sum: float = 0.0
    count: int = 0
    avg: float = 0.0
    weight: float = 1.0


def _week_index(when: date, first_start: date, n_weeks: int) -> int:
    """Index of the half-open week [start, start+7) containing `when`."""
    offset = (when - first_start).days
    if offset < 0 or offset >= n_weeks * 7:
        raise UncoveredDate(
            f"daily date {when} outside weekly coverage"
            f" [{first_start}, {first_start + n_weeks * WEEK})"
        )
    return offset // 7


def calculate_weekly_metrics(weekly: WeeklySeries, daily: DailySeries) -> list[WeekMetrics]:
    """Aggregate the daily values into the weekly grid.

    Each daily point belongs to the unique week with
    week_start <= date < week_start + 7 days. Weeks with no daily points
    keep sum=count=avg=0.
    """
    if daily.scale is not Scale.RAW:
        raise ValueError("weekly metrics are computed from the raw daily series")
    starts = weekly.week_starts
    first = starts[0]
    sums = [0.0] * len(starts)
    counts = [0] * len(starts)
    for when, value in daily.points:
        idx = _week_index(when, first, len(starts))
        sums[idx] += value
        counts[idx] += 1
    metrics = []
    for (start, weekly_rsv), total, count in zip(weekly.points, sums, counts):
        avg = total / count if count > 0 else 0.0
        metrics.append(
            WeekMetrics(week_start=start, weekly_rsv=weekly_rsv, sum=total, count=count, avg=avg)
        )
    return metrics


def calculate_weights(metrics: list[WeekMetrics]) -> list[WeekMetrics]:
    """Populate each week's weight: weekly_rsv/avg, or 1 when avg is 0.

    The avg == 0 comparison is exact on purpose: avg is a quotient of sums
    of parsed values and is exactly zero iff the week had no data or only
    zeros.
    """
    return [
        replace(m, weight=1.0 if m.avg == 0.0 else m.weekly_rsv / m.avg)
        for m in metrics
    ]


def rescale_values(daily: DailySeries, metrics: list[WeekMetrics]) -> DailySeries:
    """Multiply each daily value by its week's weight.

    Weeks whose daily average is zero pass their values through unchanged.
    The result keeps the same dates and is marked Rescaled; values may
    exceed 100 because weights can exceed 1.
    """
    if daily.scale is not Scale.RAW:
        raise ValueError("rescaling applies to the raw daily series")
    first = metrics[0].week_start
    n_weeks = len(metrics)
    points = []
    for when, value in daily.points:
        week = metrics[_week_index(when, first, n_weeks)]
        points.append((when, value if week.avg == 0.0 else value * week.weight))
    return DailySeries(keyword=daily.keyword, points=tuple(points), scale=Scale.RESCALED)


def stitch_series(daily: DailySeries, weekly: WeeklySeries) -> tuple[DailySeries, list[WeekMetrics]]:
    """Full rescaling pass: metrics, weights, rescale."""
    metrics = calculate_weights(calculate_weekly_metrics(weekly, daily))
    return rescale_values(daily, metrics), metrics
