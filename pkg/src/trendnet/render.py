"""Deterministic SVG line charts of metric time series, plus JSON reports.

Charts are emitted as plain SVG 1.1 text with a fixed 1200x500 viewbox:
one polyline per threshold (fixed palette, ascending threshold order),
dashed vertical markers at event dates colored by category, month ticks on
the x axis and a [0, 1] y axis. Identical inputs yield byte-identical
output, so rendered files can serve as goldens.
"""

from __future__ import annotations

import json
from datetime import date

from .errors import EmptySeries
from .netstat import MetricPoint
from .timeline import EventRecord, JoinedEvent, join_events

WIDTH = 1200
HEIGHT = 500
MARGIN_LEFT = 60.0
MARGIN_RIGHT = 170.0
MARGIN_TOP = 40.0
MARGIN_BOTTOM = 55.0

PLOT_W = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
PLOT_H = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

# One stroke per threshold, assigned in ascending threshold order.
SERIES_PALETTE = ("#1f77b4", "#2ca02c", "#d62728", "#9467bd")

MONTHS = ("Jan", "Feb", "Mar", "Apr", "May", "Jun",
          "Jul", "Aug", "Sep", "Oct", "Nov", "Dec")

METRIC_FIELDS = {
    "density": ("density", "network density"),
    "clustering": ("clustering_global", "clustering coefficient"),
}


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _month_ticks(first: date, last: date) -> list[date]:
    tick = date(first.year, first.month, 1)
    if tick < first:
        tick = date(tick.year + 1, 1, 1) if tick.month == 12 else date(tick.year, tick.month + 1, 1)
    ticks = []
    while tick <= last:
        ticks.append(tick)
        tick = date(tick.year + 1, 1, 1) if tick.month == 12 else date(tick.year, tick.month + 1, 1)
    return ticks


def render_metric_chart(
    metrics: list[MetricPoint],
    events: list[EventRecord],
    metric: str = "density",
) -> str:
    """SVG chart of one metric, one line per threshold, event markers dashed.

    All metric points must share a window size; `metric` selects density or
    the global clustering coefficient.
    """
    if metric not in METRIC_FIELDS:
        raise ValueError(f"metric must be one of {sorted(METRIC_FIELDS)}")
    if not metrics:
        raise EmptySeries("no metric points to render")
    windows = {m.window_days for m in metrics}
    if len(windows) > 1:
        raise ValueError(f"metric points mix window sizes: {sorted(windows)}")
    window_days = windows.pop()
    field, axis_label = METRIC_FIELDS[metric]

    by_threshold: dict[float, list[MetricPoint]] = {}
    for point in metrics:
        by_threshold.setdefault(point.threshold, []).append(point)
    thresholds = sorted(by_threshold)
    for threshold in thresholds:
        by_threshold[threshold].sort(key=lambda m: m.label_date)

    first = min(m.label_date for m in metrics)
    last = max(m.label_date for m in metrics)
    span_days = max((last - first).days, 1)

    def x_at(when: date) -> float:
        return MARGIN_LEFT + PLOT_W * (when - first).days / span_days

    def y_at(value: float) -> float:
        # single place where the y axis is inverted
        return MARGIN_TOP + PLOT_H * (1.0 - value)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'font-family="sans-serif" font-size="12px">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{_fmt(MARGIN_LEFT)}" y="22" font-size="14px">'
        f"{axis_label}, {window_days}-day window</text>",
    ]

    # y gridlines and labels at 0, 0.2, ..., 1
    for i in range(6):
        value = i / 5
        y = y_at(value)
        parts.append(
            f'<line class="grid" x1="{_fmt(MARGIN_LEFT)}" y1="{_fmt(y)}" '
            f'x2="{_fmt(MARGIN_LEFT + PLOT_W)}" y2="{_fmt(y)}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(MARGIN_LEFT - 8)}" y="{_fmt(y + 4)}" '
            f'text-anchor="end">{value:.1f}</text>'
        )

    # x month ticks
    axis_y = MARGIN_TOP + PLOT_H
    for tick in _month_ticks(first, last):
        x = x_at(tick)
        parts.append(
            f'<line class="tick" x1="{_fmt(x)}" y1="{_fmt(axis_y)}" '
            f'x2="{_fmt(x)}" y2="{_fmt(axis_y + 6)}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(axis_y + 20)}" text-anchor="middle">'
            f"{MONTHS[tick.month - 1]} {tick.year}</text>"
        )
    parts.append(
        f'<line x1="{_fmt(MARGIN_LEFT)}" y1="{_fmt(axis_y)}" '
        f'x2="{_fmt(MARGIN_LEFT + PLOT_W)}" y2="{_fmt(axis_y)}" '
        f'stroke="black" stroke-width="1"/>'
    )

    # event markers under the series lines
    for event in sorted(events, key=lambda e: (e.date, e.label)):
        if not first <= event.date <= last:
            continue
        x = x_at(event.date)
        parts.append(
            f'<line class="event" x1="{_fmt(x)}" y1="{_fmt(MARGIN_TOP)}" '
            f'x2="{_fmt(x)}" y2="{_fmt(axis_y)}" stroke="{event.color}" '
            f'stroke-width="1" stroke-dasharray="5,4"><title>'
            f"{_escape(event.date.isoformat() + ': ' + event.label)}</title></line>"
        )

    # one polyline per threshold
    for idx, threshold in enumerate(thresholds):
        color = SERIES_PALETTE[idx % len(SERIES_PALETTE)]
        coords = " ".join(
            f"{_fmt(x_at(m.label_date))},{_fmt(y_at(getattr(m, field)))}"
            for m in by_threshold[threshold]
        )
        parts.append(
            f'<polyline class="series" fill="none" stroke="{color}" '
            f'stroke-width="1.5" points="{coords}"/>'
        )

    # legend
    legend_x = MARGIN_LEFT + PLOT_W + 18
    for idx, threshold in enumerate(thresholds):
        color = SERIES_PALETTE[idx % len(SERIES_PALETTE)]
        y = MARGIN_TOP + 10 + idx * 20
        parts.append(
            f'<line class="legend" x1="{_fmt(legend_x)}" y1="{_fmt(y)}" '
            f'x2="{_fmt(legend_x + 24)}" y2="{_fmt(y)}" stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{_fmt(legend_x + 30)}" y="{_fmt(y + 4)}">threshold {threshold:g}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def metrics_report_json(
    metrics: list[MetricPoint], events: list[EventRecord] | None = None
) -> str:
    """JSON report: metric rows mirroring the metrics CSV schema, plus the
    event join when events are given."""
    body: dict = {
        "metrics": [
            {
                "label_date": m.label_date.isoformat(),
                "window_days": m.window_days,
                "threshold": m.threshold,
                "edge_count": m.edge_count,
                "density": m.density,
                "clustering_global": m.clustering_global,
                "clustering_avg_local": m.clustering_avg_local,
            }
            for m in sorted(metrics, key=lambda m: (m.threshold, m.label_date))
        ]
    }
    if events is not None:
        body["events"] = [_joined_row(j) for j in join_events(metrics, events)]
    return json.dumps(body, indent=2) + "\n"


def _joined_row(joined: JoinedEvent) -> dict:
    row = {
        "date": joined.event.date.isoformat(),
        "label": joined.event.label,
        "category": joined.event.category,
        "match": joined.match,
    }
    if joined.point is not None:
        row["label_date"] = joined.point.label_date.isoformat()
        row["threshold"] = joined.point.threshold
        row["density"] = joined.point.density
        row["clustering_global"] = joined.point.clustering_global
    return row
