"""Threshold graphs and their network statistics.

Correlation frames become undirected simple graphs (edge iff dcor >= theta,
inclusive so exact-boundary correlations count). Per frame we report the
edge density 2E/(K(K-1)) and two clustering statistics that coincide on
vertex-transitive graphs but differ in general:

* clustering_global: sum of per-vertex triangle counts over the total
  number of connected triples, i.e. 3*triangles / paths-of-length-2.
* clustering_avg_local: mean over vertices of triangles(v)/pairs(v), with
  vertices of degree < 2 contributing 0.

Both are computed with integer triangle/triple counts and converted to
float in a single exact division, so results match enumeration oracles
digit for digit.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from datetime import date
from fractions import Fraction

import numpy as np

from . import kernels
from .correlate import CorrelationFrame
from .errors import EmptyPeriod, ThetaOutOfRange


@dataclass(eq=False)
class GraphFrame:
    """Dated binary adjacency matrix at one threshold; no self-loops."""

    label_date: date
    window_days: int
    threshold: float
    keywords: tuple[str, ...]
    adjacency: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class MetricPoint:
    label_date: date
    window_days: int
    threshold: float
    edge_count: int
    density: float
    clustering_global: float
    clustering_avg_local: float


def threshold_adjacency(frame: CorrelationFrame, theta: float) -> GraphFrame:
    """Binary adjacency: edge iff dcor >= theta; diagonal forced to 0."""
    if not 0.0 < theta < 1.0:
        raise ThetaOutOfRange(f"threshold {theta} not in (0, 1)")
    adjacency = (frame.matrix >= theta).astype(np.uint8)
    np.fill_diagonal(adjacency, 0)
    return GraphFrame(
        label_date=frame.label_date,
        window_days=frame.window_days,
        threshold=theta,
        keywords=frame.keywords,
        adjacency=adjacency,
    )


def network_density(g: GraphFrame) -> float:
    """Existing edges over the K(K-1)/2 possible ones."""
    k = g.adjacency.shape[0]
    if k < 2:
        raise ValueError("density needs at least 2 vertices")
    edges = int(g.adjacency.sum()) // 2
    return 2 * edges / (k * (k - 1))


def _degree_pairs(degrees: np.ndarray) -> np.ndarray:
    return degrees * (degrees - 1) // 2


def clustering_global(g: GraphFrame) -> float:
    """Total triangles-at-vertices over total connected triples; 0 if no triples."""
    lam = kernels.triangle_counts(g.adjacency)
    tau = _degree_pairs(g.adjacency.sum(axis=1, dtype=np.int64))
    total_tau = int(tau.sum())
    if total_tau == 0:
        return 0.0
    return int(lam.sum()) / total_tau


def clustering_avg_local(g: GraphFrame) -> float:
    """Mean per-vertex triangle ratio; degree < 2 vertices count as 0."""
    lam = kernels.triangle_counts(g.adjacency)
    tau = _degree_pairs(g.adjacency.sum(axis=1, dtype=np.int64))
    acc = Fraction(0)
    for l, t in zip(lam.tolist(), tau.tolist()):
        if t > 0:
            acc += Fraction(l, t)
    return float(acc / len(lam))


def frame_metrics(g: GraphFrame) -> MetricPoint:
    return MetricPoint(
        label_date=g.label_date,
        window_days=g.window_days,
        threshold=g.threshold,
        edge_count=int(g.adjacency.sum()) // 2,
        density=network_density(g),
        clustering_global=clustering_global(g),
        clustering_avg_local=clustering_avg_local(g),
    )


def _frames_in_period(
    frames: list[GraphFrame], period: tuple[date, date]
) -> list[GraphFrame]:
    thresholds = {f.threshold for f in frames}
    if len(thresholds) > 1:
        raise ValueError(f"frames mix thresholds: {sorted(thresholds)}")
    start, end = period
    selected = [f for f in frames if start <= f.label_date <= end]
    if not selected:
        raise EmptyPeriod(f"no frames labeled within {start}..{end}")
    return selected


def pair_persistence(
    frames: list[GraphFrame], period: tuple[date, date]
) -> list[tuple[tuple[str, str], int]]:
    """How many frames in the period contain each keyword pair as an edge.

    Exhaustive over all pairs, sorted by descending count with lexicographic
    tie-breaking on the pair tokens.
    """
    selected = _frames_in_period(frames, period)
    keywords = selected[0].keywords
    counts = np.zeros_like(selected[0].adjacency, dtype=np.int64)
    for f in selected:
        counts += f.adjacency
    rows = []
    for i in range(len(keywords)):
        for j in range(i + 1, len(keywords)):
            rows.append(((keywords[i], keywords[j]), int(counts[i, j])))
    rows.sort(key=lambda r: (-r[1], r[0]))
    return rows


def triad_persistence(
    frames: list[GraphFrame], period: tuple[date, date]
) -> list[tuple[tuple[str, str, str], int]]:
    """How many frames in the period contain each keyword triple as a triangle."""
    selected = _frames_in_period(frames, period)
    keywords = selected[0].keywords
    stack = np.stack([f.adjacency for f in selected]).astype(bool)
    k = len(keywords)
    rows = []
    for i in range(k):
        for j in range(i + 1, k):
            ij = stack[:, i, j]
            for m in range(j + 1, k):
                count = int(np.sum(ij & stack[:, i, m] & stack[:, j, m]))
                rows.append(((keywords[i], keywords[j], keywords[m]), count))
    rows.sort(key=lambda r: (-r[1], r[0]))
    return rows


def emit_metrics_csv(metrics: list[MetricPoint]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        [
            "label_date",
            "window_days",
            "threshold",
            "edge_count",
            "density",
            "clustering_global",
            "clustering_avg_local",
        ]
    )
    for m in metrics:
        writer.writerow(
            [
                m.label_date.isoformat(),
                m.window_days,
                f"{m.threshold:g}",
                m.edge_count,
                repr(m.density),
                repr(m.clustering_global),
                repr(m.clustering_avg_local),
            ]
        )
    return out.getvalue()


def parse_metrics_csv(text: str) -> list[MetricPoint]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        return []
    points = []
    for row in reader:
        if not row:
            continue
        points.append(
            MetricPoint(
                label_date=date.fromisoformat(row[0]),
                window_days=int(row[1]),
                threshold=float(row[2]),
                edge_count=int(row[3]),
                density=float(row[4]),
                clustering_global=float(row[5]),
                clustering_avg_local=float(row[6]),
            )
        )
    return points


def emit_persistence_csv(
    rows: list[tuple[tuple[date, date], float, tuple[str, ...], int]]
) -> str:
    """Rows of (period, threshold, members, count) as the persistence report."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["period_start", "period_end", "threshold", "members", "count"])
    for (start, end), threshold, members, count in rows:
        writer.writerow(
            [start.isoformat(), end.isoformat(), f"{threshold:g}", "|".join(members), count]
        )
    return out.getvalue()
