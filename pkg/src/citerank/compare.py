"""Rank tables and paired-metric statistics.

All log transforms in this module use base 10, so correlation inputs,
scatter coordinates, and fitted ellipse parameters live on the same axes.
Correlations are computed over the intersection of the two vectors;
journals missing from either side, and non-positive values under the log
transform, are omitted and reported rather than shifted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ComparisonError
from .metrics import MetricVector


class RankRow(NamedTuple):
    journal: str
    score: float
    rank: float


@dataclass(frozen=True)
class RankTable:
    """Journals ordered by score (descending, ties by id) with explicit ranks.

    tie_policy "min" gives tied groups the smallest position (integer
    ranks); "average" gives them the mean of their positions.
    """

    metric_name: str
    rows: tuple[RankRow, ...]
    tie_policy: str


@dataclass(frozen=True)
class EllipseParams:
    """Equal-density contour of a fitted bivariate normal."""

    center: tuple[float, float]
    semi_axes: tuple[float, float]  # (major, minor)
    orientation_radians: float  # angle of the major axis, in (-pi/2, pi/2]
    coverage: float
    degenerate: bool = False

    def __post_init__(self):
        if not 0.0 < self.coverage < 1.0:
            raise ComparisonError(f"coverage must be in (0, 1), got {self.coverage}")
        major, minor = self.semi_axes
        if not major >= minor >= 0.0:
            raise ComparisonError(f"semi-axes must satisfy major >= minor >= 0, got {self.semi_axes}")


@dataclass(frozen=True)
class ComparisonReport:
    """Paired-metric statistics for one (x, y) metric pair.

    `n` is the size of the x/y intersection (the Spearman sample);
    `omitted` lists journals missing from either vector plus those dropped
    from the log-based statistics for non-positive values.  Concentration
    shares and rank gaps are computed on the full x vector.
    """

    pearson_log_rho: float
    spearman_rho: float
    n: int
    omitted: tuple[str, ...]
    concentration: tuple[tuple[int, float], ...]
    rank_gaps: tuple[float, ...]
    ellipse: EllipseParams


def _display_order(scores: dict[str, float]) -> list[tuple[str, float]]:
    return sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))


def _ranks_for_sorted(values: Sequence[float], tie_policy: str) -> list[float]:
    """Ranks for values already sorted descending; position 1 = largest."""
    n = len(values)
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[j + 1] == values[i]:
            j += 1
        if tie_policy == "average":
            shared = (i + 1 + j + 1) / 2.0
        else:
            shared = float(i + 1)
        for k in range(i, j + 1):
            ranks[k] = shared
        i = j + 1
    return ranks


def average_ranks(values: np.ndarray) -> np.ndarray:
    """Descending average ranks (largest value gets rank 1; ties share the mean)."""
    order = np.argsort(-values, kind="stable")
    sorted_vals = values[order]
    shared = _ranks_for_sorted(sorted_vals, "average")
    ranks = np.empty(len(values), dtype=float)
    ranks[order] = shared
    return ranks


def rank(scores: MetricVector, tie_policy: str = "min") -> RankTable:
    """Rank journals by score, largest first; rank 1 = largest score."""
    if tie_policy not in ("average", "min"):
        raise ComparisonError(f"tie_policy must be 'average' or 'min', got {tie_policy!r}")
    if not scores.scores:
        raise ComparisonError("cannot rank an empty metric vector")
    ordered = _display_order(scores.scores)
    values = [v for _, v in ordered]
    ranks = _ranks_for_sorted(values, tie_policy)
    if tie_policy == "min":
        rows = tuple(
            RankRow(jid, value, int(r)) for (jid, value), r in zip(ordered, ranks)
        )
    else:
        rows = tuple(RankRow(jid, value, r) for (jid, value), r in zip(ordered, ranks))
    return RankTable(metric_name=scores.metric_name, rows=rows, tie_policy=tie_policy)


def _paired(
    x: MetricVector, y: MetricVector
) -> tuple[list[str], np.ndarray, np.ndarray, list[str]]:
    """Intersection of the two vectors in sorted id order, plus missing ids."""
    common = sorted(set(x.scores) & set(y.scores))
    missing = sorted((set(x.scores) ^ set(y.scores)))
    xv = np.array([x.scores[jid] for jid in common], dtype=float)
    yv = np.array([y.scores[jid] for jid in common], dtype=float)
    return common, xv, yv, missing


def _pearson(xv: np.ndarray, yv: np.ndarray, what: str) -> float:
    xc = xv - xv.mean()
    yc = yv - yv.mean()
    sx2 = float((xc * xc).sum())
    sy2 = float((yc * yc).sum())
    if sx2 == 0.0 or sy2 == 0.0:
        raise ComparisonError(f"zero variance in {what}; correlation undefined")
    rho = float((xc * yc).sum()) / math.sqrt(sx2 * sy2)
    return max(-1.0, min(1.0, rho))


def spearman(x: MetricVector, y: MetricVector) -> float:
    """Pearson correlation of average-policy ranks over the common journals.

    Requires at least 3 journals present in both vectors.
    """
    common, xv, yv, _ = _paired(x, y)
    if len(common) < 3:
        raise ComparisonError(
            f"spearman needs >= 3 common journals, got {len(common)}"
        )
    rx = average_ranks(xv)
    ry = average_ranks(yv)
    return _pearson(rx, ry, "ranks (all scores tied)")


def positive_log_pairs(
    x: MetricVector, y: MetricVector
) -> tuple[list[str], np.ndarray, np.ndarray, list[str]]:
    """Common journals with strictly positive values on both sides, log10-transformed.

    Returns (ids, log10 x, log10 y, omitted) where omitted covers ids
    missing from either vector or dropped for a non-positive value.
    """
    common, xv, yv, missing = _paired(x, y)
    positive = (xv > 0.0) & (yv > 0.0)
    nonpositive = [jid for jid, ok in zip(common, positive) if not ok]
    ids = [jid for jid, ok in zip(common, positive) if ok]
    omitted = sorted(missing + nonpositive)
    return ids, np.log10(xv[positive]), np.log10(yv[positive]), omitted


def pearson_log(x: MetricVector, y: MetricVector) -> float:
    """Pearson correlation of (log10 x, log10 y) over positive common pairs."""
    ids, lx, ly, _ = positive_log_pairs(x, y)
    if len(ids) < 3:
        raise ComparisonError(
            f"pearson_log needs >= 3 positive common pairs, got {len(ids)}"
        )
    return _pearson(lx, ly, "log-transformed scores")


def concentration(
    scores: MetricVector, ks: Sequence[int]
) -> list[tuple[int, float]]:
    """share(k) = sum of the top-k scores / sum of all scores.

    k larger than the vector covers the whole vector (share 1.0).
    """
    values = sorted(scores.scores.values(), reverse=True)
    total = sum(values)
    if total <= 0.0:
        raise ComparisonError("concentration undefined: total score is 0")
    shares: list[tuple[int, float]] = []
    for k in ks:
        if k < 1:
            raise ComparisonError(f"concentration k must be >= 1, got {k}")
        shares.append((k, sum(values[: min(k, len(values))]) / total))
    return shares


def rank_gaps(scores: MetricVector) -> list[float]:
    """Differences between consecutively ranked scores, largest pair first."""
    if len(scores.scores) < 2:
        raise ComparisonError("rank_gaps needs at least 2 journals")
    values = sorted(scores.scores.values(), reverse=True)
    return [values[i] - values[i + 1] for i in range(len(values) - 1)]


# Relative eigenvalue floor below which the fitted covariance counts as singular.
_DEGENERATE_RATIO = 1e-12


def density_ellipse(
    x: MetricVector, y: MetricVector, coverage: float = 0.95
) -> EllipseParams:
    """Equal-density ellipse of a bivariate normal fitted to (log10 x, log10 y).

    Semi-axes are sqrt(eigenvalue * c) of the sample covariance with
    c = -2 ln(1 - coverage), the chi-square(2) quantile at `coverage`.
    Collinear data yields a degenerate ellipse with minor axis 0.
    """
    if not 0.0 < coverage < 1.0:
        raise ComparisonError(f"coverage must be in (0, 1), got {coverage}")
    ids, lx, ly, _ = positive_log_pairs(x, y)
    if len(ids) < 3:
        raise ComparisonError(
            f"density_ellipse needs >= 3 positive common pairs, got {len(ids)}"
        )
    center = (float(lx.mean()), float(ly.mean()))
    cov = np.cov(lx, ly, ddof=1)
    eigenvalues, eigenvectors = np.linalg.eigh(cov)
    minor_val, major_val = (max(float(v), 0.0) for v in eigenvalues)
    degenerate = major_val <= 0.0 or minor_val <= major_val * _DEGENERATE_RATIO
    if degenerate:
        minor_val = 0.0
    scale = -2.0 * math.log(1.0 - coverage)
    major, minor = math.sqrt(major_val * scale), math.sqrt(minor_val * scale)
    vx, vy = float(eigenvectors[0, 1]), float(eigenvectors[1, 1])
    if vx < 0.0 or (vx == 0.0 and vy < 0.0):
        vx, vy = -vx, -vy
    orientation = math.atan2(vy, vx)
    return EllipseParams(
        center=center,
        semi_axes=(major, minor),
        orientation_radians=orientation,
        coverage=coverage,
        degenerate=degenerate,
    )


def compare_metrics(
    x: MetricVector,
    y: MetricVector,
    ks: Sequence[int] = (1, 5, 10),
    coverage: float = 0.95,
) -> ComparisonReport:
    """Full paired report: correlations, concentration and gaps on x, ellipse."""
    common, _, _, _ = _paired(x, y)
    spearman_rho = spearman(x, y)
    ids, _, _, omitted = positive_log_pairs(x, y)
    pearson_rho = pearson_log(x, y)
    ellipse = density_ellipse(x, y, coverage)
    return ComparisonReport(
        pearson_log_rho=pearson_rho,
        spearman_rho=spearman_rho,
        n=len(common),
        omitted=tuple(omitted),
        concentration=tuple(concentration(x, ks)),
        rank_gaps=tuple(rank_gaps(x)),
        ellipse=ellipse,
    )
