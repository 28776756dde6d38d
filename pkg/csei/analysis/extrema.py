"""
Peak and valley detection on the smoothed index.

A peak at t beats every in-bounds neighbour within d samples and rises at
least p above the minimum of the window [t - d, t + d]. Valleys are peaks
of the negated series.
"""

from typing import Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..models import Extremum, ExtremaReport
from ..utils import get_logger

logger = get_logger(__name__)

DEFAULT_PROMINENCE_FACTOR = 0.5


def _windows(values: np.ndarray, distance: int, fill: float) -> np.ndarray:
    padded = np.pad(values, distance, constant_values=fill)
    return sliding_window_view(padded, 2 * distance + 1)


def _suppress(order: np.ndarray, distance: int) -> list[int]:
    kept: list[int] = []
    for t in order:
        if all(abs(int(t) - k) >= distance for k in kept):
            kept.append(int(t))
    return sorted(kept)


def _peaks(values: np.ndarray, distance: int, prominence: float) -> list[tuple[int, float]]:
    n = len(values)
    if n < 3:
        return []

    windows = _windows(values, distance, -np.inf)
    neighbours = np.delete(windows, distance, axis=1).max(axis=1)
    candidate = values > neighbours
    candidate[[0, n - 1]] = False

    heights = values - _windows(values, distance, np.inf).min(axis=1)
    candidate &= heights >= prominence

    index = np.flatnonzero(candidate)
    # highest first, ties to the lower index
    order = index[np.lexsort((index, -values[index]))]
    return [(t, float(heights[t])) for t in _suppress(order, distance)]


def _check(distance: int, prominence: float) -> None:
    if distance < 1:
        raise ValueError("distance must be at least 1")
    if prominence < 0:
        raise ValueError("prominence must be non-negative")


def find_peaks(values: np.ndarray, distance: int, prominence: float) -> list[Extremum]:
    """
    Find local maxima.

    Args:
        values: Series (typically the smoothed delta series)
        distance: Neighbourhood d in samples (>= 1)
        prominence: Minimum height p above the window minimum (>= 0)

    Returns:
        Peaks in index order
    """
    _check(distance, prominence)
    values = np.asarray(values, dtype=float)
    return [
        Extremum(index=t, value=float(values[t]), prominence=height)
        for t, height in _peaks(values, distance, prominence)
    ]


def find_valleys(values: np.ndarray, distance: int, prominence: float) -> list[Extremum]:
    """
    Find local minima (peaks of the negated series).

    Reported values are taken from the original series.

    Args:
        values: Series
        distance: Neighbourhood d in samples (>= 1)
        prominence: Minimum depth p below the window maximum (>= 0)

    Returns:
        Valleys in index order
    """
    _check(distance, prominence)
    values = np.asarray(values, dtype=float)
    return [
        Extremum(index=t, value=float(values[t]), prominence=height)
        for t, height in _peaks(-values, distance, prominence)
    ]


def default_prominence(values: np.ndarray) -> float:
    """Half the population standard deviation of the series."""
    values = np.asarray(values, dtype=float)
    if len(values) == 0:
        return 0.0
    return DEFAULT_PROMINENCE_FACTOR * float(np.std(values))


def detect_extrema(
    values: np.ndarray,
    distance: int,
    prominence: Optional[float] = None,
    window: int = 1,
) -> ExtremaReport:
    """
    Detect peaks and valleys and echo the parameters used.

    Args:
        values: Smoothed series
        distance: Neighbourhood d
        prominence: Threshold p (0.5 x std of the series when None)
        window: Smoothing window that produced the series (recorded only)

    Returns:
        ExtremaReport
    """
    values = np.asarray(values, dtype=float)
    if prominence is None:
        prominence = default_prominence(values)
    peaks = find_peaks(values, distance, prominence)
    valleys = find_valleys(values, distance, prominence)
    logger.info(
        f"Found {len(peaks)} peak(s) and {len(valleys)} valley(s) "
        f"(d={distance}, p={prominence:.4g})"
    )
    return ExtremaReport(
        peaks=peaks,
        valleys=valleys,
        window=window,
        distance=distance,
        prominence=prominence,
    )
