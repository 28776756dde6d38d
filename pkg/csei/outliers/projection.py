"""
Principal-component score filter.

Projects mean-centered rows of the raw (un-normalized) matrix onto the
first two principal axes and flags rows with a low PC1 and high PC2 score.
"""

from dataclasses import dataclass, field

import numpy as np

from ..index.linalg import principal_axes
from ..utils import DegenerateDataError, get_logger

logger = get_logger(__name__)

DEFAULT_PC1_MAX = 25.0
DEFAULT_PC2_MIN = 7.5


@dataclass
class PCProjection:
    """PC1/PC2 scores, filter flags and projection statistics."""

    pc1: np.ndarray
    pc2: np.ndarray
    flags: np.ndarray
    explained_variance: tuple[float, float] = (0.0, 0.0)
    notes: list[str] = field(default_factory=list)


def threshold_flags(
    pc1: np.ndarray, pc2: np.ndarray, pc1_max: float, pc2_min: float
) -> np.ndarray:
    """Flag rows with PC1 < pc1_max and PC2 >= pc2_min."""
    return (np.asarray(pc1) < pc1_max) & (np.asarray(pc2) >= pc2_min)


def pc_score_filter(
    values: np.ndarray, pc1_max: float = DEFAULT_PC1_MAX, pc2_min: float = DEFAULT_PC2_MIN
) -> PCProjection:
    """
    Flag rows by their first two principal-component scores.

    Each axis is oriented so its largest-magnitude component is positive.

    Args:
        values: Raw rows x columns (>= 3 rows, >= 2 columns)
        pc1_max: Flag when PC1 score is below this
        pc2_min: ...and PC2 score is at least this

    Returns:
        PCProjection

    Raises:
        DegenerateDataError: If the matrix is too small
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.shape[0] < 3 or values.shape[1] < 2:
        raise DegenerateDataError("PC score filter needs at least 3 rows and 2 columns")

    n = len(values)
    axes = principal_axes(values)
    if axes.total_variance <= 0:
        note = "PC score filter skipped: all rows are equal (rank 0)"
        logger.warning(note)
        zeros = np.zeros(n)
        return PCProjection(
            pc1=zeros, pc2=zeros.copy(), flags=np.zeros(n, dtype=bool), notes=[note]
        )

    scores = axes.project(values, components=2)
    pc1, pc2 = scores[:, 0], scores[:, 1]
    ratio = axes.explained_variance_ratio
    flags = threshold_flags(pc1, pc2, pc1_max, pc2_min)
    logger.info(
        f"PC filter flagged {int(flags.sum())}/{n} rows "
        f"(PC1 {pc1.min():.3g}..{pc1.max():.3g}, "
        f"PC2 {pc2.min():.3g}..{pc2.max():.3g})"
    )
    return PCProjection(
        pc1=pc1,
        pc2=pc2,
        flags=flags,
        explained_variance=(float(ratio[0]), float(ratio[1])),
    )
