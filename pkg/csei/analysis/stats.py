"""
Pearson correlation with a two-sided t-test p-value.

The p-value is the regularized incomplete beta I_x(dof/2, 1/2) with
x = 1 - r^2, evaluated by a modified Lentz continued fraction.
"""

import math
from typing import Sequence

import numpy as np

from ..models import CorrelationMatrix, CorrelationResult, FeatureMatrix
from ..utils import (
    DegenerateCorrelationError,
    DimensionMismatchError,
    SeriesTooShortError,
    get_logger,
)

logger = get_logger(__name__)

FPMIN = 1e-300
EPSILON = 1e-12
MAX_ITERATIONS = 10000


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < FPMIN:
        d = FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, MAX_ITERATIONS + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < EPSILON:
            return h
    logger.warning(f"Incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")
    return h


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """
    Regularized incomplete beta function I_x(a, b).

    Args:
        a: First shape parameter (> 0)
        b: Second shape parameter (> 0)
        x: Upper limit in [0, 1]

    Returns:
        I_x(a, b) in [0, 1]
    """
    if a <= 0 or b <= 0:
        raise ValueError("shape parameters must be positive")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    front = math.exp(
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    if x < (a + 1.0) / (a + b + 2.0):
        value = front * _beta_continued_fraction(a, b, x) / a
    else:
        value = 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b
    return min(1.0, max(0.0, value))


def pearson(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    """
    Pearson correlation and its two-sided p-value (Student t, n - 2 dof).

    Args:
        x: First sample
        y: Second sample, same length

    Returns:
        CorrelationResult (p = 0 when |r| = 1)

    Raises:
        DimensionMismatchError: If the lengths differ
        SeriesTooShortError: If there are fewer than 3 pairs
        DegenerateCorrelationError: If either input is constant
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) != len(y):
        raise DimensionMismatchError(f"pearson inputs differ in length ({len(x)} vs {len(y)})")
    n = len(x)
    if n < 3:
        raise SeriesTooShortError(f"pearson needs at least 3 pairs, got {n}")

    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateCorrelationError("correlation is undefined for a constant input")

    r = float(dx @ dy) / math.sqrt(sxx * syy)
    r = min(1.0, max(-1.0, r))
    dof = n - 2
    if abs(r) == 1.0:
        return CorrelationResult(r=r, p_value=0.0, n=n, t_statistic=math.copysign(math.inf, r))

    t = r * math.sqrt(dof / (1.0 - r * r))
    p = regularized_incomplete_beta(dof / 2.0, 0.5, 1.0 - r * r)
    return CorrelationResult(r=r, p_value=p, n=n, t_statistic=t)


def correlation_matrix(matrix: FeatureMatrix) -> CorrelationMatrix:
    """
    Pairwise Pearson r and p over every column pair.

    Cells involving a constant column are left undefined (NaN) and flagged.

    Args:
        matrix: Columns to correlate (>= 3 rows)

    Returns:
        CorrelationMatrix
    """
    if matrix.n_rows < 3:
        raise SeriesTooShortError(f"correlation matrix needs at least 3 rows, got {matrix.n_rows}")

    k = len(matrix.columns)
    r = np.full((k, k), np.nan)
    p = np.full((k, k), np.nan)
    defined = np.zeros((k, k), dtype=bool)
    for i in range(k):
        for j in range(i, k):
            try:
                result = pearson(matrix.values[:, i], matrix.values[:, j])
            except DegenerateCorrelationError:
                continue
            r[i, j] = r[j, i] = result.r
            p[i, j] = p[j, i] = result.p_value
            defined[i, j] = defined[j, i] = True

    undefined = [c for c, ok in zip(matrix.columns, defined.diagonal()) if not ok]
    if undefined:
        logger.warning(f"Correlation undefined for constant column(s): {', '.join(undefined)}")
    return CorrelationMatrix(columns=tuple(matrix.columns), r=r, p=p, defined=defined)
