"""
Symmetric eigendecomposition and principal axes.

The cyclic Jacobi method is used for the small covariance matrices of the
pipeline (at most a few dozen columns).
"""

from dataclasses import dataclass

import numpy as np

from ..utils import DegenerateDataError, FitError, get_logger

logger = get_logger(__name__)

JACOBI_TOLERANCE = 1e-12
MAX_SWEEPS = 100


def jacobi_eigh(
    matrix: np.ndarray, tolerance: float = JACOBI_TOLERANCE, max_sweeps: int = MAX_SWEEPS
) -> tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Iterates until the off-diagonal Frobenius norm falls below
    tolerance * max(1, ||A||_F).

    Args:
        matrix: Symmetric square matrix
        tolerance: Relative convergence threshold
        max_sweeps: Sweep limit

    Returns:
        (eigenvalues in descending order, eigenvectors as matching columns)

    Raises:
        ValueError: If the matrix is not square and symmetric
        FitError: If the sweep limit is reached
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * scale):
        raise ValueError("matrix must be symmetric")

    n = a.shape[0]
    v = np.eye(n)
    threshold = tolerance * max(1.0, float(np.linalg.norm(a)))

    for sweep in range(max_sweeps + 1):
        off = np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off <= threshold:
            logger.debug(f"Jacobi converged after {sweep} sweep(s)")
            break
        if sweep == max_sweeps:
            raise FitError(f"Jacobi eigendecomposition did not converge in {max_sweeps} sweeps")
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0

                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    eigenvalues = np.diag(a).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]


def orient_axis(vector: np.ndarray) -> np.ndarray:
    """
    Flip a vector so its largest-magnitude component is positive.

    Args:
        vector: Axis vector

    Returns:
        Oriented copy (first index wins magnitude ties)
    """
    vector = np.asarray(vector, dtype=float)
    if vector.size and vector[int(np.argmax(np.abs(vector)))] < 0:
        return -vector
    return vector.copy()


def covariance(values: np.ndarray) -> np.ndarray:
    """
    Column covariance with the n-1 denominator.

    Args:
        values: Rows x columns, at least 2 rows

    Returns:
        Columns x columns covariance matrix
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.shape[0] < 2:
        raise DegenerateDataError("covariance needs a 2-D matrix with at least 2 rows")
    return np.atleast_2d(np.cov(values, rowvar=False, ddof=1))


@dataclass
class PrincipalAxes:
    """Oriented principal axes of a data matrix."""

    eigenvalues: np.ndarray
    axes: np.ndarray
    mean: np.ndarray

    @property
    def total_variance(self) -> float:
        """Sum of the eigenvalues (trace of the covariance)."""
        return float(np.sum(self.eigenvalues))

    @property
    def explained_variance_ratio(self) -> np.ndarray:
        """Share of the total variance per axis (zeros for zero variance)."""
        total = self.total_variance
        if total <= 0:
            return np.zeros_like(self.eigenvalues)
        return self.eigenvalues / total

    def project(self, values: np.ndarray, components: int = 2) -> np.ndarray:
        """Scores of mean-centered rows on the leading axes."""
        centered = np.asarray(values, dtype=float) - self.mean
        return centered @ self.axes[:, :components]


def principal_axes(values: np.ndarray) -> PrincipalAxes:
    """
    Principal axes of the column covariance, each oriented positive.

    Args:
        values: Rows x columns

    Returns:
        PrincipalAxes with eigenvalues in descending order
    """
    values = np.asarray(values, dtype=float)
    eigenvalues, vectors = jacobi_eigh(covariance(values))
    # Round-off can leave tiny negative eigenvalues on a PSD matrix
    eigenvalues = np.maximum(eigenvalues, 0.0)
    axes = np.column_stack([orient_axis(vectors[:, k]) for k in range(vectors.shape[1])])
    return PrincipalAxes(eigenvalues=eigenvalues, axes=axes, mean=values.mean(axis=0))
