"""
Isolation forest anomaly scoring.

Trees are stored as flat node arrays so that scoring walks all rows of a
matrix through a tree at once.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..utils import DimensionMismatchError, FitError, get_logger

logger = get_logger(__name__)

EULER_GAMMA = 0.5772156649
LEAF = -1


def harmonic_number(i: float) -> float:
    """Approximate H(i) as ln(i) + Euler's constant."""
    return math.log(i) + EULER_GAMMA


def average_path_length(n: int) -> float:
    """
    Average unsuccessful-search path length c(n) of a binary search tree.

    Args:
        n: Number of points

    Returns:
        c(n); 0 for n <= 1, 1 for n = 2
    """
    if n <= 1:
        return 0.0
    if n == 2:
        return 1.0
    return 2.0 * harmonic_number(n - 1) - 2.0 * (n - 1) / n


@dataclass
class IsolationTree:
    """One isolation tree in flat-array form; leaves have feature == -1."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    size: np.ndarray
    depth: np.ndarray

    @property
    def n_nodes(self) -> int:
        """Number of nodes."""
        return len(self.feature)

    @property
    def max_depth(self) -> int:
        """Depth of the deepest node."""
        return int(self.depth.max())

    def path_lengths(self, values: np.ndarray) -> np.ndarray:
        """
        Path length of every row, adjusted by c(size) at the reached leaf.

        Args:
            values: Rows x features

        Returns:
            Path length per row
        """
        node = np.zeros(len(values), dtype=np.int64)
        rows = np.arange(len(values))
        active = self.feature[node] != LEAF
        while np.any(active):
            idx = rows[active]
            current = node[idx]
            go_left = values[idx, self.feature[current]] < self.threshold[current]
            node[idx] = np.where(go_left, self.left[current], self.right[current])
            active = self.feature[node] != LEAF
        adjustment = np.array([average_path_length(int(s)) for s in self.size[node]])
        return self.depth[node] + adjustment


def grow_tree(sample: np.ndarray, rng: np.random.Generator, max_depth: int) -> IsolationTree:
    """
    Grow one isolation tree on a subsample.

    Splits pick a feature uniformly among those not constant at the node
    and a threshold uniformly between that feature's node min and max. A
    node with a single row, no varying feature, or at the depth limit is a
    leaf.

    Args:
        sample: Subsample rows x features
        rng: Tree-local random generator
        max_depth: Depth limit

    Returns:
        IsolationTree
    """
    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    size: list[int] = []
    depth: list[int] = []

    def new_node(n_rows: int, level: int) -> int:
        feature.append(LEAF)
        threshold.append(0.0)
        left.append(LEAF)
        right.append(LEAF)
        size.append(n_rows)
        depth.append(level)
        return len(feature) - 1

    stack = [(np.arange(len(sample)), 0, new_node(len(sample), 0))]
    while stack:
        rows, level, node = stack.pop()
        if level >= max_depth or len(rows) <= 1:
            continue
        block = sample[rows]
        low, high = block.min(axis=0), block.max(axis=0)
        candidates = np.flatnonzero(high > low)
        if candidates.size == 0:
            continue
        f = int(candidates[rng.integers(candidates.size)])
        split = float(rng.uniform(low[f], high[f]))
        goes_left = block[:, f] < split
        if goes_left.all() or not goes_left.any():
            continue

        feature[node] = f
        threshold[node] = split
        left_rows, right_rows = rows[goes_left], rows[~goes_left]
        left[node] = new_node(len(left_rows), level + 1)
        right[node] = new_node(len(right_rows), level + 1)
        stack.append((right_rows, level + 1, right[node]))
        stack.append((left_rows, level + 1, left[node]))

    return IsolationTree(
        feature=np.array(feature, dtype=np.int64),
        threshold=np.array(threshold, dtype=float),
        left=np.array(left, dtype=np.int64),
        right=np.array(right, dtype=np.int64),
        size=np.array(size, dtype=np.int64),
        depth=np.array(depth, dtype=float),
    )


class IsolationForest:
    """
    Seeded isolation forest.

    Each tree draws its own generator from the master seed by tree index,
    so the forest is identical across runs for a fixed seed.
    """

    def __init__(self, n_trees: int = 100, subsample_size: int = 256, seed: int = 42):
        """
        Initialize forest parameters.

        Args:
            n_trees: Number of trees (>= 1)
            subsample_size: Rows per tree (>= 2, <= fit row count)
            seed: Master seed
        """
        if n_trees < 1:
            raise FitError("n_trees must be at least 1")
        if subsample_size < 2:
            raise FitError("subsample_size must be at least 2")
        self.n_trees = n_trees
        self.subsample_size = subsample_size
        self.seed = seed
        self.trees: list[IsolationTree] = []
        self.n_features = 0

    @property
    def max_depth(self) -> int:
        """Depth limit ceil(log2(subsample_size))."""
        return math.ceil(math.log2(self.subsample_size))

    @property
    def is_fitted(self) -> bool:
        """Check if trees have been grown."""
        return bool(self.trees)

    def fit(self, values: np.ndarray) -> "IsolationForest":
        """
        Grow the trees.

        Args:
            values: Rows x features

        Returns:
            self

        Raises:
            FitError: If there are fewer than 2 rows or subsample_size exceeds them
        """
        values = np.asarray(values, dtype=float)
        if values.ndim != 2 or len(values) < 2:
            raise FitError("isolation forest needs at least 2 rows")
        if self.subsample_size > len(values):
            raise FitError(
                f"subsample_size {self.subsample_size} exceeds the {len(values)} available rows"
            )
        if not np.all(np.isfinite(values)):
            raise FitError("isolation forest input contains non-finite values")

        self.n_features = values.shape[1]
        seeds = np.random.SeedSequence(self.seed).spawn(self.n_trees)
        self.trees = []
        for child in seeds:
            rng = np.random.default_rng(child)
            rows = rng.choice(len(values), size=self.subsample_size, replace=False)
            self.trees.append(grow_tree(values[rows], rng, self.max_depth))
        logger.debug(
            f"Fitted {self.n_trees} trees on {len(values)} rows "
            f"(subsample {self.subsample_size}, depth limit {self.max_depth})"
        )
        return self

    def mean_path_lengths(self, values: np.ndarray) -> np.ndarray:
        """E[h(x)] over trees for every row."""
        values = np.asarray(values, dtype=float)
        if not self.is_fitted:
            raise FitError("isolation forest is not fitted")
        if values.ndim != 2 or values.shape[1] != self.n_features:
            raise DimensionMismatchError(
                f"expected {self.n_features} columns, got "
                f"{values.shape[1] if values.ndim == 2 else values.ndim}"
            )
        total = np.zeros(len(values))
        for tree in self.trees:
            total += tree.path_lengths(values)
        return total / len(self.trees)

    def score_samples(self, values: np.ndarray) -> np.ndarray:
        """
        Anomaly score 2^(-E[h(x)] / c(subsample_size)) per row.

        Args:
            values: Rows x features (same columns as at fit time)

        Returns:
            Scores in (0, 1]; higher is more anomalous
        """
        scale = average_path_length(self.subsample_size)
        return np.power(2.0, -self.mean_path_lengths(values) / scale)


def fit_isolation_forest(
    values: np.ndarray, n_trees: int = 100, subsample_size: int = 256, seed: int = 42
) -> IsolationForest:
    """
    Fit an isolation forest.

    Args:
        values: Rows x features
        n_trees: Number of trees
        subsample_size: Rows per tree
        seed: Master seed

    Returns:
        Fitted IsolationForest
    """
    return IsolationForest(n_trees=n_trees, subsample_size=subsample_size, seed=seed).fit(values)


def anomaly_scores(forest: IsolationForest, values: np.ndarray) -> np.ndarray:
    """Score rows with a fitted forest."""
    return forest.score_samples(values)
