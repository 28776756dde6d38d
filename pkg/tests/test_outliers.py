"""
Tests for the isolation forest, contamination cut and PC score filter.
"""

import numpy as np
import pytest

from csei.config import OutlierConfig
from csei.outliers import (
    IsolationForest,
    OutlierDetector,
    anomaly_scores,
    average_path_length,
    contamination_count,
    contamination_filter,
    detect_outliers,
    fit_isolation_forest,
    pc_score_filter,
    threshold_flags,
)
from csei.utils import DimensionMismatchError, FitError


def planted_cluster(seed: int, size: int = 100) -> np.ndarray:
    """A tight 2-D Gaussian cluster plus one point at 10 sigma (last row)."""
    rng = np.random.default_rng(seed)
    cluster = rng.normal(0.0, 1.0, size=(size, 2))
    return np.vstack([cluster, [[10.0, 10.0]]])


class TestAveragePathLength:
    """Test c(n)."""

    def test_small_n(self):
        """Test the defined base cases."""
        assert average_path_length(0) == 0.0
        assert average_path_length(1) == 0.0
        assert average_path_length(2) == 1.0

    def test_formula(self):
        """Test c(n) = 2 H(n-1) - 2 (n-1) / n with H(i) = ln i + gamma."""
        expected = 2.0 * (np.log(255) + 0.5772156649) - 2.0 * 255 / 256

        assert average_path_length(256) == pytest.approx(expected)


class TestIsolationForest:
    """Test forest fitting and scoring."""

    def test_deterministic(self):
        """Test the same seed grows the same trees."""
        values = planted_cluster(0)

        first = fit_isolation_forest(values, n_trees=10, subsample_size=64, seed=5)
        second = fit_isolation_forest(values, n_trees=10, subsample_size=64, seed=5)

        for a, b in zip(first.trees, second.trees):
            assert np.array_equal(a.feature, b.feature)
            assert np.array_equal(a.threshold, b.threshold)
        assert np.array_equal(first.score_samples(values), second.score_samples(values))

    def test_seed_changes_trees(self):
        """Test a different seed gives different scores."""
        values = planted_cluster(0)

        first = fit_isolation_forest(values, n_trees=10, subsample_size=64, seed=5)
        second = fit_isolation_forest(values, n_trees=10, subsample_size=64, seed=6)

        assert not np.array_equal(first.score_samples(values), second.score_samples(values))

    def test_identical_rows(self):
        """Test two identical rows cannot be split and score equally."""
        values = np.array([[1.0, 2.0], [1.0, 2.0]])

        forest = fit_isolation_forest(values, n_trees=5, subsample_size=2, seed=1)
        scores = forest.score_samples(values)

        assert all(tree.n_nodes == 1 for tree in forest.trees)
        assert scores[0] == scores[1]
        assert scores[0] == pytest.approx(0.5)

    def test_score_formula(self):
        """Test s = 2^(-E[h] / c(psi)) and that E[h] = c(psi) gives 0.5."""
        values = planted_cluster(1)
        forest = fit_isolation_forest(values, n_trees=20, subsample_size=32, seed=3)

        depth = forest.mean_path_lengths(values)
        scale = average_path_length(32)

        assert forest.score_samples(values) == pytest.approx(2.0 ** (-depth / scale))
        assert 2.0 ** (-scale / scale) == 0.5

    def test_depth_limit(self):
        """Test trees never exceed ceil(log2(psi))."""
        forest = fit_isolation_forest(planted_cluster(2), n_trees=10, subsample_size=50, seed=0)

        assert forest.max_depth == 6
        assert all(tree.max_depth <= 6 for tree in forest.trees)

    def test_planted_outlier_scores_highest(self):
        """Test the 10-sigma point tops 200 inliers for at least 95 of 100 seeds."""
        hits = 0
        for seed in range(100):
            values = planted_cluster(seed, size=200)
            # Default forest; psi is capped at the row count as in the detector
            forest = fit_isolation_forest(values, subsample_size=len(values), seed=seed)
            scores = anomaly_scores(forest, values)
            hits += int(np.argmax(scores) == len(values) - 1)

        assert forest.n_trees == 100
        assert hits >= 95

    def test_too_few_rows(self):
        """Test fitting needs two rows."""
        with pytest.raises(FitError):
            fit_isolation_forest(np.ones((1, 3)), subsample_size=2)

    def test_subsample_larger_than_rows(self):
        """Test psi may not exceed the row count."""
        with pytest.raises(FitError):
            IsolationForest(subsample_size=10).fit(np.ones((5, 2)))

    def test_non_finite(self):
        """Test NaN input is rejected."""
        values = planted_cluster(0)
        values[3, 1] = np.nan

        with pytest.raises(FitError):
            fit_isolation_forest(values, n_trees=2, subsample_size=16)

    def test_dimension_mismatch(self):
        """Test scoring with a different column count."""
        forest = fit_isolation_forest(planted_cluster(0), n_trees=2, subsample_size=16)

        with pytest.raises(DimensionMismatchError):
            forest.score_samples(np.ones((3, 3)))


class TestContamination:
    """Test the contamination cut."""

    def test_count(self):
        """Test ceil(rate * n) without floating-point drift."""
        assert contamination_count(1000, 0.005) == 5
        assert contamination_count(140, 0.005) == 1
        assert contamination_count(10, 0.0) == 0

    def test_flags_exactly_five(self):
        """Test n = 1000 at 0.005 flags exactly 5 rows, the highest scores."""
        scores = np.random.default_rng(0).uniform(size=1000)

        flags = contamination_filter(scores, 0.005)

        assert flags.sum() == 5
        assert set(np.flatnonzero(flags)) == set(np.argsort(-scores)[:5])

    def test_zero_rate(self):
        """Test rate 0 flags nothing."""
        assert not contamination_filter(np.arange(10.0), 0.0).any()

    def test_ties_to_lower_index(self):
        """Test equal scores flag the lowest indices."""
        flags = contamination_filter(np.full(4, 0.6), 0.5)

        assert list(flags) == [True, True, False, False]

    def test_invalid_rate(self):
        """Test rates outside [0, 1)."""
        with pytest.raises(ValueError):
            contamination_filter(np.arange(3.0), 1.0)


class TestPCScoreFilter:
    """Test the PC1/PC2 filter."""

    @pytest.mark.parametrize(
        "pc1,pc2,expected",
        [(24.0, 8.0, True), (30.0, 8.0, False), (24.0, 7.0, False), (24.0, 7.5, True),
         (25.0, 8.0, False)],
    )  # fmt: skip
    def test_thresholds(self, pc1, pc2, expected):
        """Test PC1 < 25 and PC2 >= 7.5 together."""
        flags = threshold_flags(np.array([pc1]), np.array([pc2]), 25.0, 7.5)

        assert bool(flags[0]) is expected

    def test_rank_zero(self):
        """Test equal rows produce no flags and a note."""
        projection = pc_score_filter(np.ones((5, 3)))

        assert not projection.flags.any()
        assert projection.notes

    def test_projection_is_centered(self):
        """Test scores are projections of mean-centered rows."""
        rng = np.random.default_rng(4)
        values = rng.normal(size=(40, 3)) * [10.0, 3.0, 1.0]

        projection = pc_score_filter(values)

        assert projection.pc1.mean() == pytest.approx(0.0, abs=1e-9)
        assert projection.pc2.mean() == pytest.approx(0.0, abs=1e-9)
        assert projection.pc1.var() >= projection.pc2.var()
        assert sum(projection.explained_variance) <= 1.0 + 1e-12


class TestOutlierDetector:
    """Test the combined outlier stage."""

    def test_forest_only(self):
        """Test contamination flags with the PC filter disabled."""
        values = planted_cluster(0)
        labels = [f"r{i}" for i in range(len(values))]

        report = OutlierDetector(n_trees=30, contamination=0.01, pc_filter=False).detect(
            values, labels
        )

        assert report.n_removed == 2
        assert report.removed_indices[-1] == len(values) - 1
        assert not report.pc_flags.any()
        assert np.isnan(report.pc1).all()
        assert "PC score filter disabled" in report.notes
        assert "subsample_size capped at 101 rows" in report.notes

    def test_removed_is_union(self):
        """Test removal is the union of both detectors."""
        values = planted_cluster(3)

        report = OutlierDetector(
            n_trees=20, contamination=0.01, pc1_max=1e9, pc2_min=-1e9
        ).detect(values, [str(i) for i in range(len(values))])

        assert report.pc_flags.all()
        assert report.n_removed == len(values)

    def test_pc_skipped_for_two_rows(self):
        """Test the PC filter is skipped with fewer than three rows."""
        report = OutlierDetector(n_trees=5, contamination=0.0).detect(
            np.array([[0.0, 1.0], [2.0, 3.0]]), ["a", "b"]
        )

        assert report.n_removed == 0
        assert any("skipped" in note for note in report.notes)

    def test_from_config(self):
        """Test the config section drives the detector."""
        config = OutlierConfig(n_trees=10, contamination=0.02, seed=9, pc_filter=False)
        values = planted_cluster(5)

        report = detect_outliers(values, [str(i) for i in range(len(values))], config)
        again = detect_outliers(values, [str(i) for i in range(len(values))], config)

        assert report.n_removed == 3
        assert np.array_equal(report.anomaly_scores, again.anomaly_scores)
        assert report.granularity == "daily"
