"""
Tests for normalization, principal axes, weights and the composite index.
"""

from datetime import date, timedelta

import numpy as np
import pytest

from csei.index import (
    compute_index,
    contribution_decomposition,
    contribution_shares,
    covariance,
    derive_weights,
    jacobi_eigh,
    load_weights,
    minmax_normalize,
    orient_axis,
    pc1_loadings,
    principal_axes,
    weights_from_loadings,
)
from csei.models import FEATURE_COLUMNS, FeatureMatrix, WeightVector
from csei.utils import DegenerateDataError, DimensionMismatchError, InputFileError, SchemaError

REFERENCE_TOTAL = 1.0001


def dated(values, columns=FEATURE_COLUMNS) -> FeatureMatrix:
    """Matrix with consecutive dates from 2020-03-01."""
    values = np.asarray(values, dtype=float)
    dates = [date(2020, 3, 1) + timedelta(days=i) for i in range(len(values))]
    return FeatureMatrix(dates=dates, values=values, columns=tuple(columns))


def leading_eigenpair(matrix: np.ndarray) -> tuple[float, np.ndarray]:
    """
    Largest eigenvalue from the characteristic polynomial roots and its
    eigenvector by inverse iteration.
    """
    roots = np.roots(np.poly(matrix))
    value = float(np.max(roots.real))
    shifted = matrix - (value + 1e-9 * max(1.0, abs(value))) * np.eye(len(matrix))
    vector = np.ones(len(matrix))
    for _ in range(50):
        vector = np.linalg.solve(shifted, vector)
        vector /= np.linalg.norm(vector)
    return value, vector


class TestNormalize:
    """Test min-max normalization."""

    def test_scaling(self):
        """Test columns map onto [0, 1]."""
        normalized, stats = minmax_normalize(dated([[1, 10], [3, 20], [2, 15]], ("a", "b")))

        assert list(normalized.column("a")) == pytest.approx([0.0, 1.0, 0.5])
        assert list(normalized.column("b")) == pytest.approx([0.0, 1.0, 0.5])
        assert list(stats.minimum) == [1.0, 10.0]
        assert list(stats.maximum) == [3.0, 20.0]

    def test_constant_column(self):
        """Test a constant column becomes 0 and is reported."""
        normalized, stats = minmax_normalize(dated([[1, 10], [3, 10], [2, 10]], ("a", "b")))

        assert list(normalized.column("b")) == [0.0, 0.0, 0.0]
        assert stats.constant_columns == ["b"]

    def test_range(self):
        """Test random matrices stay in [0, 1] and hit both ends."""
        rng = np.random.default_rng(0)
        normalized, _ = minmax_normalize(dated(rng.normal(size=(50, 13)) * 100))

        assert normalized.values.min() == 0.0
        assert normalized.values.max() == 1.0
        assert np.all(normalized.values.min(axis=0) == 0.0)

    def test_empty(self):
        """Test an empty matrix cannot be normalized."""
        with pytest.raises(DegenerateDataError):
            minmax_normalize(FeatureMatrix.empty())


class TestLinalg:
    """Test the Jacobi eigensolver and principal axes."""

    def test_jacobi_matches_eigvalsh(self):
        """Test eigenvalues of random symmetric matrices."""
        rng = np.random.default_rng(1)
        for _ in range(10):
            a = rng.normal(size=(6, 6))
            symmetric = a + a.T

            values, vectors = jacobi_eigh(symmetric)

            assert values == pytest.approx(np.sort(np.linalg.eigvalsh(symmetric))[::-1], abs=1e-9)
            assert symmetric @ vectors == pytest.approx(vectors * values, abs=1e-9)
            assert vectors.T @ vectors == pytest.approx(np.eye(6), abs=1e-12)

    def test_jacobi_rejects_asymmetric(self):
        """Test a non-symmetric matrix is rejected."""
        with pytest.raises(ValueError):
            jacobi_eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_orient_axis(self):
        """Test the largest-magnitude component becomes positive."""
        assert list(orient_axis(np.array([0.2, -0.9, 0.1]))) == [-0.2, 0.9, -0.1]
        assert list(orient_axis(np.array([0.2, 0.9]))) == [0.2, 0.9]

    def test_covariance_denominator(self):
        """Test the n - 1 denominator."""
        values = np.array([[1.0, 2.0], [3.0, 6.0]])

        assert covariance(values) == pytest.approx(np.array([[2.0, 4.0], [4.0, 8.0]]))

    def test_pc1_against_characteristic_polynomial(self):
        """Test PC1 against roots of det(C - lambda I) and inverse iteration."""
        rng = np.random.default_rng(2)
        for _ in range(20):
            values = rng.uniform(size=(20, 4)) * rng.uniform(0.5, 2.0, size=4)
            cov = covariance(values)
            expected_value, expected_vector = leading_eigenpair(cov)

            axes = principal_axes(values)
            loadings, ratio = pc1_loadings(values)

            assert axes.eigenvalues[0] == pytest.approx(expected_value, abs=1e-6)
            assert abs(float(loadings @ expected_vector)) == pytest.approx(1.0, abs=1e-6)
            assert ratio == pytest.approx(expected_value / np.trace(cov), abs=1e-6)
            assert loadings[np.argmax(np.abs(loadings))] > 0

    def test_pc1_degenerate(self):
        """Test a constant matrix has no PC1."""
        with pytest.raises(DegenerateDataError):
            pc1_loadings(np.ones((5, 3)))


class TestWeights:
    """Test weight derivation and loading."""

    def test_simplex(self):
        """Test derived weights are non-negative and sum to 1 for any shape."""
        rng = np.random.default_rng(3)
        for _ in range(100):
            n_rows = int(rng.integers(5, 31))
            n_columns = int(rng.integers(2, 14))
            columns = tuple(f"f{j}" for j in range(n_columns))
            raw = dated(rng.uniform(size=(n_rows, n_columns)), columns)
            normalized, _ = minmax_normalize(raw)

            weights = derive_weights(normalized)

            assert weights.features == columns
            assert np.all(weights.weights >= 0)
            assert weights.total == pytest.approx(1.0, abs=1e-9)
            assert weights.source == "derived"
            assert 0.0 < weights.explained_variance_ratio <= 1.0

    def test_sign_flip_invariance(self):
        """Test negated loadings give the same weights."""
        loadings = np.array([0.5, -0.3, 0.2, -0.1])
        names = ("a", "b", "c", "d")

        assert np.array_equal(
            weights_from_loadings(loadings, names).weights,
            weights_from_loadings(-loadings, names).weights,
        )

    def test_from_loadings(self):
        """Test w = |l| / sum |l|."""
        weights = weights_from_loadings([0.5, -0.3, 0.2], ("a", "b", "c"))

        assert list(weights.weights) == pytest.approx([0.5, 0.3, 0.2])
        assert list(weights.loadings) == [0.5, -0.3, 0.2]

    def test_zero_loadings(self):
        """Test all-zero loadings are degenerate."""
        with pytest.raises(DegenerateDataError):
            weights_from_loadings([0.0, 0.0], ("a", "b"))

    def test_reference_weights(self):
        """Test the bundled reference vector is used verbatim."""
        weights = load_weights()

        assert weights.features == FEATURE_COLUMNS
        assert weights.source == "loaded"
        assert weights.as_mapping()["compound_sentiment"] == 0.1398
        assert weights.as_mapping()["domain_diversity"] == 0.1761
        assert weights.total == pytest.approx(REFERENCE_TOTAL, abs=1e-12)
        assert np.isnan(weights.loadings).all()

    def test_load_reorders(self, tmp_path):
        """Test rows are taken in the requested feature order."""
        path = tmp_path / "weights.csv"
        path.write_text("feature,weight,loading\nb,0.7,-0.9\na,0.3,0.4\n", encoding="utf-8")

        weights = load_weights(path, ("a", "b"))

        assert list(weights.weights) == [0.3, 0.7]
        assert list(weights.loadings) == [0.4, -0.9]

    def test_load_missing_feature(self, tmp_path):
        """Test a weight file must cover every feature."""
        path = tmp_path / "weights.csv"
        path.write_text("feature,weight,loading\na,1.0,\n", encoding="utf-8")

        with pytest.raises(SchemaError) as exc_info:
            load_weights(path, ("a", "b"))

        assert exc_info.value.missing == ["b"]

    def test_load_negative(self, tmp_path):
        """Test negative weights are rejected."""
        path = tmp_path / "weights.csv"
        path.write_text("feature,weight,loading\na,1.2,\nb,-0.2,\n", encoding="utf-8")

        with pytest.raises(SchemaError):
            load_weights(path, ("a", "b"))

    def test_load_comment_lines(self, tmp_path):
        """Test leading comment lines are skipped."""
        path = tmp_path / "weights.csv"
        path.write_text(
            "# rounded to four decimals\nfeature,weight,loading\na,0.25,\nb,0.75,\n",
            encoding="utf-8",
        )

        weights = load_weights(path, ("a", "b"))

        assert list(weights.weights) == [0.25, 0.75]

    def test_load_missing_file(self, tmp_path):
        """Test a missing weight file."""
        with pytest.raises(InputFileError):
            load_weights(tmp_path / "absent.csv")


class TestCompositeIndex:
    """Test index evaluation and contributions."""

    def test_reference_all_ones(self):
        """Test an all-ones row sums the reference weights."""
        index = compute_index(dated(np.ones((1, 13))), load_weights())

        assert index.values[0] == pytest.approx(REFERENCE_TOTAL, abs=1e-12)

    def test_reference_unit_rows(self):
        """Test each unit row reproduces its coefficient."""
        weights = load_weights()

        index = compute_index(dated(np.eye(13)), weights)

        assert index.values == pytest.approx(weights.weights, abs=1e-15)

    def test_derived_index_in_unit_interval(self):
        """Test derived-weight index values stay in [0, 1]."""
        rng = np.random.default_rng(4)
        normalized, _ = minmax_normalize(dated(rng.uniform(size=(40, 13))))

        index = compute_index(normalized, derive_weights(normalized))

        assert np.all((index.values >= 0.0) & (index.values <= 1.0))
        assert index.dates == normalized.dates
        assert index.weights_used is not None

    def test_affine_rescaling_invariance(self):
        """Test rescaling raw columns by a positive factor and a shift leaves the index."""
        rng = np.random.default_rng(5)
        for _ in range(20):
            raw = rng.uniform(size=(40, 13))
            scale = rng.uniform(0.1, 100.0, size=13)
            shift = rng.uniform(-50.0, 50.0, size=13)
            normalized, _ = minmax_normalize(dated(raw))
            rescaled, _ = minmax_normalize(dated(raw * scale + shift))

            expected = compute_index(normalized, derive_weights(normalized))
            actual = compute_index(rescaled, derive_weights(rescaled))

            assert rescaled.values == pytest.approx(normalized.values, abs=1e-9)
            assert actual.values == pytest.approx(expected.values, abs=1e-8)

    def test_dimension_mismatch(self):
        """Test a weight count that differs from the columns."""
        weights = WeightVector(features=("a",), weights=[1.0], loadings=[1.0])

        with pytest.raises(DimensionMismatchError):
            compute_index(dated([[0.5, 0.5]], ("a", "b")), weights)

    def test_weights_aligned_by_name(self):
        """Test weights given in another order are matched by name."""
        weights = WeightVector(features=("b", "a"), weights=[0.75, 0.25], loadings=[0.0, 0.0])

        index = compute_index(dated([[0.4, 0.8]], ("a", "b")), weights)

        assert index.values[0] == pytest.approx(0.7)

    def test_contributions(self):
        """Test per-feature terms w(i) * x(i) and their group sums."""
        weights = WeightVector(features=("a", "b"), weights=[0.25, 0.75], loadings=[0.0, 0.0])
        normalized = dated([[0.4, 0.8]], ("a", "b"))

        parts = contribution_decomposition(normalized, weights, groups={"g": ("a", "b"),
                                                                        "h": ("a",)})  # fmt: skip

        assert list(parts.features.values[0]) == pytest.approx([0.1, 0.6])
        assert parts.total[0] == pytest.approx(0.7)
        assert parts.groups.columns == ("g", "h")
        assert list(parts.groups.values[0]) == pytest.approx([0.7, 0.1])
        assert parts.total == pytest.approx(compute_index(normalized, weights).values)

    def test_default_groups_partition_features(self):
        """Test the reporting groups add up to the index."""
        rng = np.random.default_rng(5)
        normalized, _ = minmax_normalize(dated(rng.uniform(size=(10, 13))))
        weights = derive_weights(normalized)

        parts = contribution_decomposition(normalized, weights)

        assert parts.groups.values.sum(axis=1) == pytest.approx(parts.total)

    def test_shares(self):
        """Test shares of the whole-range total."""
        contributions = dated([[0.1, 0.3], [0.1, 0.5]], ("a", "b"))

        shares = contribution_shares(contributions, ["a", "b"])

        assert shares == pytest.approx({"a": 0.2, "b": 0.8})

    def test_shares_zero_total(self):
        """Test an all-zero index has zero shares."""
        shares = contribution_shares(dated([[0.0, 0.0]], ("a", "b")), ["a"])

        assert shares == {"a": 0.0}
