"""
End-to-end tests for the pipeline stages on the synthetic dump.
"""

import math
from datetime import date, timedelta
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from csei.artifacts import read_json
from csei.config import RunConfig
from csei.index import load_weights
from csei.pipeline import LOCK_FILE, Pipeline, run_pipeline
from csei.utils import (
    ConfigurationError,
    DegenerateDataError,
    InputFileError,
    OutputLockedError,
    StageError,
)

from .conftest import EXPECTED_SURVIVORS, N_DAYS

BUILD_ARTIFACTS = (
    "scored_posts.csv",
    "features.csv",
    "outliers.csv",
    "normalized.csv",
    "weights.csv",
    "index.csv",
    "contributions.csv",
    "groups.csv",
)
ANALYSIS_ARTIFACTS = (
    "deltas.csv",
    "smoothed.csv",
    "cumulative.csv",
    "extrema.csv",
    "event_stats.csv",
    "correlation_matrix.csv",
    "gaps.csv",
    "emotion_contributions.csv",
    "summary.md",
)


def with_settings(run_settings: dict, **sections: dict) -> RunConfig:
    """RunConfig from the fixture settings with extra sections merged in."""
    data = {key: dict(value) for key, value in run_settings.items()}
    for name, values in sections.items():
        data.setdefault(name, {}).update(values)
    return RunConfig.model_validate(data)


def artifact_bytes(output_dir: Path) -> dict[str, bytes]:
    """Contents of every CSV and Markdown artifact."""
    return {
        p.name: p.read_bytes()
        for p in sorted(output_dir.iterdir())
        if p.suffix in (".csv", ".md")
    }


class TestFullRun:
    """Test all three stages together."""

    def test_stage_results(self, run_config):
        """Test the ledger, retained days and index range."""
        results = run_pipeline(run_config)

        ingest = results["ingest"]
        assert ingest.survivors == EXPECTED_SURVIVORS
        assert ingest.ledger.balanced

        build = results["build"]
        assert build.posts_scored == EXPECTED_SURVIVORS
        assert build.daily_features.n_rows == N_DAYS
        # ceil(0.005 * 140) days flagged by the forest
        assert build.days_removed == 1
        assert build.weights.total == pytest.approx(1.0, abs=1e-9)
        assert np.all((build.index.values >= 0.0) & (build.index.values <= 1.0))

        analysis = results["analyze"]
        assert len(analysis.delta) == N_DAYS - 2
        assert len(analysis.smoothed) == len(analysis.delta) - 6
        assert analysis.correlation is not None
        assert analysis.correlation_matrix is not None
        assert analysis.correlation_matrix.columns[-1] == "csei"
        assert analysis.emotion_shares

    def test_artifacts_written(self, run_config):
        """Test every stage artifact exists and the lock is released."""
        run_pipeline(run_config)
        output_dir = Path(run_config.paths.output_dir)

        for name in ("clean_posts.csv", *BUILD_ARTIFACTS, *ANALYSIS_ARTIFACTS, "metadata.json"):
            assert (output_dir / name).is_file(), name
        assert not (output_dir / LOCK_FILE).exists()
        assert not (output_dir / "plots").exists()

    def test_metadata(self, run_config):
        """Test the merged metadata document."""
        run_pipeline(run_config)

        metadata = read_json(Path(run_config.paths.output_dir) / "metadata.json")

        assert set(metadata["stages"]) == {"ingest", "build", "analyze"}
        assert set(metadata["timestamps"]) == {"ingest", "build", "analyze"}
        assert metadata["stages"]["ingest"]["survivors"] == EXPECTED_SURVIVORS
        assert metadata["stages"]["ingest"]["balanced"] is True
        assert metadata["stages"]["build"]["outliers"]["removed"] == 1
        assert metadata["config"]["outliers"]["n_trees"] == 25
        assert "eigensolver" in metadata["assumptions"]
        assert "title and selftext" in metadata["assumptions"]["scoring_text"]

    def test_index_file_layout(self, run_config):
        """Test index.csv has one sorted row per retained day."""
        results = run_pipeline(run_config)

        frame = pd.read_csv(Path(run_config.paths.output_dir) / "index.csv")

        assert list(frame.columns) == ["date", "csei"]
        assert len(frame) == results["build"].retained.n_rows
        assert list(frame["date"]) == sorted(frame["date"])

    def test_deterministic(self, run_config):
        """Test a rerun reproduces every artifact byte for byte."""
        output_dir = Path(run_config.paths.output_dir)
        run_pipeline(run_config)
        first = artifact_bytes(output_dir)
        first_metadata = read_json(output_dir / "metadata.json")

        run_pipeline(run_config)
        second = artifact_bytes(output_dir)
        second_metadata = read_json(output_dir / "metadata.json")

        assert first == second
        first_metadata.pop("timestamps")
        second_metadata.pop("timestamps")
        assert first_metadata == second_metadata


class TestBuildVariants:
    """Test configuration variants of the build stage."""

    def test_loaded_weights(self, run_settings):
        """Test weight_mode=load echoes the reference vector."""
        config = with_settings(run_settings, index={"weight_mode": "load"})

        results = run_pipeline(config, ["ingest", "build"])

        weights = pd.read_csv(
            Path(config.paths.output_dir) / "weights.csv", float_precision="round_trip"
        )
        reference = load_weights()
        assert list(weights["feature"]) == list(reference.features)
        assert list(weights["weight"]) == list(reference.weights)
        assert results["build"].weights.source == "loaded"
        assert results["build"].weights.total == pytest.approx(1.0001, abs=1e-12)

    def test_outliers_disabled(self, run_settings):
        """Test no days are dropped and no outliers.csv is written."""
        config = with_settings(run_settings, outliers={"enabled": False})

        results = run_pipeline(config, ["ingest", "build"])

        assert results["build"].days_removed == 0
        assert results["build"].outliers is None
        assert not (Path(config.paths.output_dir) / "outliers.csv").exists()

    def test_post_granularity(self, run_settings):
        """Test post-level outlier removal before aggregation."""
        config = with_settings(run_settings, outliers={"granularity": "post"})

        results = run_pipeline(config, ["ingest", "build"])

        report = results["build"].outliers
        assert report.granularity == "post"
        assert len(report.labels) == EXPECTED_SURVIVORS
        assert report.n_removed == math.ceil(0.005 * EXPECTED_SURVIVORS)
        assert results["build"].days_removed == 0
        frame = pd.read_csv(Path(config.paths.output_dir) / "outliers.csv")
        assert frame.columns[0] == "id"

    def test_without_external_scores(self, run_settings):
        """Test every post falls back to neutral defaults."""
        settings = {**run_settings, "paths": {**run_settings["paths"], "external_scores": None}}
        config = RunConfig.model_validate(settings)

        results = run_pipeline(config, ["ingest", "build"])

        flags = results["build"].scoring_flags
        assert len(flags.missing_external) == EXPECTED_SURVIVORS
        assert list(results["build"].daily_features.column("neutral")) == [1.0] * N_DAYS


class TestAnalyzeOnly:
    """Test the analyze stage on a hand-written index."""

    @pytest.fixture
    def index_csv(self, tmp_path):
        """Thirty days of a smooth index starting 2020-03-01."""
        dates = [date(2020, 3, 1) + timedelta(days=i) for i in range(30)]
        values = 0.5 + 0.3 * np.sin(np.arange(30) / 3.0)
        path = tmp_path / "hand_index.csv"
        pd.DataFrame({"date": [d.isoformat() for d in dates], "csei": values}).to_csv(
            path, index=False
        )
        return path

    def test_resume_from_index_file(self, tmp_path, index_csv):
        """Test analyze runs with no earlier stage artifacts."""
        config = RunConfig.model_validate(
            {"paths": {"index_file": str(index_csv), "output_dir": str(tmp_path / "out")}}
        )

        results = run_pipeline(config, ["analyze"])

        analysis = results["analyze"]
        output_dir = tmp_path / "out"
        assert len(analysis.delta) == 29
        assert len(analysis.smoothed) == 23
        assert analysis.indicator.n_events == 1
        assert analysis.correlation_matrix is None
        assert any("normalized.csv not found" in note for note in analysis.notes)
        assert (output_dir / "deltas.csv").is_file()
        assert (output_dir / "summary.md").is_file()
        assert not (output_dir / "correlation_matrix.csv").exists()
        assert set(read_json(output_dir / "metadata.json")["stages"]) == {"analyze"}

    def test_index_too_short(self, tmp_path):
        """Test a window longer than the delta series fails the stage."""
        path = tmp_path / "short.csv"
        path.write_text("date,csei\n2020-03-01,0.1\n2020-03-02,0.2\n", encoding="utf-8")
        config = RunConfig.model_validate(
            {"paths": {"index_file": str(path), "output_dir": str(tmp_path / "out")}}
        )

        with pytest.raises(StageError) as exc_info:
            run_pipeline(config, ["analyze"])

        assert exc_info.value.stage == "analyze"


class TestFailures:
    """Test stage attribution and the output lock."""

    def test_locked_output(self, run_config):
        """Test an existing lock file stops the run."""
        output_dir = Path(run_config.paths.output_dir)
        output_dir.mkdir(parents=True)
        (output_dir / LOCK_FILE).write_text("123\n", encoding="utf-8")

        with pytest.raises(OutputLockedError):
            run_pipeline(run_config)

        assert (output_dir / LOCK_FILE).exists()
        assert not (output_dir / "clean_posts.csv").exists()

    def test_unknown_stage(self, run_config):
        """Test stage names are checked before anything runs."""
        with pytest.raises(ConfigurationError):
            Pipeline(run_config).run(["ingest", "publish"])

    def test_missing_posts(self, run_settings, tmp_path):
        """Test a missing dump fails ingest with the path attached."""
        settings = {**run_settings, "paths": {**run_settings["paths"],
                                              "posts": str(tmp_path / "absent.csv")}}  # fmt: skip
        config = RunConfig.model_validate(settings)

        with pytest.raises(StageError) as exc_info:
            run_pipeline(config, ["ingest"])

        error = exc_info.value
        assert error.stage == "ingest"
        assert isinstance(error.cause, InputFileError)
        assert error.to_record()["path"] == str(tmp_path / "absent.csv")
        assert not (Path(config.paths.output_dir) / LOCK_FILE).exists()

    def test_build_without_ingest(self, run_config):
        """Test build needs the clean-posts artifact."""
        with pytest.raises(StageError) as exc_info:
            run_pipeline(run_config, ["build"])

        assert exc_info.value.stage == "build"
        assert isinstance(exc_info.value.cause, InputFileError)

    def test_build_with_no_survivors(self, run_settings):
        """Test a window that drops every post fails build as degenerate data."""
        config = with_settings(run_settings, ingest={"min_date": "2019-01-01",
                                                     "max_date": "2019-01-31"})  # fmt: skip
        pipeline = Pipeline(config)

        assert pipeline.run(["ingest"])["ingest"].ledger.survivors == 0
        with pytest.raises(StageError) as exc_info:
            pipeline.run(["build"])

        assert exc_info.value.stage == "build"
        assert isinstance(exc_info.value.cause, DegenerateDataError)
