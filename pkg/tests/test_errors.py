"""
Tests for error records, exit codes, helpers and the output lock.
"""

import logging
from datetime import date
from pathlib import Path

import pytest

from csei.pipeline import LOCK_FILE, OutputLock
from csei.utils import (
    ConfigurationError,
    DegenerateDataError,
    InputFileError,
    OutputLockedError,
    SchemaError,
    ScoringDataError,
    StageError,
    bundled_path,
    current_stage,
    exit_code_for,
    log_stage,
    parse_iso_date,
    resolve_input,
    setup_logger,
    stage_context,
    utc_date,
)


class TestErrorRecords:
    """Test machine-readable error records."""

    def test_input_file(self):
        """Test the path is recorded."""
        record = InputFileError("missing", path=Path("/data/posts.csv")).to_record()

        assert record == {"error": "InputFileError", "message": "missing",
                          "path": "/data/posts.csv"}  # fmt: skip

    def test_schema_missing(self):
        """Test missing columns are recorded."""
        record = SchemaError("bad header", missing=["id"]).to_record()

        assert record["missing"] == ["id"]

    def test_scoring_post_id(self):
        """Test the offending post is recorded."""
        assert ScoringDataError("negative", post_id="p1").to_record()["post_id"] == "p1"

    def test_stage_wraps_cause(self):
        """Test a stage error reports the cause with the stage attached."""
        cause = SchemaError("bad header", missing=["csei"])

        record = StageError("analyze", cause).to_record()

        assert record["error"] == "SchemaError"
        assert record["stage"] == "analyze"
        assert record["missing"] == ["csei"]

    def test_stage_wraps_builtin(self):
        """Test a non-pipeline cause is reported by class name."""
        record = StageError("build", ValueError("boom")).to_record()

        assert record == {"error": "ValueError", "message": "boom", "stage": "build"}


class TestExitCodes:
    """Test exit code mapping."""

    @pytest.mark.parametrize(
        "error,code",
        [
            (ConfigurationError("x"), 2),
            (InputFileError("x", path=Path("a")), 2),
            (StageError("ingest", InputFileError("x", path=Path("a"))), 2),
            (StageError("build", DegenerateDataError("x")), 1),
            (OutputLockedError("x", path=Path("a")), 1),
            (RuntimeError("x"), 1),
        ],
    )
    def test_mapping(self, error, code):
        """Test usage errors exit 2 and everything else exits 1."""
        assert exit_code_for(error) == code


class TestHelpers:
    """Test small helpers."""

    def test_utc_date(self):
        """Test timestamps are dated in UTC."""
        assert utc_date(1583020800) == date(2020, 3, 1)
        assert utc_date(1583020799) == date(2020, 2, 29)

    def test_parse_iso_date(self):
        """Test ISO dates with surrounding space."""
        assert parse_iso_date(" 2020-03-11 ") == date(2020, 3, 11)
        with pytest.raises(ValueError):
            parse_iso_date("03/11/2020")

    def test_resolve_input(self, tmp_path):
        """Test configured paths win over bundled files."""
        assert resolve_input(tmp_path / "x.csv", "events.csv") == tmp_path / "x.csv"
        assert resolve_input(None, "events.csv") == bundled_path("events.csv")
        assert bundled_path("events.csv").is_file()


class TestLogging:
    """Test logger setup and stage attribution."""

    def test_log_file(self, tmp_path):
        """Test records reach the log file as plain text with the stage."""
        log_file = tmp_path / "logs" / "run.log"
        logger = setup_logger(name="csei.test", log_file=log_file)

        logger.info("hello [cyan]file[/cyan]")
        with stage_context("build"):
            logger.info("inside")
        for handler in logger.handlers:
            handler.flush()

        lines = log_file.read_text(encoding="utf-8").splitlines()
        assert lines[0].endswith("[-] csei.test: hello file")
        assert lines[1].endswith("[build] csei.test: inside")
        assert logger.propagate is False

    def test_stage_context(self):
        """Test the stage is restored after the block."""
        assert current_stage() == "-"
        with stage_context("ingest"):
            assert current_stage() == "ingest"
            with stage_context("build"):
                assert current_stage() == "build"
            assert current_stage() == "ingest"
        assert current_stage() == "-"

    def test_log_stage(self, caplog):
        """Test the decorator passes results and exceptions through."""
        logger = logging.getLogger("performance_test")
        seen = []

        @log_stage("analyze", logger)
        def double(x: int) -> int:
            seen.append(current_stage())
            return 2 * x

        @log_stage("build", logger)
        def fail() -> None:
            raise ValueError("nope")

        with caplog.at_level(logging.INFO, logger="performance_test"):
            assert double(4) == 8
            with pytest.raises(ValueError):
                fail()

        assert seen == ["analyze"]
        assert current_stage() == "-"
        assert "analyze[/cyan] completed" in caplog.text
        assert "build[/red] failed" in caplog.text


class TestOutputLock:
    """Test the output directory lock."""

    def test_acquire_release(self, tmp_path):
        """Test the lock file exists only while held."""
        output_dir = tmp_path / "out"

        with OutputLock(output_dir) as lock:
            assert lock.path == output_dir / LOCK_FILE
            assert lock.path.is_file()

        assert not (output_dir / LOCK_FILE).exists()

    def test_second_lock_fails(self, tmp_path):
        """Test a second holder is refused and the first keeps the lock."""
        with OutputLock(tmp_path):
            with pytest.raises(OutputLockedError) as exc_info:
                OutputLock(tmp_path).acquire()

            assert exc_info.value.path == tmp_path / LOCK_FILE
            assert (tmp_path / LOCK_FILE).exists()

    def test_released_on_error(self, tmp_path):
        """Test an exception inside the block releases the lock."""
        with pytest.raises(RuntimeError):
            with OutputLock(tmp_path):
                raise RuntimeError("stage failed")

        assert not (tmp_path / LOCK_FILE).exists()
