"""
Pipeline stages: ingest, build and analyze.

Each stage reads its inputs from the configured paths or from the previous
stage's artifacts in the output directory, writes its own artifacts, and
merges its summary into metadata.json. Any stage can be rerun on its own.
"""

from datetime import date, datetime, timezone
from pathlib import Path
from typing import Any, Callable, Optional, Sequence, Union

import numpy as np

from csei import __version__

from ..aggregate import build_daily_features, post_feature_rows
from ..analysis import (
    correlate_series,
    correlation_matrix,
    cumulative_change,
    daily_delta,
    date_gaps,
    detect_extrema,
    event_day_comparison,
    event_indicator,
    load_calendar,
    pearson,
    rolling_mean,
)
from ..artifacts import tables
from ..config import RunConfig
from ..index import (
    compute_index,
    contribution_decomposition,
    contribution_shares,
    derive_weights,
    load_weights,
    minmax_normalize,
)
from ..ingest import PostFilter, load_english_words, load_stopwords, read_posts
from ..models import (
    EMOTION_COLUMNS,
    AnalysisResults,
    BuildResults,
    CorrelationMatrix,
    CorrelationResult,
    FeatureMatrix,
    IngestResults,
    OutlierReport,
    RunMetadata,
    ScoringFlags,
)
from ..outliers import OutlierDetector
from ..report import render_summary, write_plots
from ..scoring import attach_external_scores, load_external_scores, load_lexicon
from ..utils import (
    ConfigurationError,
    CSEIError,
    DegenerateCorrelationError,
    DegenerateDataError,
    SeriesTooShortError,
    StageError,
    get_logger,
    log_stage,
)
from .lock import OutputLock

logger = get_logger(__name__)

STAGES: tuple[str, ...] = ("ingest", "build", "analyze")

ASSUMPTIONS: dict[str, str] = {
    "covariance": "sample covariance with the n - 1 denominator",
    "eigensolver": "cyclic Jacobi until the off-diagonal norm < 1e-12 x max(1, ||A||_F)",
    "english_test": "title and selftext cleaned without stopword removal, "
    "against lexicon, stopwords and word list",
    "scoring_text": "sentiment and readability score the title and selftext joined by a newline",
    "caps_emphasis": "ALL-CAPS emphasis needs non-capitalized context that is neutral or leans "
    "the same way as the negation-adjusted valence",
    "isolation_splits": "split feature drawn among features that vary at the node",
    "loaded_weights": "loaded weight vectors are used verbatim",
    "smoothing": "trailing window; partial leading windows are dropped",
    "extrema": "endpoints excluded; prominence is the height above the [t-d, t+d] minimum",
    "event_alignment": "an event on date t pairs with the delta ending on t",
    "p_value": "two-sided Student t via I_x(dof/2, 1/2) with x = 1 - r^2",
}

StageResults = Union[IngestResults, BuildResults, AnalysisResults]


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _index_summary(values: np.ndarray) -> dict[str, float]:
    return {
        "min": float(np.min(values)),
        "max": float(np.max(values)),
        "mean": float(np.mean(values)),
    }


def _outlier_summary(report: OutlierReport) -> dict[str, Any]:
    removed = [report.labels[i] for i in report.removed_indices]
    return {
        "granularity": report.granularity,
        "rows": len(report.labels),
        "forest_flagged": int(np.sum(report.forest_flags)),
        "pc_flagged": int(np.sum(report.pc_flags)),
        "removed": len(removed),
        "removed_labels": removed,
        "pc_explained_variance": list(report.explained_variance),
        "notes": list(report.notes),
    }


class Pipeline:
    """
    Runs pipeline stages against one output directory.

    Stages communicate only through the artifacts in the output directory.
    """

    def __init__(self, config: RunConfig):
        """
        Initialize pipeline.

        Args:
            config: Validated run configuration
        """
        self.config = config
        self.output_dir = Path(config.paths.output_dir)

    def artifact(self, name: str) -> Path:
        """Path of an artifact in the output directory."""
        return self.output_dir / name

    def run(self, stages: Sequence[str]) -> dict[str, StageResults]:
        """
        Run stages in order while holding the output lock.

        Args:
            stages: Stage names from STAGES

        Returns:
            Stage name -> results

        Raises:
            StageError: If a stage fails
            OutputLockedError: If another run holds the output directory
        """
        unknown = [s for s in stages if s not in STAGES]
        if unknown:
            raise ConfigurationError(f"Unknown stage(s): {', '.join(unknown)}")

        runners: dict[str, Callable[[], StageResults]] = {
            "ingest": self.ingest,
            "build": self.build,
            "analyze": self.analyze,
        }
        results: dict[str, StageResults] = {}
        with OutputLock(self.output_dir):
            for stage in stages:
                results[stage] = self._run_stage(stage, runners[stage])
        return results

    def _run_stage(self, stage: str, runner: Callable[[], StageResults]) -> StageResults:
        try:
            return runner()
        except StageError:
            raise
        except (CSEIError, OSError, ValueError) as e:
            raise StageError(stage, e) from e

    # Metadata

    def _load_metadata(self) -> RunMetadata:
        existing = tables.read_json(self.artifact(tables.METADATA))
        metadata = RunMetadata.from_dict(existing) if existing else RunMetadata("", {})
        metadata.tool_version = __version__
        metadata.config = self.config.snapshot()
        metadata.assumptions = dict(ASSUMPTIONS)
        return metadata

    def _record(self, stage: str, summary: dict[str, Any]) -> None:
        metadata = self._load_metadata()
        metadata.record_stage(stage, summary, _timestamp())
        tables.write_json(metadata.as_dict(), self.artifact(tables.METADATA))

    # Stages

    @log_stage("ingest", logger)
    def ingest(self) -> IngestResults:
        """
        Parse and filter the post dump into clean_posts.csv.

        Returns:
            IngestResults

        Raises:
            ConfigurationError: If no posts file is configured
        """
        paths = self.config.paths
        settings = self.config.ingest
        if paths.posts is None:
            raise ConfigurationError("paths.posts must be set to run ingest")

        parsed = read_posts(paths.posts, paths.posts_format)
        stopwords = load_stopwords(paths.stopwords)
        lexicon = load_lexicon(paths.lexicon, paths.boosters, paths.negators)
        vocabulary = lexicon.vocabulary | stopwords | load_english_words(paths.english_words)

        post_filter = PostFilter(
            stopwords=stopwords,
            vocabulary=vocabulary,
            min_date=settings.min_date,
            max_date=settings.max_date,
            english_filter=settings.english_filter,
            english_threshold=settings.english_threshold,
        )
        filtered = post_filter.apply(parsed.posts, parsed.malformed)
        output = tables.write_clean_posts(filtered.posts, self.artifact(tables.CLEAN_POSTS))

        summary = filtered.ledger.as_dict()
        summary["balanced"] = filtered.ledger.balanced
        summary["malformed_records"] = list(parsed.malformed_records)
        self._record("ingest", summary)
        return IngestResults(
            ledger=filtered.ledger,
            output_path=output,
            malformed_records=list(parsed.malformed_records),
        )

    @log_stage("build", logger)
    def build(self) -> BuildResults:
        """
        Score, aggregate, remove outliers and compute the index.

        Returns:
            BuildResults

        Raises:
            DegenerateDataError: If no days remain to build the index from
        """
        paths = self.config.paths
        posts = tables.read_clean_posts(self.artifact(tables.CLEAN_POSTS))
        lexicon = load_lexicon(paths.lexicon, paths.boosters, paths.negators)
        external = load_external_scores(paths.external_scores) if paths.external_scores else {}
        if paths.external_scores is None:
            logger.warning("No external score table configured; neutral defaults used")

        flags = ScoringFlags()
        scored = attach_external_scores(
            posts,
            external,
            lexicon,
            alpha=self.config.scoring.alpha,
            readability_degenerate_value=self.config.scoring.readability_degenerate_value,
            flags=flags,
        )
        tables.write_scored_posts(scored, self.artifact(tables.SCORED_POSTS))

        outlier_config = self.config.outliers
        detector = OutlierDetector.from_config(outlier_config)
        report: Optional[OutlierReport] = None
        if outlier_config.enabled and outlier_config.granularity == "post":
            report = detector.detect(
                post_feature_rows(scored), [p.id for p in scored], granularity="post"
            )
            scored = [p for p, drop in zip(scored, report.removed_mask) if not drop]

        daily = build_daily_features(
            scored, self.config.aggregate.emotion_agg, self.config.aggregate.diversity
        )
        if daily.is_empty:
            raise DegenerateDataError("no posts left to aggregate; the feature matrix is empty")

        retained = daily
        if outlier_config.enabled and outlier_config.granularity == "daily":
            report = detector.detect(
                daily.values, [d.isoformat() for d in daily.dates], granularity="daily"
            )
            retained = daily.select_rows(~report.removed_mask)

        normalized, stats = minmax_normalize(retained)
        if self.config.index.weight_mode == "derive":
            weights = derive_weights(normalized)
        else:
            weights = load_weights(paths.weights, normalized.columns)
        series = compute_index(normalized, weights)
        parts = contribution_decomposition(normalized, weights)

        tables.write_matrix(retained, self.artifact(tables.FEATURES))
        if report is not None:
            tables.write_outliers(report, self.artifact(tables.OUTLIERS))
        tables.write_matrix(normalized, self.artifact(tables.NORMALIZED))
        tables.write_weights(weights, self.artifact(tables.WEIGHTS))
        tables.write_index(series, self.artifact(tables.INDEX))
        tables.write_matrix(parts.features, self.artifact(tables.CONTRIBUTIONS))
        tables.write_matrix(parts.groups, self.artifact(tables.GROUPS))

        self._record(
            "build",
            {
                "posts_scored": len(posts),
                "scoring": flags.as_dict(),
                "days": daily.n_rows,
                "days_retained": retained.n_rows,
                "outliers": _outlier_summary(report) if report else {"enabled": False},
                "constant_columns": list(stats.constant_columns),
                "weights": {
                    "source": weights.source,
                    "sum": weights.total,
                    "explained_variance_ratio": weights.explained_variance_ratio,
                },
                "index": _index_summary(series.values),
            },
        )
        return BuildResults(
            posts_scored=len(posts),
            scoring_flags=flags,
            daily_features=daily,
            retained=retained,
            normalization=stats,
            weights=weights,
            index=series,
            contributions=parts.features,
            groups=parts.groups,
            outliers=report,
        )

    def _matching_matrix(
        self, name: str, index_dates: list[date], notes: list[str]
    ) -> Optional[FeatureMatrix]:
        path = self.artifact(name)
        if not path.is_file():
            notes.append(f"{name} not found; dependent outputs skipped")
            return None
        matrix = tables.read_matrix(path, columns=None)
        if matrix.dates != index_dates:
            note = f"{name} dates do not match the index; dependent outputs skipped"
            logger.warning(note)
            notes.append(note)
            return None
        return matrix

    @log_stage("analyze", logger)
    def analyze(self) -> AnalysisResults:
        """
        Derive event-response analytics from the index file.

        Returns:
            AnalysisResults

        Raises:
            SeriesTooShortError: If the index is too short for the smoothing window
        """
        paths = self.config.paths
        settings = self.config.analysis
        notes: list[str] = []

        index_path = paths.index_file or self.artifact(tables.INDEX)
        index = tables.read_index(index_path)
        delta = daily_delta(index)
        smoothed = rolling_mean(delta, settings.window)
        cumulative = cumulative_change(delta)
        extrema = detect_extrema(
            smoothed.values, settings.distance, settings.prominence, window=settings.window
        )

        calendar = load_calendar(paths.events)
        target = correlate_series(delta, smoothed, settings.correlate)
        delta_indicator = event_indicator(delta.dates, calendar)
        if target.dates == delta.dates:
            indicator = delta_indicator
        else:
            indicator = event_indicator(target.dates, calendar)

        correlation: Optional[CorrelationResult] = None
        try:
            correlation = pearson(target.values, indicator.values)
        except (DegenerateCorrelationError, SeriesTooShortError) as e:
            note = f"event correlation undefined: {e}"
            logger.warning(note)
            notes.append(note)
        comparison = event_day_comparison(delta.values, delta_indicator.values)
        notes.extend(comparison.flags)

        gaps = date_gaps(index.dates)

        matrix: Optional[CorrelationMatrix] = None
        normalized = self._matching_matrix(tables.NORMALIZED, index.dates, notes)
        if normalized is not None and normalized.n_rows >= 3:
            combined = FeatureMatrix(
                dates=list(index.dates),
                values=np.column_stack([normalized.values, index.values]),
                columns=normalized.columns + ("csei",),
            )
            matrix = correlation_matrix(combined)

        contributions = self._matching_matrix(tables.CONTRIBUTIONS, index.dates, notes)
        shares: dict[str, float] = {}
        if contributions is not None:
            present = [c for c in EMOTION_COLUMNS if c in contributions.columns]
            shares = contribution_shares(contributions, present)

        results = AnalysisResults(
            index=index,
            delta=delta,
            smoothed=smoothed,
            cumulative=cumulative,
            extrema=extrema,
            correlate=settings.correlate,
            indicator=indicator,
            comparison=comparison,
            correlation=correlation,
            correlation_matrix=matrix,
            gaps=gaps,
            emotion_shares=shares,
            notes=notes,
        )

        tables.write_series(delta, self.artifact(tables.DELTAS), "delta")
        tables.write_series(smoothed, self.artifact(tables.SMOOTHED), "smoothed")
        tables.write_series(cumulative, self.artifact(tables.CUMULATIVE), "cumulative")
        tables.write_extrema(extrema, smoothed.dates, self.artifact(tables.EXTREMA))
        tables.write_event_stats(
            settings.correlate,
            correlation,
            len(target),
            comparison,
            indicator,
            self.artifact(tables.EVENT_STATS),
        )
        if matrix is not None:
            tables.write_correlation_matrix(matrix, self.artifact(tables.CORRELATION_MATRIX))
        tables.write_gaps(gaps, self.artifact(tables.GAPS))
        if shares:
            tables.write_shares(shares, self.artifact(tables.EMOTION_CONTRIBUTIONS))
        if settings.plots:
            results.plots = write_plots(
                results, self.artifact(tables.PLOTS_DIR), calendar, contributions
            )
        self.artifact(tables.SUMMARY).write_text(render_summary(results), encoding="utf-8")

        self._record(
            "analyze",
            {
                "index_file": str(index_path),
                "days": len(index),
                "window": settings.window,
                "distance": settings.distance,
                "prominence": extrema.prominence,
                "peaks": len(extrema.peaks),
                "valleys": len(extrema.valleys),
                "correlate": settings.correlate,
                "r": correlation.r if correlation else None,
                "p_value": correlation.p_value if correlation else None,
                "events_marked": indicator.n_events,
                "uncovered_events": [e.date.isoformat() for e in indicator.uncovered],
                "gaps": len(gaps),
                "plots": [p.name for p in results.plots],
                "notes": notes,
            },
        )
        return results


def run_pipeline(config: RunConfig, stages: Sequence[str] = STAGES) -> dict[str, StageResults]:
    """
    Run stages against the configured output directory.

    Args:
        config: Validated run configuration
        stages: Stage names in execution order

    Returns:
        Stage name -> results
    """
    return Pipeline(config).run(stages)
