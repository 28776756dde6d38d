"""
SVG line charts of the index and its analytics.

Plots are rendered with the Agg backend and a fixed SVG hash salt with no
date stamp, so identical inputs produce identical files.
"""

from datetime import date
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from ..models import AnalysisResults, EventCalendar, FeatureMatrix  # noqa: E402
from ..utils import get_logger  # noqa: E402

logger = get_logger(__name__)

SVG_HASH_SALT = "csei"
FIGURE_SIZE = (10.0, 4.0)


def _save(figure: Figure, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with matplotlib.rc_context({"svg.hashsalt": SVG_HASH_SALT}):
        figure.savefig(path, format="svg", metadata={"Date": None})
    plt.close(figure)
    logger.debug(f"Wrote plot {path}")
    return path


def _figure(title: str, ylabel: str) -> tuple[Figure, plt.Axes]:
    figure, axes = plt.subplots(figsize=FIGURE_SIZE)
    axes.set_title(title)
    axes.set_xlabel("Date")
    axes.set_ylabel(ylabel)
    axes.grid(True, alpha=0.3)
    return figure, axes


def plot_index(results: AnalysisResults, path: Path) -> Path:
    """Daily index line chart."""
    figure, axes = _figure("CSEI", "Index")
    axes.plot(results.index.dates, results.index.values, color="tab:blue", linewidth=1.0)
    figure.autofmt_xdate()
    return _save(figure, path)


def plot_cumulative(
    results: AnalysisResults, calendar: Optional[EventCalendar], path: Path
) -> Path:
    """Cumulative change with a vertical marker per covered event."""
    figure, axes = _figure("Cumulative change in CSEI", "Cumulative change")
    axes.plot(results.cumulative.dates, results.cumulative.values, color="tab:blue")
    if calendar is not None:
        first, last = results.cumulative.dates[0], results.cumulative.dates[-1]
        for event in calendar.events:
            if first <= event.date <= last:
                axes.axvline(event.date, color="tab:red", linestyle="--", linewidth=0.8, alpha=0.6)
    figure.autofmt_xdate()
    return _save(figure, path)


def plot_smoothed(results: AnalysisResults, path: Path) -> Path:
    """Smoothed daily change with peak and valley markers."""
    smoothed = results.smoothed
    extrema = results.extrema
    figure, axes = _figure(
        f"{extrema.window}-day smoothed change in CSEI", "Smoothed daily change"
    )
    axes.plot(smoothed.dates, smoothed.values, color="tab:blue", linewidth=1.0)
    for found, marker, color, label in (
        (extrema.peaks, "^", "tab:green", "Peaks"),
        (extrema.valleys, "v", "tab:red", "Valleys"),
    ):
        if found:
            axes.scatter(
                [smoothed.dates[e.index] for e in found],
                [e.value for e in found],
                marker=marker,
                color=color,
                label=label,
                zorder=3,
            )
    if extrema.peaks or extrema.valleys:
        axes.legend()
    figure.autofmt_xdate()
    return _save(figure, path)


def plot_contributions(
    contributions: FeatureMatrix, path: Path, columns: Optional[Sequence[str]] = None
) -> Path:
    """Stacked per-feature contributions to the index."""
    columns = list(columns or contributions.columns)
    figure, axes = _figure("Feature contributions to CSEI", "Contribution")
    dates: list[date] = contributions.dates
    axes.stackplot(
        dates, *[contributions.column(c) for c in columns], labels=columns, linewidth=0
    )
    axes.legend(loc="upper left", bbox_to_anchor=(1.01, 1.0), fontsize="small")
    figure.autofmt_xdate()
    figure.tight_layout()
    return _save(figure, path)


def write_plots(
    results: AnalysisResults,
    output_dir: Path,
    calendar: Optional[EventCalendar] = None,
    contributions: Optional[FeatureMatrix] = None,
) -> list[Path]:
    """
    Render every chart into output_dir.

    Args:
        results: Analysis outcome
        output_dir: Plot directory
        calendar: Events to mark on the cumulative chart
        contributions: Per-feature contributions (chart skipped when None)

    Returns:
        Paths written, in a fixed order
    """
    paths = [
        plot_index(results, output_dir / "csei.svg"),
        plot_cumulative(results, calendar, output_dir / "cumulative.svg"),
        plot_smoothed(results, output_dir / "smoothed.svg"),
    ]
    if contributions is not None:
        paths.append(plot_contributions(contributions, output_dir / "contributions.svg"))
    logger.info(f"Wrote {len(paths)} plot(s) to {output_dir}")
    return paths
