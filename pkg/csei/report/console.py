"""
Summary reporting for pipeline stages.

This module provides rich console output for the ingest, build and
analyze stage results.
"""

from typing import Optional

from rich.console import Console
from rich.table import Table

from ..models import FILTER_RULES, AnalysisResults, BuildResults, IngestResults
from ..utils import format_float, get_logger

logger = get_logger(__name__)

TOP_EXTREMA = 5


class SummaryReporter:
    """
    Reporter for displaying stage results.

    This class creates formatted console output for:
    - The preprocessing removal ledger
    - Outlier removal and index weights
    - Extrema and event statistics
    """

    def __init__(self, console: Optional[Console] = None):
        """
        Initialize summary reporter.

        Args:
            console: Rich console instance (creates new if not provided)
        """
        self.console = console or Console()

    def display_ingest(self, results: IngestResults) -> None:
        """
        Display the removal ledger.

        Args:
            results: Ingest stage results
        """
        ledger = results.ledger
        table = Table(title="Preprocessing", show_header=False, box=None)
        table.add_column("Metric", style="cyan", width=24)
        table.add_column("Value", style="white", justify="right")

        table.add_row("Ingested", str(ledger.ingested))
        table.add_row("Malformed (skipped)", str(ledger.malformed))
        for rule in FILTER_RULES:
            table.add_row(f"Removed: {rule}", str(ledger.removals[rule]))
        table.add_row("[bold]Survivors[/bold]", f"[bold]{ledger.survivors}[/bold]")

        self.console.print()
        self.console.print(table)
        self.console.print(f"[dim]Clean posts: {results.output_path}[/dim]")
        self.console.print()

    def display_build(self, results: BuildResults) -> None:
        """
        Display outlier removal and the weight vector.

        Args:
            results: Build stage results
        """
        overview = Table(title="Index build", show_header=False, box=None)
        overview.add_column("Metric", style="cyan", width=24)
        overview.add_column("Value", style="white", justify="right")
        overview.add_row("Posts scored", str(results.posts_scored))
        overview.add_row("Days aggregated", str(results.daily_features.n_rows))
        if results.outliers is not None:
            overview.add_row(
                f"Outliers removed ({results.outliers.granularity})",
                str(results.outliers.n_removed),
            )
        overview.add_row("Days in index", str(results.retained.n_rows))
        ratio = results.weights.explained_variance_ratio
        if ratio is not None:
            overview.add_row("PC1 explained variance", f"{ratio:.1%}")
        overview.add_row("Weight source", results.weights.source)

        weights = Table(title="Weights", show_header=True)
        weights.add_column("Feature", style="cyan")
        weights.add_column("Weight", style="green", justify="right")
        weights.add_column("Loading", style="yellow", justify="right")
        for feature, weight, loading in zip(
            results.weights.features, results.weights.weights, results.weights.loadings
        ):
            weights.add_row(feature, f"{weight:.4f}", format_float(float(loading)))

        self.console.print()
        self.console.print(overview)
        self.console.print()
        self.console.print(weights)
        self.console.print()

    def display_analysis(self, results: AnalysisResults) -> None:
        """
        Display extrema and event statistics.

        Args:
            results: Analyze stage results
        """
        extrema = Table(title="Largest extrema", show_header=True)
        extrema.add_column("Kind", style="cyan")
        extrema.add_column("Date", style="white")
        extrema.add_column("Smoothed change", style="green", justify="right")
        extrema.add_column("Prominence", style="yellow", justify="right")
        dates = results.smoothed.dates
        for kind, found in (("peak", results.extrema.peaks), ("valley", results.extrema.valleys)):
            ranked = sorted(found, key=lambda e: (-e.prominence, e.index))[:TOP_EXTREMA]
            for e in ranked:
                extrema.add_row(
                    kind,
                    dates[e.index].isoformat(),
                    f"{e.value:.5f}",
                    f"{e.prominence:.5f}",
                )

        events = Table(title="Event response", show_header=False, box=None)
        events.add_column("Statistic", style="cyan", width=28)
        events.add_column("Value", style="white", justify="right")
        correlation = results.correlation
        events.add_row("Correlated series", results.correlate)
        events.add_row("Pearson r", format_float(correlation.r if correlation else None))
        events.add_row(
            "p-value", format_float(correlation.p_value if correlation else None, 6)
        )
        events.add_row("Event days", str(results.comparison.n_event))
        events.add_row("Mean change (event)", format_float(results.comparison.mean_event, 6))
        events.add_row(
            "Mean change (non-event)", format_float(results.comparison.mean_non_event, 6)
        )
        events.add_row("Uncovered events", str(len(results.indicator.uncovered)))

        self.console.print()
        self.console.print(extrema)
        self.console.print()
        self.console.print(events)
        if results.gaps:
            self.console.print(
                f"[yellow]⚠ {len(results.gaps)} date gap(s) in the index series[/yellow]"
            )
        for path in results.plots:
            self.console.print(f"[dim]Plot: {path}[/dim]")
        self.console.print()
