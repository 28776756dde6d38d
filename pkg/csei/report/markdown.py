"""
Markdown summary of an analysis run.
"""

import numpy as np

from ..models import AnalysisResults, Extremum
from ..utils import format_float


def _table(header: list[str], rows: list[list[str]]) -> list[str]:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines.extend("| " + " | ".join(row) + " |" for row in rows)
    return lines


def _extrema_rows(found: list[Extremum], results: AnalysisResults) -> list[list[str]]:
    dates = results.smoothed.dates
    return [
        [dates[e.index].isoformat(), format_float(e.value, 6), format_float(e.prominence, 6)]
        for e in found
    ]


def render_summary(results: AnalysisResults) -> str:
    """
    Build the markdown report for the analyze stage.

    Args:
        results: Analysis outcome

    Returns:
        Markdown text ending with a newline
    """
    index = results.index
    values = index.values
    lines = ["# CSEI analysis summary", ""]

    lines += ["## Index", ""]
    lines += _table(
        ["Metric", "Value"],
        [
            ["Days", str(len(index))],
            ["First date", index.dates[0].isoformat()],
            ["Last date", index.dates[-1].isoformat()],
            ["Mean", format_float(float(np.mean(values)))],
            ["Min", format_float(float(np.min(values)))],
            ["Max", format_float(float(np.max(values)))],
            ["Cumulative change", format_float(float(results.cumulative.values[-1]))],
        ],
    )
    lines.append("")

    extrema = results.extrema
    lines += ["## Peaks and valleys", ""]
    lines.append(
        f"Smoothing window {extrema.window}, distance {extrema.distance}, "
        f"prominence threshold {format_float(extrema.prominence, 6)}."
    )
    lines.append("")
    for title, found in (("Peaks", extrema.peaks), ("Valleys", extrema.valleys)):
        lines += [f"### {title}", ""]
        if found:
            headers = ["Date", "Smoothed change", "Prominence"]
            lines += _table(headers, _extrema_rows(found, results))
        else:
            lines.append("None detected.")
        lines.append("")

    comparison = results.comparison
    correlation = results.correlation
    lines += ["## Event response", ""]
    lines += _table(
        ["Statistic", "Value"],
        [
            ["Correlated series", results.correlate],
            ["Pearson r", format_float(correlation.r if correlation else None)],
            ["p-value", format_float(correlation.p_value if correlation else None, 6)],
            ["Event days", str(comparison.n_event)],
            ["Non-event days", str(comparison.n_non_event)],
            ["Mean change on event days", format_float(comparison.mean_event, 6)],
            ["Mean change on non-event days", format_float(comparison.mean_non_event, 6)],
        ],
    )
    lines.append("")
    if results.indicator.uncovered:
        lines.append("Events outside the series:")
        lines.append("")
        lines += [f"- {e.date.isoformat()}: {e.label}" for e in results.indicator.uncovered]
        lines.append("")

    if results.emotion_shares:
        lines += ["## Emotion contributions", ""]
        lines += _table(
            ["Emotion", "Share of index"],
            [[name, f"{share:.2%}"] for name, share in results.emotion_shares.items()],
        )
        lines.append("")

    lines += ["## Date gaps", ""]
    if results.gaps:
        lines += _table(
            ["Previous date", "Next date", "Days"],
            [[a.isoformat(), b.isoformat(), str(days)] for a, b, days in results.gaps],
        )
    else:
        lines.append("The index covers consecutive days.")
    lines.append("")

    if results.notes:
        lines += ["## Notes", ""]
        lines += [f"- {note}" for note in results.notes]
        lines.append("")

    return "\n".join(lines)
