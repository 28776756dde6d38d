"""
Run metadata and the preprocessing removal ledger.
"""

from dataclasses import dataclass, field
from typing import Any

FILTER_RULES: tuple[str, ...] = (
    "duplicate_id",
    "deleted",
    "removed",
    "bot",
    "non_english",
    "out_of_window",
)
"""Preprocessing rules in application order; a post is charged to the first it fails."""


@dataclass
class FilterLedger:
    """Counts of ingested, malformed, removed-per-rule and surviving posts."""

    ingested: int = 0
    malformed: int = 0
    survivors: int = 0
    removals: dict[str, int] = field(default_factory=lambda: {r: 0 for r in FILTER_RULES})

    def charge(self, rule: str) -> None:
        """Record one removal under a rule."""
        self.removals[rule] += 1

    @property
    def total_removed(self) -> int:
        """Sum of per-rule removals."""
        return sum(self.removals.values())

    @property
    def balanced(self) -> bool:
        """Check that ingested = survivors + removals."""
        return self.ingested == self.survivors + self.total_removed

    def as_dict(self) -> dict[str, Any]:
        """Serialize for metadata.json."""
        return {
            "ingested": self.ingested,
            "malformed": self.malformed,
            "removals": dict(self.removals),
            "survivors": self.survivors,
        }


@dataclass
class RunMetadata:
    """Everything needed to audit a run, merged across stages."""

    tool_version: str
    config: dict[str, Any]
    assumptions: dict[str, str] = field(default_factory=dict)
    stages: dict[str, dict[str, Any]] = field(default_factory=dict)
    timestamps: dict[str, str] = field(default_factory=dict)

    def record_stage(self, stage: str, summary: dict[str, Any], finished_at: str) -> None:
        """
        Store one stage's counts and notes.

        Args:
            stage: Stage name
            summary: JSON-serializable summary
            finished_at: ISO timestamp of completion
        """
        self.stages[stage] = summary
        self.timestamps[stage] = finished_at

    def as_dict(self) -> dict[str, Any]:
        """Serialize for metadata.json."""
        return {
            "tool_version": self.tool_version,
            "config": self.config,
            "assumptions": self.assumptions,
            "stages": self.stages,
            "timestamps": self.timestamps,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunMetadata":
        """Load from a parsed metadata.json."""
        return cls(
            tool_version=data.get("tool_version", ""),
            config=data.get("config", {}),
            assumptions=data.get("assumptions", {}),
            stages=data.get("stages", {}),
            timestamps=data.get("timestamps", {}),
        )
