"""Pipeline orchestration: stages over a locked output directory."""

from csei.pipeline.lock import LOCK_FILE, OutputLock
from csei.pipeline.stages import ASSUMPTIONS, STAGES, Pipeline, run_pipeline

__all__ = ["ASSUMPTIONS", "LOCK_FILE", "STAGES", "OutputLock", "Pipeline", "run_pipeline"]
