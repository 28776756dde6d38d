"""
Output directory lock.

Only one pipeline process may write to an output directory at a time.
"""

import os
from pathlib import Path
from types import TracebackType
from typing import Optional

from ..utils import OutputLockedError, get_logger

logger = get_logger(__name__)

LOCK_FILE = ".csei.lock"


class OutputLock:
    """Exclusive lock file inside the output directory."""

    def __init__(self, output_dir: Path):
        """
        Initialize lock.

        Args:
            output_dir: Directory to lock (created on acquire)
        """
        self.output_dir = Path(output_dir)
        self.path = self.output_dir / LOCK_FILE
        self.acquired = False

    def acquire(self) -> None:
        """
        Create the lock file.

        Raises:
            OutputLockedError: If another run holds the lock
        """
        self.output_dir.mkdir(parents=True, exist_ok=True)
        try:
            fd = os.open(self.path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise OutputLockedError(
                f"Output directory is locked by another run (remove {self.path} if stale)",
                path=self.path,
            )
        with os.fdopen(fd, "w") as f:
            f.write(f"{os.getpid()}\n")
        self.acquired = True
        logger.debug(f"Acquired {self.path}")

    def release(self) -> None:
        """Remove the lock file if this instance holds it."""
        if self.acquired:
            self.path.unlink(missing_ok=True)
            self.acquired = False
            logger.debug(f"Released {self.path}")

    def __enter__(self) -> "OutputLock":
        self.acquire()
        return self

    def __exit__(
        self,
        exc_type: Optional[type[BaseException]],
        exc: Optional[BaseException],
        traceback: Optional[TracebackType],
    ) -> None:
        self.release()
