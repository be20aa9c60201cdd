"""
Run Context Module

Keeps the identifier of the current computation (one CLI invocation, one test run)
in a ContextVar so every log record can carry it without threading it through
method signatures.
"""

from contextvars import ContextVar
from typing import Optional
import logging

run_context: ContextVar[Optional[str]] = ContextVar('run_context', default=None)

logger = logging.getLogger(__name__)


class RunContext:
    """Run-scoped identifier storage backed by ContextVar."""

    @staticmethod
    def set_run_id(run_id: Optional[str]) -> None:
        """
        Set the run id for the current context.

        Args:
            run_id (str): identifier echoed in every log line, or None to clear it
        """
        run_context.set(run_id)
        if run_id:
            logger.debug(f"Run id set: {run_id}")

    @staticmethod
    def get_run_id() -> Optional[str]:
        """Return the run id of the current context, None when unset."""
        return run_context.get()
