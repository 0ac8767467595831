"""
Run ID utilities for correlating log lines with a run manifest.
"""
import uuid
from contextvars import ContextVar

# Context variable for storing the run ID of the current CLI invocation
run_id_var: ContextVar[str] = ContextVar("run_id", default="")


def generate_run_id() -> str:
    """
    Generate a new UUID-based run ID.

    Returns:
        Run ID string (UUID4)
    """
    return str(uuid.uuid4())


def get_run_id() -> str:
    """
    Get current run ID from context.

    Returns:
        Current run ID or generates a new one if not set
    """
    run_id = run_id_var.get()
    if not run_id:
        run_id = generate_run_id()
        run_id_var.set(run_id)
    return run_id


def set_run_id(run_id: str) -> None:
    """
    Set run ID in context.

    Args:
        run_id: Run ID to set
    """
    run_id_var.set(run_id)
