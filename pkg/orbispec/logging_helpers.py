"""Step-by-step progress messages for long command-line pipelines.

Messages go to stderr; stdout carries command output.
"""

import time

import click


class ProgressLogger:
    """Progress reporter for multi-step computations."""

    def __init__(self, title: str, total_steps: int, enabled: bool = True):
        self.title = title
        self.enabled = enabled
        self._total_steps = total_steps
        self._step_count = 0
        self._start_time = time.time()

    def _echo(self, message: str) -> None:
        if self.enabled:
            click.echo(message, err=True)

    def start(self) -> None:
        """Announce the pipeline and reset the clock."""
        self._step_count = 0
        self._start_time = time.time()
        self._echo(f"{self.title} ({self._total_steps} steps)")

    def step(self, message: str) -> None:
        """Log a pipeline step with a progress indicator."""
        self._step_count += 1
        done = min(self._step_count, self._total_steps)
        progress = "#" * done + "." * (self._total_steps - done)
        percentage = (
            round((done / self._total_steps) * 100) if self._total_steps > 0 else 0
        )
        self._echo(f"   [{progress}] {percentage:3d}%  {message}")

    def success(self, message: str) -> None:
        self._echo(f"   ok: {message}")

    def warning(self, message: str) -> None:
        self._echo(f"   warning: {message}")

    def complete(self) -> None:
        """Report total elapsed time."""
        elapsed = time.time() - self._start_time
        self._echo(f"{self.title} complete in {elapsed:.2f}s")
