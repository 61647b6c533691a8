"""Cooperative cancellation for long searches."""

from __future__ import annotations

import time


class DeadlineExceeded(RuntimeError):
    pass


class Deadline:
    """Monotonic-clock deadline checked periodically inside hot loops."""

    __slots__ = ("limit", "_ticks")

    def __init__(self, seconds: float | None = None):
        self.limit = None if seconds is None else time.monotonic() + seconds
        self._ticks = 0

    def check(self, every: int = 4096) -> None:
        if self.limit is None:
            return
        self._ticks += 1
        if self._ticks % every == 0 and time.monotonic() > self.limit:
            raise DeadlineExceeded("search deadline exceeded")

    @property
    def expired(self) -> bool:
        return self.limit is not None and time.monotonic() > self.limit


NO_DEADLINE = Deadline(None)
