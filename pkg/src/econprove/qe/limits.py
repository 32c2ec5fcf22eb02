"""Resource limits and statistics for QE calls."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional


@dataclass
class RunLimits:
    """Hard ceilings; exceeding any raises ResourceLimitError, never a wrong verdict."""

    max_cells: int = 50_000
    max_projection: int = 1_000_000
    deadline: Optional[float] = None  # absolute time.monotonic() value

    @staticmethod
    def with_timeout(seconds: Optional[float], **kw) -> "RunLimits":
        deadline = time.monotonic() + seconds if seconds else None
        return RunLimits(deadline=deadline, **kw)

    def check_time(self, stats: "QeStats") -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimitError("timeout", stats)

    def check_cells(self, stats: "QeStats") -> None:
        if stats.cells > self.max_cells:
            raise ResourceLimitError("cell limit exceeded", stats)

    def check_projection(self, stats: "QeStats") -> None:
        if sum(stats.projection_sizes) > self.max_projection:
            raise ResourceLimitError("projection limit exceeded", stats)


@dataclass
class QeStats:
    """Per-call statistics (cells built, projection sizes, order, time)."""

    cells: int = 0
    projection_sizes: list[int] = field(default_factory=list)
    order: list[str] = field(default_factory=list)
    elapsed_ms: float = 0.0
    method: str = ""

    def as_dict(self) -> dict:
        return {
            "cells": self.cells,
            "projection_sizes": list(self.projection_sizes),
            "order": list(self.order),
            "elapsed_ms": self.elapsed_ms,
            "method": self.method,
        }


class ResourceLimitError(Exception):
    """A configured resource ceiling was hit; carries partial statistics."""

    def __init__(self, reason: str, stats: QeStats | None = None):
        super().__init__(reason)
        self.reason = reason
        self.stats = stats or QeStats()
