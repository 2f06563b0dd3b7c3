"""Search budgets for the exhaustive solvers.

A budget of 0 in any slot is allowed and simply forces the affected
decision procedures to report out-of-budget instead of scanning.
"""
from __future__ import annotations

import time
from dataclasses import dataclass


@dataclass(frozen=True)
class Budget:
    max_objects: int = 256          # largest category any scan will touch
    max_parallel_pairs: int = 500_000
    max_candidate_apexes: int = 256
    wall_clock_s: float = 900.0

    def __post_init__(self):
        for field in ("max_objects", "max_parallel_pairs", "max_candidate_apexes"):
            if getattr(self, field) < 0:
                raise ValueError(f"{field} must be >= 0")
        if self.wall_clock_s <= 0:
            raise ValueError("wall_clock_s must be positive")

    def signature(self) -> tuple:
        """Key for verdict caches; wall clock excluded (it never changes a
        completed verdict, only whether we finish)."""
        return (self.max_objects, self.max_parallel_pairs, self.max_candidate_apexes)

    def deadline(self) -> float:
        return time.monotonic() + self.wall_clock_s

    def as_dict(self) -> dict:
        return {
            "max_objects": self.max_objects,
            "max_parallel_pairs": self.max_parallel_pairs,
            "max_candidate_apexes": self.max_candidate_apexes,
            "wall_clock_s": self.wall_clock_s,
        }


DEFAULT_BUDGET = Budget()
