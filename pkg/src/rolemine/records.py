"""Core record vocabulary shared across the pipeline."""

from __future__ import annotations

import enum
from dataclasses import dataclass

# Only appearances dated within this window are counted anywhere.
MIN_YEAR = 1900
MAX_YEAR = 2020


class Gender(enum.Enum):
    """Performer gender, inherited from which source file listed them."""

    F = "F"
    M = "M"


@dataclass(frozen=True, slots=True)
class RoleRecord:
    """One cleaned appearance: the atomic unit counted everywhere."""

    role: str
    year: int
    gender: Gender

    def __post_init__(self) -> None:
        if not self.role:
            raise ValueError("role must be non-empty")
        if not MIN_YEAR <= self.year <= MAX_YEAR:
            raise ValueError(f"year {self.year} outside [{MIN_YEAR}, {MAX_YEAR}]")
