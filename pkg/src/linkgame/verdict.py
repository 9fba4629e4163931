"""Three-valued splittability verdicts with certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional


class Split(Enum):
    SPLITTABLE = "splittable"
    UNSPLITTABLE = "unsplittable"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a splittability decision.

    ``certificate`` carries the evidence: a nonzero linking number for
    UNSPLITTABLE, a replayable simplification trace (or reduced word) for
    SPLITTABLE, and a budget report for UNKNOWN.
    """

    split: Split
    certificate: Any = None
    detail: str = ""

    @property
    def is_splittable(self) -> bool:
        return self.split is Split.SPLITTABLE

    @property
    def is_unsplittable(self) -> bool:
        return self.split is Split.UNSPLITTABLE

    @property
    def is_unknown(self) -> bool:
        return self.split is Split.UNKNOWN

    def __str__(self) -> str:
        return self.split.value


def splittable(certificate: Any = None, detail: str = "") -> Verdict:
    return Verdict(Split.SPLITTABLE, certificate, detail)


def unsplittable(certificate: Any = None, detail: str = "") -> Verdict:
    if certificate == 0:
        raise ValueError("unsplittable certificate must be nonzero")
    return Verdict(Split.UNSPLITTABLE, certificate, detail)


def unknown(detail: str = "") -> Verdict:
    return Verdict(Split.UNKNOWN, None, detail)
