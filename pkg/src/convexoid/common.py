"""Shared exceptions and bounded-search outcomes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


class ConvexoidError(ValueError):
    """Base class for domain errors (precondition violations, bad input)."""


class PreconditionError(ConvexoidError):
    pass


class InvalidHypothesisError(ConvexoidError):
    """Raised when an object falls outside the hypotheses of a classification."""


@dataclass(frozen=True)
class Yes:
    """Definitive positive answer, carrying whatever certifies it."""

    witness: Any = None

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NoWithinBudget:
    """Bounded negative answer: nothing was found inside ``budget``."""

    budget: Any = None

    def __bool__(self) -> bool:
        return False
