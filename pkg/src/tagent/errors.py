"""Shared exception types."""

from __future__ import annotations


class TagentError(Exception):
    """Base class for all library errors."""


class ParseError(TagentError):
    """A document could not be parsed at all."""


class ValidationError(TagentError):
    """A structural invariant of a loaded artifact is violated."""


class UnknownPair(TagentError):
    """Event/goal pair absent from the desirability table."""


class NoPendingProspect(TagentError):
    """A confirmation arrived with no registered hope/fear to resolve."""


class MissingAntecedent(TagentError):
    """Disappointment/relief requested without the prior hope/fear value."""


class DimensionMismatch(TagentError):
    """State vector length does not match the model's concept count."""


class NoSharedConcept(TagentError):
    """FCM composition requires at least one shared concept pair."""


class CodomainMismatch(TagentError):
    """Paired concepts in a composition declare different codomains."""


class UnknownRelation(TagentError):
    """Concept-map link uses a relation absent from the vocabulary."""


class UnknownPoint(TagentError):
    """Knowledge-point id not present in the authored catalog."""


class NoCandidate(TagentError):
    """No enabled transition from a non-terminal state: the net is stuck."""


class NoRuleFired(TagentError):
    """Rule-based selection found no satisfied premise."""


class AmbiguousRule(TagentError):
    """Rule-based selection matched more than one distinct choice."""


class TaskFailure(TagentError):
    """A task hook reported failure; the goal state is unchanged."""

    def __init__(self, task: str, reason: str = "") -> None:
        super().__init__(f"task {task!r} failed: {reason}")
        self.task = task
        self.reason = reason


class UnresolvedTask(TagentError):
    """A referenced task function is not present in the registry."""


class StepLimitExceeded(TagentError):
    """run_to_completion hit its step budget before reaching an end state."""

    def __init__(self, message: str, trace: list | None = None) -> None:
        super().__init__(message)
        self.trace = trace or []


class UnknownEvent(TagentError):
    """Simulation event id not registered in the scenario's event table."""


class PrerequisiteViolation(TagentError):
    """Learning path orders a goal before one of its prerequisites."""

    def __init__(self, goal: str, prerequisite: str) -> None:
        super().__init__(f"goal {goal!r} selected before prerequisite {prerequisite!r}")
        self.goal = goal
        self.prerequisite = prerequisite


class DuplicateSelection(TagentError):
    """Learning path selects the same goal twice."""


class UnknownCatalog(TagentError):
    """Session creation referenced a catalog id that is not loaded."""


class SessionExpired(TagentError):
    """The session idled past its expiry window."""
