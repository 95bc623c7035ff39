"""Declarative goal nets: parsing, validation, and execution."""

from tagent.goalnet.model import (
    ChoiceRule,
    GoalKind,
    GoalNet,
    GoalState,
    Predicate,
    SelectionStrategy,
    Transition,
    load_goalnet,
    parse_goalnet,
    serialize_goalnet,
    validate_goalnet,
)
from tagent.goalnet.executor import (
    ExecutionContext,
    TaskRegistry,
    TaskResult,
    TraceRecord,
    WouldBlock,
    run_to_completion,
    select_action,
    select_next_goal,
    step,
)

__all__ = [
    "ChoiceRule",
    "ExecutionContext",
    "GoalKind",
    "GoalNet",
    "GoalState",
    "Predicate",
    "SelectionStrategy",
    "TaskRegistry",
    "TaskResult",
    "TraceRecord",
    "Transition",
    "WouldBlock",
    "load_goalnet",
    "parse_goalnet",
    "run_to_completion",
    "select_action",
    "select_next_goal",
    "serialize_goalnet",
    "step",
    "validate_goalnet",
]
