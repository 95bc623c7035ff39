"""Deterministic goal net execution.

One ExecutionContext carries a single focus token through a net and its
sub-nets.  A state whose outgoing transitions all enter composite states
fires them together (the fork); the forked composites run one after another
in this context and the join transition fires only once every sibling has
completed.  Runtimes that want true parallel branches run each branch in
its own context instead.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Protocol

from tagent.errors import (
    AmbiguousRule,
    NoCandidate,
    NoRuleFired,
    StepLimitExceeded,
    TagentError,
    TaskFailure,
    UnresolvedTask,
)
from tagent.goalnet.model import (
    GoalKind,
    GoalNet,
    GoalState,
    SelectionStrategy,
    Transition,
)

DEFAULT_TICK_SECONDS = 0.1


class WouldBlock(TagentError):
    """No transition is currently enabled but some exist: the net is waiting
    for external input rather than structurally stuck."""


@dataclass
class TaskResult:
    success: bool = True
    reason: str = ""
    payload: Any = None

    @classmethod
    def ok(cls, payload: Any = None) -> "TaskResult":
        return cls(success=True, payload=payload)

    @classmethod
    def fail(cls, reason: str) -> "TaskResult":
        return cls(success=False, reason=reason)


TaskHook = Callable[["ExecutionContext"], TaskResult | bool | None]


class TaskRegistry:
    """Named task hooks; immutable once execution begins."""

    def __init__(self, hooks: dict[str, TaskHook] | None = None) -> None:
        self._hooks: dict[str, TaskHook] = dict(hooks or {})

    def register(self, name: str, hook: TaskHook) -> None:
        self._hooks[name] = hook

    def resolve(self, name: str) -> TaskHook:
        hook = self._hooks.get(name)
        if hook is None:
            raise UnresolvedTask(f"task {name!r} is not registered")
        return hook

    def names(self) -> set[str]:
        return set(self._hooks)

    def missing_for(self, net: GoalNet) -> set[str]:
        """Task names referenced by the net (or sub-nets) with no hook."""
        needed: set[str] = set()
        for candidate in net.all_nets().values():
            for t in candidate.transitions.values():
                needed.update(t.task_list)
        return needed - self.names()


@dataclass
class TraceRecord:
    step: int
    net: str
    state_from: str
    transition: str
    task: str
    outcome: str
    timestamp: float
    thread: str = ""
    emotions: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "net": self.net,
            "state_from": self.state_from,
            "transition": self.transition,
            "task": self.task,
            "outcome": self.outcome,
            "timestamp": self.timestamp,
            "thread": self.thread,
            "emotions": self.emotions,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


class CompositePolicy(Protocol):
    """How entering a composite state is realized."""

    def on_activate(self, ctx: "ExecutionContext", state_id: str) -> None: ...

    def is_complete(self, ctx: "ExecutionContext", state_id: str) -> bool: ...


class InlineComposites:
    """Default policy: expand the composite's sub-net in this context."""

    def on_activate(self, ctx: "ExecutionContext", state_id: str) -> None:
        state = ctx.current_net.states[state_id]
        sub = ctx.net.all_nets().get(state.sub_net or "")
        if sub is None:
            raise NoCandidate(
                f"composite state {state_id!r} references unloaded sub-net {state.sub_net!r}"
            )
        ctx.net_stack.append((sub.id, state_id))
        ctx.current_state = sub.start_state.id

    def is_complete(self, ctx: "ExecutionContext", state_id: str) -> bool:
        return (ctx.current_net_id, state_id) in ctx.completed_composites


@dataclass
class ExecutionContext:
    """Mutable execution state for one logical thread."""

    net: GoalNet
    registry: TaskRegistry
    current_state: str = ""
    blackboard: dict[str, Any] = field(default_factory=dict)
    path_rewards: dict[str, float] = field(default_factory=dict)
    trace: list[TraceRecord] = field(default_factory=list)
    net_stack: list[tuple[str, str]] = field(default_factory=list)
    pending_activations: deque[str] = field(default_factory=deque)
    completed_composites: set[tuple[str, str]] = field(default_factory=set)
    task_progress: dict[tuple[str, str], int] = field(default_factory=dict)
    rng: random.Random = field(default_factory=lambda: random.Random(0))
    now: float = 0.0
    thread_name: str = ""
    composite_policy: CompositePolicy = field(default_factory=InlineComposites)

    def __post_init__(self) -> None:
        if not self.current_state:
            self.current_state = self.net.start_state.id

    @property
    def current_net_id(self) -> str:
        return self.net_stack[-1][0] if self.net_stack else self.net.id

    @property
    def current_net(self) -> GoalNet:
        return self.net.all_nets()[self.current_net_id]

    def state_obj(self) -> GoalState:
        return self.current_net.states[self.current_state]

    def at_terminal(self) -> bool:
        return not self.net_stack and self.state_obj().is_end

    def reward_of(self, state_id: str) -> float:
        if state_id in self.path_rewards:
            return self.path_rewards[state_id]
        return self.current_net.states[state_id].reward

    def record(
        self,
        state_from: str,
        transition: str,
        task: str,
        outcome: str,
        emotions: list[dict] | None = None,
    ) -> TraceRecord:
        rec = TraceRecord(
            step=len(self.trace),
            net=self.current_net_id,
            state_from=state_from,
            transition=transition,
            task=task,
            outcome=outcome,
            timestamp=round(self.now, 6),
            thread=self.thread_name,
            emotions=emotions or [],
        )
        self.trace.append(rec)
        return rec


# --- goal and action selection -------------------------------------------------


def _best_path_reward(
    net: GoalNet, start: str, reward: Callable[[str], float]
) -> float:
    """Max sum of state rewards over simple paths from ``start`` to any end."""
    ends = net.end_states
    successors: dict[str, list[str]] = {}
    for t in net.transitions.values():
        for pre in t.pre_states:
            successors.setdefault(pre, []).extend(t.post_states)

    best = float("-inf")

    def walk(state: str, seen: frozenset[str], total: float) -> None:
        nonlocal best
        if state in ends:
            best = max(best, total)
            # An end state may still have successors; keep exploring.
        for nxt in successors.get(state, []):
            if nxt not in seen:
                walk(nxt, seen | {nxt}, total + reward(nxt))

    walk(start, frozenset({start}), reward(start))
    return best


def select_next_goal(ctx: ExecutionContext, candidates: Iterable[GoalState]) -> GoalState:
    """The candidate maximizing aggregated path reward; ties break toward the
    lowest state id."""
    candidates = list(candidates)
    if not candidates:
        if ctx.state_obj().is_end:
            raise NoCandidate("no candidates: already at an end state")
        raise NoCandidate(f"no candidate goals from state {ctx.current_state!r}")
    net = ctx.current_net
    scored = [
        (-_best_path_reward(net, c.id, ctx.reward_of), c.id, c) for c in candidates
    ]
    scored.sort(key=lambda item: (item[0], item[1]))
    return scored[0][2]


def select_action(t: Transition, ctx: ExecutionContext) -> str:
    """Next task to execute while crossing ``t`` under its strategy."""
    if not t.task_list:
        raise NoRuleFired(f"transition {t.id!r} has no tasks")
    if t.selection_strategy is SelectionStrategy.SEQUENTIAL:
        progress = ctx.task_progress.get((ctx.current_net_id, t.id), 0)
        if progress >= len(t.task_list):
            progress = 0
        return t.task_list[progress]
    if t.selection_strategy is SelectionStrategy.RULE_BASED:
        matches = [r.choose for r in t.task_rules() if r.when.holds(ctx.blackboard)]
        unique = sorted(set(matches))
        if not unique:
            raise NoRuleFired(f"transition {t.id!r}: no task rule fired")
        if len(unique) > 1:
            raise AmbiguousRule(f"transition {t.id!r}: task rules chose {unique}")
        return unique[0]
    weights = t.probabilities or {}
    draw = ctx.rng.random()
    cumulative = 0.0
    for task in t.task_list:
        cumulative += weights.get(task, 0.0)
        if draw < cumulative:
            return task
    return t.task_list[-1]


def _choose_post_state(t: Transition, ctx: ExecutionContext) -> str:
    if len(t.post_states) == 1:
        return t.post_states[0]
    state_rules = t.state_rules()
    if state_rules:
        matches = [r.choose for r in state_rules if r.when.holds(ctx.blackboard)]
        unique = sorted(set(matches))
        if not unique:
            raise NoRuleFired(f"transition {t.id!r}: no choice rule fired")
        if len(unique) > 1:
            raise AmbiguousRule(f"transition {t.id!r}: choice rules selected {unique}")
        return unique[0]
    net = ctx.current_net
    return select_next_goal(ctx, [net.states[sid] for sid in t.post_states]).id


# --- stepping --------------------------------------------------------------------


def _enabled_transitions(ctx: ExecutionContext) -> list[Transition]:
    net = ctx.current_net
    state = ctx.state_obj()
    out = []
    for t in sorted(net.transitions.values(), key=lambda t: t.id):
        if ctx.current_state not in t.pre_states:
            continue
        if t.trigger is not None and not t.trigger.holds(ctx.blackboard):
            continue
        if state.kind is GoalKind.COMPOSITE:
            if not ctx.composite_policy.is_complete(ctx, ctx.current_state):
                continue
            if ctx.pending_activations:
                continue
        out.append(t)
    return out


def _has_outgoing(ctx: ExecutionContext) -> bool:
    return any(
        ctx.current_state in t.pre_states for t in ctx.current_net.transitions.values()
    )


def _invoke(ctx: ExecutionContext, task: str) -> TaskResult:
    hook = ctx.registry.resolve(task)
    result = hook(ctx)
    if result is None or result is True:
        return TaskResult.ok()
    if result is False:
        return TaskResult.fail("task returned False")
    return result


def _fire_fork(ctx: ExecutionContext, transitions: list[Transition]) -> ExecutionContext:
    state_from = ctx.current_state
    targets: list[str] = []
    for t in transitions:
        if len(t.post_states) != 1 or len(t.task_list) > 1:
            raise AmbiguousRule(
                f"fork transition {t.id!r} must have one post state and at most one task"
            )
        task = t.task_list[0] if t.task_list else ""
        if task:
            result = _invoke(ctx, task)
            if not result.success:
                ctx.record(state_from, t.id, task, "failure")
                raise TaskFailure(task, result.reason)
        ctx.record(state_from, t.id, task, "fork_activated")
        targets.append(t.post_states[0])
    ctx.current_state = targets[0]
    ctx.pending_activations.extend(targets[1:])
    return ctx


def step(ctx: ExecutionContext) -> ExecutionContext:
    """Advance the context by one step, appending trace records.

    Handles sub-net pops, composite expansion, fork firing, focus switches
    between forked branches, and single transition firings (one task per
    step; the state advances when the transition's last task succeeds).
    """
    if ctx.at_terminal():
        raise NoCandidate("net already reached a terminal end state")
    state = ctx.state_obj()

    # Returning from a completed sub-net.
    if ctx.net_stack and state.is_end:
        sub_id, return_state = ctx.net_stack.pop()
        ctx.current_state = return_state
        ctx.completed_composites.add((ctx.current_net_id, return_state))
        ctx.record(state.id, "", "", "subnet_complete")
        return ctx

    # Entering a composite state activates its sub-net.  An already-activated
    # but incomplete composite raises WouldBlock from the policy instead of
    # re-recording.
    if (
        state.kind is GoalKind.COMPOSITE
        and not ctx.composite_policy.is_complete(ctx, state.id)
    ):
        ctx.composite_policy.on_activate(ctx, state.id)
        ctx.record(state.id, "", "", "subnet_enter")
        return ctx

    enabled = _enabled_transitions(ctx)
    if not enabled:
        if ctx.pending_activations:
            previous = ctx.current_state
            ctx.current_state = ctx.pending_activations.popleft()
            ctx.record(previous, "", "", "switch_focus")
            return ctx
        if _has_outgoing(ctx):
            raise WouldBlock(
                f"state {ctx.current_state!r}: transitions exist but none are enabled"
            )
        raise NoCandidate(f"state {ctx.current_state!r} has no outgoing transitions")

    if len(enabled) > 1:
        all_composite = all(
            ctx.current_net.states[post].kind is GoalKind.COMPOSITE
            for t in enabled
            for post in t.post_states
        )
        if not all_composite:
            raise AmbiguousRule(
                f"state {ctx.current_state!r}: {len(enabled)} transitions enabled "
                "outside the composite fork pattern"
            )
        return _fire_fork(ctx, enabled)

    t = enabled[0]
    state_from = ctx.current_state
    if not t.task_list:
        ctx.current_state = _choose_post_state(t, ctx)
        ctx.record(state_from, t.id, "", "success")
        return ctx
    task = select_action(t, ctx)
    result = _invoke(ctx, task)
    if not result.success:
        ctx.record(state_from, t.id, task, "failure")
        raise TaskFailure(task, result.reason)

    key = (ctx.current_net_id, t.id)
    crossing_done = True
    if t.selection_strategy is SelectionStrategy.SEQUENTIAL and len(t.task_list) > 1:
        progress = ctx.task_progress.get(key, 0) + 1
        if progress < len(t.task_list):
            ctx.task_progress[key] = progress
            crossing_done = False
        else:
            ctx.task_progress[key] = 0
    if crossing_done:
        ctx.current_state = _choose_post_state(t, ctx)
        ctx.record(state_from, t.id, task, "success")
    else:
        ctx.record(state_from, t.id, task, "task_done")
    return ctx


def run_to_completion(
    net: GoalNet,
    registry: TaskRegistry,
    limits: dict | None = None,
    *,
    blackboard: dict | None = None,
    seed: int = 0,
    tick_seconds: float = DEFAULT_TICK_SECONDS,
) -> list[TraceRecord]:
    """Step a fresh context until the root net ends or the step budget runs
    out; raises StepLimitExceeded (with the trace attached) on the latter."""
    max_steps = int((limits or {}).get("max_steps", 1000))
    if max_steps <= 0:
        raise ValueError("max_steps must be positive")
    missing = registry.missing_for(net)
    if missing:
        raise UnresolvedTask(f"tasks {sorted(missing)} are not registered")
    ctx = ExecutionContext(
        net=net,
        registry=registry,
        blackboard=dict(blackboard or {}),
        rng=random.Random(seed),
    )
    while not ctx.at_terminal():
        if len(ctx.trace) >= max_steps:
            raise StepLimitExceeded(
                f"no end state after {max_steps} trace records", trace=ctx.trace
            )
        ctx.now = round(len(ctx.trace) * tick_seconds, 6)
        step(ctx)
    return ctx.trace
