"""Goal net structure, file schema, and validation.

The file format is JSON with top-level keys ``net``, ``states``,
``transitions``, ``arcs``, ``branches`` and optionally ``subnets`` for
embedded child nets; see docs/goalnet-format.md for the grammar.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable

from tagent.errors import ParseError, ValidationError

FORMAT_VERSION = "goalnet/1"

PROBABILITY_TOLERANCE = 1e-9


class GoalKind(str, Enum):
    ROOT = "root"
    ATOMIC = "atomic"
    COMPOSITE = "composite"


class SelectionStrategy(str, Enum):
    SEQUENTIAL = "sequential"
    RULE_BASED = "rule_based"
    PROBABILISTIC = "probabilistic"


@dataclass(frozen=True)
class GoalState:
    id: str
    description: str = ""
    kind: GoalKind = GoalKind.ATOMIC
    sub_net: str | None = None
    is_start: bool = False
    is_end: bool = False
    reward: float = 1.0


_OPS = ("equals", "not_equals", "exists", "gt", "ge", "lt", "le")


@dataclass(frozen=True)
class Predicate:
    """Blackboard condition: equality, existence, or numeric comparison."""

    key: str
    op: str = "exists"
    value: Any = None

    def __post_init__(self) -> None:
        if self.op not in _OPS:
            raise ValueError(f"unknown predicate op {self.op!r}")

    def holds(self, blackboard: dict) -> bool:
        if self.op == "exists":
            return self.key in blackboard
        if self.key not in blackboard:
            return False
        current = blackboard[self.key]
        if self.op == "equals":
            return current == self.value
        if self.op == "not_equals":
            return current != self.value
        try:
            if self.op == "gt":
                return current > self.value
            if self.op == "ge":
                return current >= self.value
            if self.op == "lt":
                return current < self.value
            return current <= self.value
        except TypeError:
            return False


@dataclass(frozen=True)
class ChoiceRule:
    when: Predicate
    choose: str


@dataclass(frozen=True)
class Transition:
    """Task-bearing edge between goal states.

    ``rules`` entries whose target names a post state steer choice
    transitions; entries naming a task steer rule-based action selection.
    """

    id: str
    pre_states: frozenset[str]
    post_states: tuple[str, ...]
    task_list: tuple[str, ...] = ()
    description: str = ""
    trigger: Predicate | None = None
    selection_strategy: SelectionStrategy = SelectionStrategy.SEQUENTIAL
    rules: tuple[ChoiceRule, ...] = ()
    probabilities: dict[str, float] | None = None

    def state_rules(self) -> tuple[ChoiceRule, ...]:
        posts = set(self.post_states)
        return tuple(r for r in self.rules if r.choose in posts)

    def task_rules(self) -> tuple[ChoiceRule, ...]:
        tasks = set(self.task_list)
        return tuple(r for r in self.rules if r.choose in tasks)


@dataclass
class GoalNet:
    """One validated net plus any embedded sub-nets."""

    id: str
    states: dict[str, GoalState]
    transitions: dict[str, Transition]
    arcs: list[tuple[str, str, str]] = field(default_factory=list)
    branches: dict[str, str] = field(default_factory=dict)
    subnets: dict[str, "GoalNet"] = field(default_factory=dict)

    @property
    def start_state(self) -> GoalState:
        return next(s for s in self.states.values() if s.is_start)

    @property
    def end_states(self) -> set[str]:
        return {s.id for s in self.states.values() if s.is_end}

    @property
    def root_state(self) -> GoalState:
        return next(s for s in self.states.values() if s.kind is GoalKind.ROOT)

    def resolve_subnet(self, net_id: str) -> "GoalNet | None":
        return self.subnets.get(net_id)

    def all_nets(self) -> dict[str, "GoalNet"]:
        """This net and every embedded sub-net, keyed by id."""
        nets = {self.id: self}
        for sub in self.subnets.values():
            nets.update(sub.all_nets())
        return nets


# --- parsing ----------------------------------------------------------------


def _parse_predicate(raw: dict) -> Predicate:
    return Predicate(key=raw["key"], op=raw.get("op", "exists"), value=raw.get("value"))


def _parse_state(raw: dict) -> GoalState:
    try:
        return GoalState(
            id=raw["id"],
            description=raw.get("description", ""),
            kind=GoalKind(raw.get("kind", "atomic")),
            sub_net=raw.get("sub_net"),
            is_start=bool(raw.get("is_start", False)),
            is_end=bool(raw.get("is_end", False)),
            reward=float(raw.get("reward", 1.0)),
        )
    except (KeyError, ValueError) as exc:
        raise ParseError(f"malformed state entry {raw!r}: {exc}") from exc


def _parse_transition(raw: dict) -> Transition:
    try:
        trigger = _parse_predicate(raw["trigger"]) if raw.get("trigger") else None
        rules = tuple(
            ChoiceRule(when=_parse_predicate(r["when"]), choose=r["choose"])
            for r in raw.get("rules", [])
        )
        probabilities = raw.get("probabilities")
        return Transition(
            id=raw["id"],
            description=raw.get("description", ""),
            trigger=trigger,
            task_list=tuple(raw.get("tasks", [])),
            pre_states=frozenset(raw["pre"]),
            post_states=tuple(raw["post"]),
            selection_strategy=SelectionStrategy(raw.get("strategy", "sequential")),
            rules=rules,
            probabilities=dict(probabilities) if probabilities else None,
        )
    except (KeyError, ValueError) as exc:
        raise ParseError(f"malformed transition entry {raw!r}: {exc}") from exc


def parse_goalnet(document: dict) -> GoalNet:
    """Build an (unvalidated) GoalNet from a parsed document."""
    if not isinstance(document, dict) or "net" not in document:
        raise ParseError("goal net document must be an object with a 'net' key")
    states = {}
    for raw in document.get("states", []):
        state = _parse_state(raw)
        if state.id in states:
            raise ParseError(f"duplicate state id {state.id!r}")
        states[state.id] = state
    transitions = {}
    for raw in document.get("transitions", []):
        transition = _parse_transition(raw)
        if transition.id in transitions:
            raise ParseError(f"duplicate transition id {transition.id!r}")
        transitions[transition.id] = transition
    arcs = [tuple(arc) for arc in document.get("arcs", [])]
    for arc in arcs:
        if len(arc) != 3:
            raise ParseError(f"arc {arc!r} must be [state, transition, state]")
    branches = {b["state"]: b["sub_net"] for b in document.get("branches", [])}
    subnets = {}
    for raw in document.get("subnets", []):
        sub = parse_goalnet(raw)
        subnets[sub.id] = sub
    return GoalNet(
        id=document["net"],
        states=states,
        transitions=transitions,
        arcs=arcs,
        branches=branches,
        subnets=subnets,
    )


def load_goalnet(source: str, subnets: Iterable[GoalNet] = ()) -> GoalNet:
    """Parse and validate a goal net document (JSON text).

    Extra sub-nets can be supplied for branch resolution on top of any nets
    embedded in the document itself.
    """
    try:
        document = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid goal net document: {exc}") from exc
    net = parse_goalnet(document)
    for sub in subnets:
        net.subnets.setdefault(sub.id, sub)
    validate_goalnet(net)
    return net


# --- validation ---------------------------------------------------------------


def _check_counts(net: GoalNet) -> None:
    roots = [s for s in net.states.values() if s.kind is GoalKind.ROOT]
    starts = [s for s in net.states.values() if s.is_start]
    ends = [s for s in net.states.values() if s.is_end]
    if len(roots) != 1:
        raise ValidationError(f"net {net.id!r} must have exactly one root state, found {len(roots)}")
    if len(starts) != 1:
        raise ValidationError(f"net {net.id!r} must have exactly one start state, found {len(starts)}")
    if not ends:
        raise ValidationError(f"net {net.id!r} must have at least one end state")


def _check_states(net: GoalNet) -> None:
    for state in net.states.values():
        if (state.kind is GoalKind.COMPOSITE) != (state.sub_net is not None):
            raise ValidationError(
                f"state {state.id!r}: sub_net must be present iff kind is composite"
            )
    for state_id, sub_id in net.branches.items():
        state = net.states.get(state_id)
        if state is None:
            raise ValidationError(f"branch references unknown state {state_id!r}")
        if state.kind is not GoalKind.COMPOSITE:
            raise ValidationError(f"branch state {state_id!r} is not composite")
        if state.sub_net != sub_id:
            raise ValidationError(
                f"branch ({state_id!r} -> {sub_id!r}) disagrees with the state's sub_net"
            )


def _check_transitions(net: GoalNet) -> None:
    for t in net.transitions.values():
        if not t.pre_states or not t.post_states:
            raise ValidationError(f"transition {t.id!r}: pre and post states must be nonempty")
        for sid in t.pre_states | set(t.post_states):
            if sid not in net.states:
                raise ValidationError(
                    f"dangling arc: transition {t.id!r} references unknown state {sid!r}"
                )
        if t.selection_strategy is SelectionStrategy.PROBABILISTIC:
            if not t.probabilities:
                raise ValidationError(f"transition {t.id!r}: probabilistic strategy needs weights")
            unknown = set(t.probabilities) - set(t.task_list)
            if unknown:
                raise ValidationError(
                    f"transition {t.id!r}: weights for unknown tasks {sorted(unknown)}"
                )
            total = sum(t.probabilities.values())
            if abs(total - 1.0) > PROBABILITY_TOLERANCE:
                raise ValidationError(
                    f"transition {t.id!r}: weights sum to {total}, expected 1"
                )
        ambiguous = set(t.post_states) & set(t.task_list)
        if ambiguous and t.rules:
            raise ValidationError(
                f"transition {t.id!r}: names {sorted(ambiguous)} are both states and tasks"
            )


def _check_arcs(net: GoalNet) -> None:
    for src, tid, dst in net.arcs:
        t = net.transitions.get(tid)
        if t is None:
            raise ValidationError(f"dangling arc: unknown transition {tid!r}")
        if src not in net.states or dst not in net.states:
            raise ValidationError(f"dangling arc: ({src!r}, {tid!r}, {dst!r})")
        if src not in t.pre_states or dst not in t.post_states:
            raise ValidationError(
                f"arc ({src!r}, {tid!r}, {dst!r}) disagrees with the transition's pre/post"
            )


def _check_choices(net: GoalNet) -> None:
    # A state may fan out through several transitions only when all of them
    # enter composite states (the fork pattern); everything else must use a
    # single choice transition so execution stays unambiguous.
    outgoing: dict[str, list[Transition]] = {}
    for t in net.transitions.values():
        for sid in t.pre_states:
            outgoing.setdefault(sid, []).append(t)
    for sid, transitions in outgoing.items():
        if len(transitions) < 2:
            continue
        targets_composite = all(
            net.states[post].kind is GoalKind.COMPOSITE
            for t in transitions
            for post in t.post_states
        )
        if not targets_composite:
            raise ValidationError(
                f"state {sid!r} has {len(transitions)} outgoing transitions outside "
                "the composite fork pattern"
            )


def _check_reachability(net: GoalNet) -> None:
    start = next((s for s in net.states.values() if s.is_start), None)
    if start is None:
        return
    reachable = {start.id}
    frontier = [start.id]
    while frontier:
        current = frontier.pop()
        for t in net.transitions.values():
            if current in t.pre_states:
                for post in t.post_states:
                    if post not in reachable:
                        reachable.add(post)
                        frontier.append(post)
    for state in net.states.values():
        if state.kind is GoalKind.ROOT:
            continue
        if state.id not in reachable:
            raise ValidationError(f"state {state.id!r} is unreachable from the start state")
    if not net.end_states & reachable:
        raise ValidationError(f"net {net.id!r}: no end state is reachable from the start")


def _check_branch_dag(net: GoalNet) -> None:
    nets = net.all_nets()
    visiting: set[str] = set()
    done: set[str] = set()

    def visit(net_id: str, chain: tuple[str, ...]) -> None:
        if net_id in done:
            return
        if net_id in visiting:
            cycle = " -> ".join(chain + (net_id,))
            raise ValidationError(f"cyclic branch: {cycle}")
        visiting.add(net_id)
        current = nets.get(net_id)
        if current is not None:
            for sub_id in current.branches.values():
                visit(sub_id, chain + (net_id,))
        visiting.discard(net_id)
        done.add(net_id)

    visit(net.id, ())


def validate_goalnet(net: GoalNet, require_subnets: bool = False) -> None:
    """Check every structural invariant; raises ValidationError naming the
    violated one.  With ``require_subnets`` every branch target must resolve."""
    for candidate in net.all_nets().values():
        _check_counts(candidate)
        _check_states(candidate)
        _check_transitions(candidate)
        _check_arcs(candidate)
        _check_choices(candidate)
        _check_reachability(candidate)
    _check_branch_dag(net)
    if require_subnets:
        nets = net.all_nets()
        for candidate in nets.values():
            for sub_id in candidate.branches.values():
                if sub_id not in nets:
                    raise ValidationError(
                        f"net {candidate.id!r}: branch target {sub_id!r} is not loaded"
                    )


# --- serialization --------------------------------------------------------------


def _predicate_dict(p: Predicate) -> dict:
    out: dict[str, Any] = {"key": p.key, "op": p.op}
    if p.value is not None:
        out["value"] = p.value
    return out


def serialize_goalnet(net: GoalNet) -> dict:
    """Stable document form; loading it back yields a structurally equal net."""
    states = []
    for state in sorted(net.states.values(), key=lambda s: s.id):
        entry: dict[str, Any] = {"id": state.id, "kind": state.kind.value}
        if state.description:
            entry["description"] = state.description
        if state.sub_net:
            entry["sub_net"] = state.sub_net
        if state.is_start:
            entry["is_start"] = True
        if state.is_end:
            entry["is_end"] = True
        if state.reward != 1.0:
            entry["reward"] = state.reward
        states.append(entry)
    transitions = []
    for t in sorted(net.transitions.values(), key=lambda t: t.id):
        entry = {
            "id": t.id,
            "pre": sorted(t.pre_states),
            "post": list(t.post_states),
        }
        if t.description:
            entry["description"] = t.description
        if t.task_list:
            entry["tasks"] = list(t.task_list)
        if t.trigger is not None:
            entry["trigger"] = _predicate_dict(t.trigger)
        if t.selection_strategy is not SelectionStrategy.SEQUENTIAL:
            entry["strategy"] = t.selection_strategy.value
        if t.rules:
            entry["rules"] = [
                {"when": _predicate_dict(r.when), "choose": r.choose} for r in t.rules
            ]
        if t.probabilities:
            entry["probabilities"] = dict(sorted(t.probabilities.items()))
        transitions.append(entry)
    document: dict[str, Any] = {
        "format": FORMAT_VERSION,
        "net": net.id,
        "states": states,
        "transitions": transitions,
        "arcs": [list(arc) for arc in sorted(net.arcs)],
        "branches": [
            {"state": sid, "sub_net": sub} for sid, sub in sorted(net.branches.items())
        ],
    }
    if net.subnets:
        document["subnets"] = [
            serialize_goalnet(sub) for _, sub in sorted(net.subnets.items())
        ]
    return document
