"""Teacher-authored learning-goal catalogs and student learning paths.

A catalog arranges topics into difficulty-levelled learning goals with task
lists.  It compiles into an executable goal net (topics become composite
goals, levels become ordered atomic sub-goals), and students assemble their
own paths from the goal pool, validated against prerequisites and compiled
into a personalized net.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from tagent.errors import (
    DuplicateSelection,
    ParseError,
    PrerequisiteViolation,
    ValidationError,
)
from tagent.goalnet import (
    GoalKind,
    GoalNet,
    GoalState,
    Transition,
    validate_goalnet,
)


@dataclass(frozen=True)
class LearningGoal:
    id: str
    topic: str
    difficulty: int
    task_list: tuple[str, ...]
    covered_points: frozenset[int]
    prerequisites: frozenset[str] = frozenset()
    description: str = ""

    def __post_init__(self) -> None:
        if self.difficulty < 1:
            raise ValueError("difficulty must be a positive integer")


@dataclass
class GoalCatalog:
    catalog_id: str
    root_description: str
    topics: list[str]
    goals: dict[str, LearningGoal] = field(default_factory=dict)

    def goals_for_topic(self, topic: str) -> list[LearningGoal]:
        chosen = [g for g in self.goals.values() if g.topic == topic]
        return sorted(chosen, key=lambda g: (g.difficulty, g.id))

    def all_points(self) -> set[int]:
        points: set[int] = set()
        for goal in self.goals.values():
            points |= goal.covered_points
        return points


@dataclass(frozen=True)
class LearningPath:
    goal_ids: tuple[str, ...]


def _default_prerequisites(
    goal_raw: dict, goals_by_topic_level: dict[tuple[str, int], str]
) -> frozenset[str]:
    # Level n implicitly requires level n-1 within the same topic.
    if "prerequisites" in goal_raw:
        return frozenset(goal_raw["prerequisites"])
    previous = goals_by_topic_level.get((goal_raw["topic"], int(goal_raw["difficulty"]) - 1))
    return frozenset({previous}) if previous else frozenset()


def _check_acyclic(goals: dict[str, LearningGoal]) -> None:
    visiting: set[str] = set()
    done: set[str] = set()

    def visit(goal_id: str, chain: tuple[str, ...]) -> None:
        if goal_id in done:
            return
        if goal_id in visiting:
            raise ValidationError(
                "cyclic prerequisites: " + " -> ".join(chain + (goal_id,))
            )
        visiting.add(goal_id)
        for dep in sorted(goals[goal_id].prerequisites):
            visit(dep, chain + (goal_id,))
        visiting.discard(goal_id)
        done.add(goal_id)

    for goal_id in sorted(goals):
        visit(goal_id, ())


def load_catalog(
    source: str,
    point_catalog: set[int] | None = None,
    task_names: set[str] | None = None,
) -> GoalCatalog:
    """Parse and validate a learning-goal catalog document."""
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid catalog document: {exc}") from exc
    if "catalog" not in doc or "goals" not in doc:
        raise ParseError("catalog document needs 'catalog' and 'goals' keys")

    topics = list(doc.get("topics", []))
    by_topic_level: dict[tuple[str, int], str] = {}
    for raw in doc["goals"]:
        by_topic_level[(raw["topic"], int(raw["difficulty"]))] = raw["id"]

    goals: dict[str, LearningGoal] = {}
    for raw in doc["goals"]:
        goal = LearningGoal(
            id=raw["id"],
            topic=raw["topic"],
            difficulty=int(raw["difficulty"]),
            task_list=tuple(raw.get("tasks", [])),
            covered_points=frozenset(int(p) for p in raw.get("covered_points", [])),
            prerequisites=_default_prerequisites(raw, by_topic_level),
            description=raw.get("description", ""),
        )
        if goal.id in goals:
            raise ValidationError(f"duplicate goal id {goal.id!r}")
        goals[goal.id] = goal

    for goal in goals.values():
        if goal.topic not in topics:
            raise ValidationError(f"goal {goal.id!r} references unknown topic {goal.topic!r}")
        for dep in goal.prerequisites:
            if dep not in goals:
                raise ValidationError(
                    f"goal {goal.id!r} requires unknown goal {dep!r}"
                )
        if point_catalog is not None:
            unknown = goal.covered_points - point_catalog
            if unknown:
                raise ValidationError(
                    f"goal {goal.id!r} covers unknown knowledge points {sorted(unknown)}"
                )
        if task_names is not None:
            missing = set(goal.task_list) - task_names
            if missing:
                raise ValidationError(
                    f"goal {goal.id!r} uses unknown task names {sorted(missing)}"
                )
    _check_acyclic(goals)
    return GoalCatalog(
        catalog_id=doc["catalog"],
        root_description=doc.get("root_description", ""),
        topics=topics,
        goals=goals,
    )


# --- compilation ---------------------------------------------------------------


def _chain_net(
    net_id: str,
    root_description: str,
    goal_sequence: list[LearningGoal],
) -> GoalNet:
    """A start -> g1 -> ... -> gN -> end net; each goal's task list rides on
    its outbound transition."""
    states: dict[str, GoalState] = {
        "s_root": GoalState("s_root", description=root_description, kind=GoalKind.ROOT),
        "s_start": GoalState("s_start", is_start=True),
        "s_end": GoalState("s_end", is_end=True),
    }
    transitions: dict[str, Transition] = {}
    for goal in goal_sequence:
        states[goal.id] = GoalState(goal.id, description=goal.description)
    transitions["t00_enter"] = Transition(
        id="t00_enter",
        pre_states=frozenset({"s_start"}),
        post_states=(goal_sequence[0].id,),
    )
    for index, goal in enumerate(goal_sequence):
        nxt = goal_sequence[index + 1].id if index + 1 < len(goal_sequence) else "s_end"
        tid = f"t{index + 1:02d}_work_{goal.id}"
        transitions[tid] = Transition(
            id=tid,
            pre_states=frozenset({goal.id}),
            post_states=(nxt,),
            task_list=goal.task_list,
        )
    net = GoalNet(id=net_id, states=states, transitions=transitions)
    net.arcs = [
        (src, t.id, dst)
        for t in sorted(net.transitions.values(), key=lambda t: t.id)
        for src in sorted(t.pre_states)
        for dst in t.post_states
    ]
    return net


def compile_catalog(catalog: GoalCatalog) -> GoalNet:
    """Compile a catalog into an executable net: topics become composite
    goals, difficulty levels become ordered atomic sub-goals."""
    states: dict[str, GoalState] = {
        "s_root": GoalState(
            "s_root", description=catalog.root_description, kind=GoalKind.ROOT
        ),
        "s_start": GoalState("s_start", is_start=True),
        "s_end": GoalState("s_end", is_end=True),
    }
    transitions: dict[str, Transition] = {}
    subnets: dict[str, GoalNet] = {}
    branches: dict[str, str] = {}
    previous = "s_start"
    for index, topic in enumerate(catalog.topics):
        sub_id = f"{catalog.catalog_id}__{topic}"
        goal_sequence = catalog.goals_for_topic(topic)
        if not goal_sequence:
            raise ValidationError(f"topic {topic!r} has no goals")
        subnets[sub_id] = _chain_net(sub_id, f"pursue topic {topic}", goal_sequence)
        states[topic] = GoalState(
            topic, description=f"topic {topic}", kind=GoalKind.COMPOSITE, sub_net=sub_id
        )
        branches[topic] = sub_id
        tid = f"t{index:02d}_to_{topic}"
        transitions[tid] = Transition(
            id=tid, pre_states=frozenset({previous}), post_states=(topic,)
        )
        previous = topic
    tid = f"t{len(catalog.topics):02d}_finish"
    transitions[tid] = Transition(
        id=tid, pre_states=frozenset({previous}), post_states=("s_end",)
    )
    net = GoalNet(
        id=catalog.catalog_id,
        states=states,
        transitions=transitions,
        branches=branches,
        subnets=subnets,
    )
    net.arcs = [
        (src, t.id, dst)
        for t in sorted(net.transitions.values(), key=lambda t: t.id)
        for src in sorted(t.pre_states)
        for dst in t.post_states
    ]
    validate_goalnet(net, require_subnets=True)
    return net


# --- learning paths ---------------------------------------------------------------


def assemble_path(catalog: GoalCatalog, selections: list[str]) -> LearningPath:
    """Validate a student's goal ordering against the catalog."""
    seen: set[str] = set()
    for goal_id in selections:
        if goal_id not in catalog.goals:
            raise ValidationError(f"unknown goal {goal_id!r}")
        if goal_id in seen:
            raise DuplicateSelection(f"goal {goal_id!r} selected twice")
        goal = catalog.goals[goal_id]
        for dep in sorted(goal.prerequisites):
            if dep not in seen:
                raise PrerequisiteViolation(goal_id, dep)
        seen.add(goal_id)
    return LearningPath(goal_ids=tuple(selections))


def compile_path(catalog: GoalCatalog, path: LearningPath) -> GoalNet:
    """Compile a validated path into a personalized net whose goal order is
    exactly the student's selection."""
    sequence = [catalog.goals[gid] for gid in path.goal_ids]
    if not sequence:
        raise ValidationError("cannot compile an empty learning path")
    net = _chain_net(f"{catalog.catalog_id}__path", "personalized learning path", sequence)
    validate_goalnet(net)
    return net
