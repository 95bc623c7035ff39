"""Taught knowledge: concept maps, logic rules, and plan inference.

Concept maps submitted by the student are syntax-checked, compiled into
conjunctive logic rules through an authored relation vocabulary, and stored
in the knowledge base.  Forward chaining over taught plus built-in rules
derives action plans; panel selection and stall hints drive what to teach
next.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from tagent.errors import UnknownPoint, UnknownRelation

STALL_HINT_SECONDS = 180.0


# --- concept maps -----------------------------------------------------------


@dataclass(frozen=True)
class MapNode:
    id: str
    label: str


@dataclass(frozen=True)
class MapLink:
    source: str
    target: str
    relation: str


@dataclass
class ConceptMap:
    """Student-drawn nodes and labelled links."""

    map_id: str
    nodes: list[MapNode]
    links: list[MapLink]
    topic: str = ""

    @classmethod
    def from_dict(cls, raw: dict) -> "ConceptMap":
        return cls(
            map_id=raw.get("map_id", "map"),
            nodes=[MapNode(n["id"], n["label"]) for n in raw.get("nodes", [])],
            links=[
                MapLink(l["source"], l["target"], l["relation"])
                for l in raw.get("links", [])
            ],
            topic=raw.get("topic", ""),
        )

    def to_dict(self) -> dict:
        return {
            "map_id": self.map_id,
            "topic": self.topic,
            "nodes": [{"id": n.id, "label": n.label} for n in self.nodes],
            "links": [
                {"source": l.source, "target": l.target, "relation": l.relation}
                for l in self.links
            ],
        }


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: Severity
    message: str
    subject: str = ""


def check_syntax(cmap: ConceptMap, vocabulary: "Vocabulary | None" = None) -> list[Diagnostic]:
    """All syntax violations in a map; errors block learning, the isolated
    node check is only a warning."""
    diags: list[Diagnostic] = []
    node_ids = {n.id for n in cmap.nodes}
    seen: set[tuple[str, str, str]] = set()
    linked: set[str] = set()
    for link in cmap.links:
        key = (link.source, link.target, link.relation)
        for endpoint in (link.source, link.target):
            if endpoint not in node_ids:
                diags.append(
                    Diagnostic(
                        "DanglingEndpoint",
                        Severity.ERROR,
                        f"link references undeclared node {endpoint!r}",
                        endpoint,
                    )
                )
        if link.source == link.target:
            diags.append(
                Diagnostic(
                    "SelfLoop",
                    Severity.ERROR,
                    f"node {link.source!r} links to itself",
                    link.source,
                )
            )
        if vocabulary is not None and link.relation not in vocabulary:
            diags.append(
                Diagnostic(
                    "UnknownRelation",
                    Severity.ERROR,
                    f"relation {link.relation!r} not in the vocabulary",
                    link.relation,
                )
            )
        if key in seen:
            diags.append(
                Diagnostic(
                    "DuplicateLink",
                    Severity.ERROR,
                    f"duplicate link {key}",
                    link.relation,
                )
            )
        seen.add(key)
        linked.update((link.source, link.target))
    for node in cmap.nodes:
        if node.id not in linked:
            diags.append(
                Diagnostic(
                    "IsolatedNode",
                    Severity.WARNING,
                    f"node {node.id!r} has no links",
                    node.id,
                )
            )
    return diags


def map_accepted(diagnostics: Iterable[Diagnostic]) -> bool:
    """A map is accepted when it carries no error-severity diagnostics."""
    return all(d.severity is not Severity.ERROR for d in diagnostics)


# --- rules and the vocabulary ------------------------------------------------


class Provenance(str, Enum):
    TAUGHT = "taught"
    BUILT_IN = "built_in"
    AUTHORED = "authored"


@dataclass(frozen=True)
class Rule:
    """Conjunction of premises implying one conclusion.

    Premises keep their authored order so derived plans are deterministic.
    """

    premises: tuple[str, ...]
    conclusion: str
    provenance: Provenance = Provenance.TAUGHT

    def __post_init__(self) -> None:
        if not self.premises:
            raise ValueError("a rule needs at least one premise")
        if self.conclusion in self.premises:
            raise ValueError(f"degenerate rule: {self.conclusion!r} implies itself")


@dataclass(frozen=True)
class RelationTemplate:
    """How one link relation instantiates into rule parts.

    ``premises`` and ``conclusion`` are pattern strings with ``{from}`` and
    ``{to}`` placeholders; links of a conjunctive relation sharing a
    conclusion merge into one multi-premise rule.
    """

    premises: tuple[str, ...]
    conclusion: str
    conjunctive: bool = True


class Vocabulary:
    """Authored relation-label-to-rule-template table."""

    def __init__(self, relations: dict[str, RelationTemplate]) -> None:
        self._relations = dict(relations)

    def __contains__(self, relation: str) -> bool:
        return relation in self._relations

    def template(self, relation: str) -> RelationTemplate:
        tpl = self._relations.get(relation)
        if tpl is None:
            raise UnknownRelation(f"relation {relation!r} not in the vocabulary")
        return tpl

    @classmethod
    def from_dict(cls, raw: dict) -> "Vocabulary":
        relations = {}
        for label, body in raw.get("relations", {}).items():
            relations[label] = RelationTemplate(
                premises=tuple(body.get("premises", ["{from}"])),
                conclusion=body.get("conclusion", "{to}"),
                conjunctive=bool(body.get("conjunctive", True)),
            )
        return cls(relations)


def _instantiate(pattern: str, source_label: str, target_label: str) -> str:
    return pattern.replace("{from}", source_label).replace("{to}", target_label)


def compile_map(cmap: ConceptMap, vocabulary: Vocabulary) -> set[Rule]:
    """Compile an accepted map into taught rules.

    Each link instantiates its relation's template; links of conjunctive
    relations that share a conclusion merge into one multi-premise rule.
    """
    labels = {n.id: n.label for n in cmap.nodes}
    merged: dict[str, list[str]] = {}
    merged_order: list[str] = []
    rules: set[Rule] = set()
    for link in cmap.links:
        tpl = vocabulary.template(link.relation)
        src, dst = labels[link.source], labels[link.target]
        premises = [_instantiate(p, src, dst) for p in tpl.premises]
        conclusion = _instantiate(tpl.conclusion, src, dst)
        if tpl.conjunctive:
            bucket = merged.setdefault(conclusion, [])
            if conclusion not in merged_order:
                merged_order.append(conclusion)
            for p in premises:
                if p not in bucket:
                    bucket.append(p)
        else:
            rules.add(Rule(tuple(premises), conclusion, Provenance.TAUGHT))
    for conclusion in merged_order:
        rules.add(Rule(tuple(merged[conclusion]), conclusion, Provenance.TAUGHT))
    return rules


# --- knowledge base and inference --------------------------------------------


@dataclass
class KnowledgeBase:
    """Rules, ground facts, and the learner-progress bookkeeping.

    ``establishable`` maps leaf predicates the agent can bring about to the
    action that establishes them (entering a door, waiting for rain).
    """

    rules: set[Rule] = field(default_factory=set)
    facts: set[str] = field(default_factory=set)
    establishable: dict[str, str] = field(default_factory=dict)
    learned_points: set[int] = field(default_factory=set)
    mistake_log: list[tuple[int, float]] = field(default_factory=list)
    point_catalog: set[int] = field(default_factory=set)

    def add_rules(self, rules: Iterable[Rule]) -> None:
        self.rules.update(rules)

    def mark_learned(self, points: Iterable[int]) -> None:
        points = set(points)
        if self.point_catalog and not points <= self.point_catalog:
            unknown = points - self.point_catalog
            raise UnknownPoint(f"points {sorted(unknown)} not in the catalog")
        self.learned_points.update(points)

    def record_mistake(self, point: int, at: float) -> None:
        self.mistake_log.append((point, at))

    def mistake_points(self) -> set[int]:
        return {p for p, _ in self.mistake_log}


class NoSolution:
    """Sentinel result: the goal is not derivable from current knowledge."""

    def __repr__(self) -> str:  # pragma: no cover
        return "NoSolution()"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NoSolution)

    def __hash__(self) -> int:
        return hash("NoSolution")


@dataclass
class ActionPlan:
    """Ordered establishing actions plus the rule derivation behind them."""

    steps: list[str]
    justification: list[tuple[str, tuple[str, ...]]]


def closure(kb: KnowledgeBase) -> set[str]:
    """Forward-chaining fixpoint over facts plus establishable premises."""
    derived = set(kb.facts) | set(kb.establishable)
    changed = True
    while changed:
        changed = False
        for rule in kb.rules:
            if rule.conclusion in derived:
                continue
            if all(p in derived for p in rule.premises):
                derived.add(rule.conclusion)
                changed = True
    return derived


def forward_chain(kb: KnowledgeBase, goal: str) -> ActionPlan | NoSolution:
    """Derive a plan establishing ``goal``, or NoSolution.

    The plan's steps are the establishing actions of the leaf premises used
    by the derivation, in left-to-right derivation order; the justification
    records each applied rule.
    """
    known = closure(kb)
    if goal not in known:
        return NoSolution()

    # Rebuild one support per derived predicate, deterministically: iterate
    # rules in a stable order and keep the first derivation found.
    support: dict[str, Rule] = {}
    derived = set(kb.facts) | set(kb.establishable)
    ordered_rules = sorted(kb.rules, key=lambda r: (r.conclusion, r.premises))
    changed = True
    while changed:
        changed = False
        for rule in ordered_rules:
            if rule.conclusion in derived:
                continue
            if all(p in derived for p in rule.premises):
                derived.add(rule.conclusion)
                support[rule.conclusion] = rule
                changed = True

    steps: list[str] = []
    justification: list[tuple[str, tuple[str, ...]]] = []
    visited: set[str] = set()

    def establish(predicate: str) -> None:
        if predicate in visited:
            return
        visited.add(predicate)
        if predicate in kb.facts:
            return
        rule = support.get(predicate)
        if rule is not None:
            for premise in rule.premises:
                establish(premise)
            justification.append((rule.conclusion, rule.premises))
            return
        action = kb.establishable.get(predicate)
        if action is not None and action not in steps:
            steps.append(action)

    establish(goal)
    return ActionPlan(steps=steps, justification=justification)


# --- teaching panels ----------------------------------------------------------


class PanelKind(str, Enum):
    CONCEPT_MAP = "concept_map"
    EXPERIMENT = "experiment"


@dataclass(frozen=True)
class TeachingPanel:
    panel_id: str
    kind: PanelKind
    difficulty: int
    covered_points: frozenset[int]
    practice_goal: str = ""


class AllDone:
    """Sentinel: every panel's content has already been learned."""

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AllDone)

    def __hash__(self) -> int:
        return hash("AllDone")


def select_panel(kb: KnowledgeBase, panels: Sequence[TeachingPanel]) -> TeachingPanel | AllDone:
    """Next panel to display: skip fully-learned content, put panels touching
    past mistakes first, then order easy-to-difficult."""
    if not panels:
        raise ValueError("panels must be nonempty")
    remaining = [p for p in panels if not p.covered_points <= kb.learned_points]
    if not remaining:
        return AllDone()
    mistakes = kb.mistake_points()

    def rank(panel: TeachingPanel) -> tuple:
        touches_mistake = bool(panel.covered_points & mistakes)
        return (not touches_mistake, panel.difficulty, panel.panel_id)

    return min(remaining, key=rank)


# --- stall hints ---------------------------------------------------------------


@dataclass(frozen=True)
class KnowledgePoint:
    id: int
    title: str
    description: str
    scene_ref: str = ""


@dataclass(frozen=True)
class Hint:
    point: int
    title: str
    description: str
    scene_ref: str


class HintBook:
    """Authored knowledge-point notebook plus one-hint-per-stall tracking."""

    def __init__(self, points: Sequence[KnowledgePoint]) -> None:
        self._points = {p.id: p for p in points}
        self._given: set[tuple[int, int]] = set()

    @property
    def point_ids(self) -> set[int]:
        return set(self._points)

    def point(self, point_id: int) -> KnowledgePoint:
        try:
            return self._points[point_id]
        except KeyError:
            raise UnknownPoint(f"knowledge point {point_id} not in the catalog") from None

    def hint_on_stall(
        self, current_point: int, stalled_for: float, episode: int = 0
    ) -> Hint | None:
        """A hint iff the stall exceeds the threshold, at most once per
        (point, stall episode)."""
        kp = self.point(current_point)
        if stalled_for <= STALL_HINT_SECONDS:
            return None
        key = (current_point, episode)
        if key in self._given:
            return None
        self._given.add(key)
        return Hint(kp.id, kp.title, kp.description, kp.scene_ref)

    @classmethod
    def from_dict(cls, raw: dict) -> "HintBook":
        points = [
            KnowledgePoint(
                id=int(p["id"]),
                title=p["title"],
                description=p.get("description", ""),
                scene_ref=p.get("scene_ref", ""),
            )
            for p in raw.get("points", [])
        ]
        return cls(points)


# --- causal path queries (derived from reviewed causal-map tutors) ------------


def causal_paths(cmap: ConceptMap, source_label: str, target_label: str) -> list[list[str]]:
    """All simple link paths from one concept label to another.

    Bonus query in the style of causal-map tutoring systems: "if X changes,
    what happens to Y" answered by exhaustive path search over taught links.
    """
    by_label: dict[str, str] = {n.label: n.id for n in cmap.nodes}
    if source_label not in by_label or target_label not in by_label:
        return []
    adjacency: dict[str, list[str]] = {}
    for link in cmap.links:
        adjacency.setdefault(link.source, []).append(link.target)
    labels = {n.id: n.label for n in cmap.nodes}
    paths: list[list[str]] = []

    def walk(node: str, seen: tuple[str, ...]) -> None:
        if labels[node] == target_label:
            paths.append([labels[n] for n in seen])
            return
        for nxt in sorted(adjacency.get(node, [])):
            if nxt not in seen:
                walk(nxt, seen + (nxt,))

    start = by_label[source_label]
    walk(start, (start,))
    return paths
