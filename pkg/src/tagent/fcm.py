"""Fuzzy-cognitive-map models and emotion-intensity arithmetic.

A model is a concept list, an n-by-n weight matrix (w[i, j] = influence of
concept i on concept j), and per-concept activation functions.  The state
vector evolves by repeated vector-matrix multiplication followed by the
activations; concepts without a custom activation pass through unchanged
before clamping to their declared codomain.
"""

from __future__ import annotations

import json
import math
import operator
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from tagent.affect import AppraisalVariables, EmotionType
from tagent.errors import (
    CodomainMismatch,
    DimensionMismatch,
    MissingAntecedent,
    NoSharedConcept,
    ParseError,
)


class ConceptRole(str, Enum):
    INPUT = "input"
    INTERNAL = "internal"
    EMOTION = "emotion"
    ACTION = "action"


@dataclass(frozen=True)
class Concept:
    """One FCM node.  ``codomain=None`` means unbounded (no clamping)."""

    id: str
    name: str = ""
    role: ConceptRole = ConceptRole.INTERNAL
    codomain: tuple[float, float] | None = (-1.0, 1.0)


@dataclass(frozen=True)
class ActivationSpec:
    """Named builtin activation plus its parameters."""

    name: str
    params: dict = field(default_factory=dict)


@dataclass
class StepContext:
    """What an activation function may observe while a step is assembled.

    ``current`` is filled in concept order, so a later concept's activation
    can read the already-updated values of earlier concepts.
    """

    raw: np.ndarray
    previous: np.ndarray
    current: np.ndarray
    index: int
    params: dict


ActivationFn = Callable[[float, StepContext], float]


def _identity(raw: float, ctx: StepContext) -> float:
    return raw


def _scale(raw: float, ctx: StepContext) -> float:
    return raw * ctx.params["factor"]


def _flip_square(raw: float, ctx: StepContext) -> float:
    # Negative inputs map to (1 - |x|)^2, non-negative pass through: an
    # inhibiting edge thereby turns closeness into a squared likelihood.
    if -1.0 <= raw < 0.0:
        return (1.0 - abs(raw)) ** 2
    return raw


def _pursuit(raw: float, ctx: StepContext) -> float:
    # Kinematic chase update: new separation = current separation minus the
    # normalized closing speed.  The evader's speed follows its emotion level.
    p = ctx.params
    distance = ctx.current[p["distance_index"]]
    emotion = ctx.current[p["emotion_index"]]
    v_evader = (emotion / p["emotion_max"]) * p["v_evader_max"]
    return distance - (p["v_pursuer"] - v_evader) / p["d_max"]


BUILTIN_ACTIVATIONS: dict[str, ActivationFn] = {
    "identity": _identity,
    "scale": _scale,
    "flip_square": _flip_square,
    "pursuit": _pursuit,
}


@dataclass
class FcmModel:
    """Concept graph with weight matrix and activation descriptors."""

    concepts: list[Concept]
    weights: np.ndarray
    activations: dict[str, ActivationSpec] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.weights = np.asarray(self.weights, dtype=float)
        n = len(self.concepts)
        if self.weights.shape != (n, n):
            raise DimensionMismatch(
                f"weight matrix {self.weights.shape} does not match {n} concepts"
            )
        for cid, spec in self.activations.items():
            if cid not in self.concept_index:
                raise DimensionMismatch(f"activation for unknown concept {cid!r}")
            if spec.name not in BUILTIN_ACTIVATIONS:
                raise KeyError(f"unknown activation function {spec.name!r}")

    @property
    def concept_index(self) -> dict[str, int]:
        return {c.id: i for i, c in enumerate(self.concepts)}

    def index_of(self, concept_id: str) -> int:
        return self.concept_index[concept_id]

    def edges(self) -> list[tuple[str, str, float]]:
        """Nonzero directed edges as (from, to, weight)."""
        out = []
        for i, src in enumerate(self.concepts):
            for j, dst in enumerate(self.concepts):
                w = self.weights[i, j]
                if w != 0.0:
                    out.append((src.id, dst.id, float(w)))
        return out


@dataclass
class FcmState:
    """State vector aligned to a model's concept ordering."""

    vector: np.ndarray
    iteration: int = 0

    def __post_init__(self) -> None:
        self.vector = np.asarray(self.vector, dtype=float)


@dataclass
class TerminationPolicy:
    """When to stop iterating: fixed point (max-norm), absorbing predicate,
    or iteration cap."""

    epsilon: float = 1e-6
    max_iterations: int = 1000
    absorbing: Callable[[np.ndarray], bool] | None = None

    def __post_init__(self) -> None:
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.max_iterations <= 0:
            raise ValueError("max_iterations must be positive")


class Outcome(str, Enum):
    FIXED_POINT = "fixed_point"
    ABSORBED = "absorbed"
    MAX_ITERATIONS = "max_iterations"


def _clamp(value: float, codomain: tuple[float, float] | None) -> float:
    if codomain is None:
        return value
    lo, hi = codomain
    return min(max(value, lo), hi)


def fcm_step(state: FcmState, model: FcmModel) -> FcmState:
    """One propagation step: raw = v . W, then per-concept activation and
    codomain clamp, evaluated in concept order."""
    n = len(model.concepts)
    if state.vector.shape != (n,):
        raise DimensionMismatch(
            f"state vector {state.vector.shape} does not match {n} concepts"
        )
    raw = state.vector @ model.weights
    current = raw.copy()
    for i, concept in enumerate(model.concepts):
        spec = model.activations.get(concept.id)
        if spec is not None:
            fn = BUILTIN_ACTIVATIONS[spec.name]
            ctx = StepContext(
                raw=raw, previous=state.vector, current=current, index=i, params=spec.params
            )
            current[i] = fn(float(raw[i]), ctx)
        current[i] = _clamp(float(current[i]), concept.codomain)
    return FcmState(vector=current, iteration=state.iteration + 1)


def simulate(
    model: FcmModel, init: FcmState, policy: TerminationPolicy
) -> tuple[list[FcmState], Outcome]:
    """Iterate fcm_step under the termination policy.

    Returns the full trajectory (including the initial state) and the
    outcome.  The absorbing predicate is checked after each step.
    """
    trajectory = [init]
    state = init
    for _ in range(policy.max_iterations):
        nxt = fcm_step(state, model)
        trajectory.append(nxt)
        if policy.absorbing is not None and policy.absorbing(nxt.vector):
            return trajectory, Outcome.ABSORBED
        if float(np.max(np.abs(nxt.vector - state.vector))) < policy.epsilon:
            return trajectory, Outcome.FIXED_POINT
        state = nxt
    return trajectory, Outcome.MAX_ITERATIONS


# --- emotion intensity formulas -------------------------------------------

#: Raw-intensity maxima used to normalize into [0, 1].
DEFAULT_INTENSITY_MAX: dict[EmotionType, float] = {
    EmotionType.FEAR: 3.0,
    EmotionType.JOY: 2.4,
}
FALLBACK_INTENSITY_MAX = 1.0

_EXPECTATION_FORMULA = frozenset({EmotionType.JOY, EmotionType.HOPE})
_PROSPECT_FORMULA = frozenset({EmotionType.FEAR, EmotionType.DISTRESS})
_ANTECEDENT_FORMULA = frozenset({EmotionType.DISAPPOINTMENT, EmotionType.RELIEF})


def has_exact_formula(emotion: EmotionType) -> bool:
    """Whether the emotion has a dedicated intensity formula (the rest fall
    back to |desirability|)."""
    return emotion in _EXPECTATION_FORMULA | _PROSPECT_FORMULA | _ANTECEDENT_FORMULA


def intensity(
    emotion: EmotionType,
    expectation: float,
    desirability: float,
    antecedent: float | None = None,
) -> float:
    """Raw (pre-normalization) intensity of an emotion.

    joy/hope:        1.7 * sqrt(expectation) - 0.7 * desirability
    distress/fear:   2 * expectation^2 - desirability
    disappointment:  antecedent_hope * desirability
    relief:          antecedent_fear * desirability
    others:          |desirability| (fallback, no dedicated formula)
    """
    if emotion in _EXPECTATION_FORMULA:
        return 1.7 * math.sqrt(expectation) - 0.7 * desirability
    if emotion in _PROSPECT_FORMULA:
        return 2.0 * expectation**2 - desirability
    if emotion in _ANTECEDENT_FORMULA:
        if antecedent is None:
            raise MissingAntecedent(
                f"{emotion.value} requires the prior hope/fear intensity"
            )
        return antecedent * desirability
    return abs(desirability)


def intensity_from(
    emotion: EmotionType,
    variables: AppraisalVariables,
    antecedent: float | None = None,
) -> float:
    """intensity() over a bundled AppraisalVariables record.

    effort and realization are carried on the record but feed no formula.
    """
    return intensity(emotion, variables.expectation, variables.desirability, antecedent)


def intensity_max(
    emotion: EmotionType, overrides: dict[EmotionType, float] | None = None
) -> float:
    table = dict(DEFAULT_INTENSITY_MAX)
    if overrides:
        table.update(overrides)
    return table.get(emotion, FALLBACK_INTENSITY_MAX)


def normalize_intensity(
    emotion: EmotionType,
    raw: float,
    overrides: dict[EmotionType, float] | None = None,
) -> float:
    """Clamp raw / intensity_max into [0, 1]."""
    return min(max(raw / intensity_max(emotion, overrides), 0.0), 1.0)


# --- scenario files ----------------------------------------------------------

_ABSORB_OPS = {"le": operator.le, "lt": operator.lt, "ge": operator.ge, "gt": operator.gt}


def load_fcm_scenario(source: str) -> tuple[FcmModel, FcmState, TerminationPolicy]:
    """Load a model, initial state, and termination policy from a JSON
    scenario document: {concepts[], weights, activations{}, init[], policy{}}."""
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid FCM scenario document: {exc}") from exc
    try:
        concepts = []
        for raw in doc["concepts"]:
            codomain = raw.get("codomain", [-1.0, 1.0])
            concepts.append(
                Concept(
                    id=raw["id"],
                    name=raw.get("name", ""),
                    role=ConceptRole(raw.get("role", "internal")),
                    codomain=tuple(codomain) if codomain is not None else None,
                )
            )
        n = len(concepts)
        flat = doc["weights"]
        if isinstance(flat[0], list):
            weights = np.asarray(flat, dtype=float)
        else:
            weights = np.asarray(flat, dtype=float).reshape(n, n)
        activations = {
            cid: ActivationSpec(body["name"], dict(body.get("params", {})))
            for cid, body in doc.get("activations", {}).items()
        }
        model = FcmModel(concepts=concepts, weights=weights, activations=activations)
        init = FcmState(vector=np.asarray(doc.get("init", [0.0] * n), dtype=float))
        policy_doc = doc.get("policy", {})
        absorbing = None
        if "absorbing" in policy_doc:
            spec = policy_doc["absorbing"]
            index = model.index_of(spec["concept"])
            op = _ABSORB_OPS[spec.get("op", "le")]
            threshold = float(spec.get("value", 0.0))
            absorbing = lambda v, i=index, op=op, th=threshold: bool(op(v[i], th))
        policy = TerminationPolicy(
            epsilon=float(policy_doc.get("epsilon", 1e-6)),
            max_iterations=int(policy_doc.get("max_iterations", 1000)),
            absorbing=absorbing,
        )
        return model, init, policy
    except (KeyError, IndexError, ValueError) as exc:
        raise ParseError(f"malformed FCM scenario: {exc}") from exc


def trajectory_csv(
    model: FcmModel, trajectory: Sequence[FcmState], outcome: Outcome
) -> str:
    """Render a trajectory as CSV: iteration, one column per concept, outcome."""
    header = ["iteration"] + [c.id for c in model.concepts] + ["outcome"]
    lines = [",".join(header)]
    for state in trajectory:
        cells = [str(state.iteration)]
        cells += [f"{value:.9g}" for value in state.vector]
        cells.append(outcome.value)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


# --- composition -----------------------------------------------------------


def compose(
    a: FcmModel, b: FcmModel, shared: Sequence[tuple[str, str]]
) -> FcmModel:
    """Merge two models along shared concept pairs.

    The merged model keeps a's concepts (a's activation wins on shared
    concepts) and appends b's unshared concepts; the weight matrix is the
    block union with a's edges taking precedence where both define one.
    """
    if not shared:
        raise NoSharedConcept("composition requires at least one shared concept pair")
    a_index = a.concept_index
    b_index = b.concept_index
    b_to_merged: dict[str, int] = {}
    for a_id, b_id in shared:
        if a_id not in a_index:
            raise KeyError(f"shared concept {a_id!r} not in first model")
        if b_id not in b_index:
            raise KeyError(f"shared concept {b_id!r} not in second model")
        ca = a.concepts[a_index[a_id]]
        cb = b.concepts[b_index[b_id]]
        if ca.codomain != cb.codomain:
            raise CodomainMismatch(
                f"shared pair ({a_id}, {b_id}) has codomains {ca.codomain} != {cb.codomain}"
            )
        b_to_merged[b_id] = a_index[a_id]

    concepts = list(a.concepts)
    activations = dict(a.activations)
    for j, cb in enumerate(b.concepts):
        if cb.id in b_to_merged:
            continue
        b_to_merged[cb.id] = len(concepts)
        concepts.append(cb)
        spec = b.activations.get(cb.id)
        if spec is not None:
            activations[cb.id] = spec
    # b's activations on shared concepts are dropped: a's definition wins.

    n = len(concepts)
    weights = np.zeros((n, n))
    weights[: len(a.concepts), : len(a.concepts)] = a.weights
    for i, src in enumerate(b.concepts):
        for j, dst in enumerate(b.concepts):
            w = b.weights[i, j]
            if w == 0.0:
                continue
            mi, mj = b_to_merged[src.id], b_to_merged[dst.id]
            if weights[mi, mj] == 0.0:
                weights[mi, mj] = w
    return FcmModel(concepts=concepts, weights=weights, activations=activations)
