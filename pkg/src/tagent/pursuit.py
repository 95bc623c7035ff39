"""Reference chase scenario: a prey agent's fear under pursuit.

Five concepts: normalized separation distance, desirability, likelihood of
capture, fear, and the flight reaction.  Distance drives desirability and
likelihood, those two combine into fear with the same coefficients as the
fear intensity formula (likelihood weight +2, desirability weight -1), fear
sets the flight speed, and the reaction closes the loop by moving the
distance.  With a faster pursuer the distance is absorbed at zero; with a
fast enough evader the system settles at a positive-distance fixed point
with constant fear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tagent.fcm import (
    ActivationSpec,
    Concept,
    ConceptRole,
    FcmModel,
    FcmState,
    Outcome,
    TerminationPolicy,
    simulate,
)

DISTANCE, DESIRABILITY, LIKELIHOOD, FEAR, REACTION = range(5)

# Calibrated edge magnitudes (signs are fixed by the causal story; values
# chosen by the grid search in scripts/calibrate_pursuit.py so that both
# reference runs keep monotone-then-flat distance/fear curves).
W_DISTANCE_DESIRABILITY = -1.0
W_DISTANCE_LIKELIHOOD = -0.65
W_DESIRABILITY_FEAR = -0.55
W_LIKELIHOOD_FEAR = 2.75
W_FEAR_REACTION = 1.0


@dataclass
class PursuitParams:
    """Scenario parameters; speeds in world units per step."""

    v_pursuer: float = 10.0
    v_evader_max: float = 8.0
    d_max: float = 80.0
    emotion_max: float = 3.0
    initial_distance_ratio: float = 0.9

    def __post_init__(self) -> None:
        for name in ("v_pursuer", "v_evader_max", "d_max", "emotion_max"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 < self.initial_distance_ratio <= 1.0:
            raise ValueError("initial_distance_ratio must be in (0, 1]")


def build_pursuit_model(params: PursuitParams) -> FcmModel:
    """Assemble the five-concept chase model with calibrated default weights.

    Edge signs follow the causal story (closeness is undesirable and raises
    the capture likelihood); magnitudes mirror the fear intensity formula.
    See docs/pursuit-calibration.md for the calibration log.
    """
    concepts = [
        Concept("distance", "normalized separation", ConceptRole.INPUT, (0.0, 1.0)),
        Concept("desirability", "situation desirability", ConceptRole.INTERNAL, (-1.0, 1.0)),
        Concept("likelihood", "likelihood of capture", ConceptRole.INTERNAL, (0.0, 1.0)),
        Concept("fear", "fear level", ConceptRole.EMOTION, (0.0, params.emotion_max)),
        Concept("reaction", "flight reaction", ConceptRole.ACTION, (0.0, 1.0)),
    ]
    weights = np.zeros((5, 5))
    weights[DISTANCE, DESIRABILITY] = W_DISTANCE_DESIRABILITY
    weights[DISTANCE, LIKELIHOOD] = W_DISTANCE_LIKELIHOOD
    weights[DESIRABILITY, FEAR] = W_DESIRABILITY_FEAR
    weights[LIKELIHOOD, FEAR] = W_LIKELIHOOD_FEAR
    weights[FEAR, REACTION] = W_FEAR_REACTION
    # The reaction concept carries the next normalized distance; the edge
    # scales it back to world units so the distance activation re-normalizes.
    weights[REACTION, DISTANCE] = params.d_max

    activations = {
        "distance": ActivationSpec("scale", {"factor": 1.0 / params.d_max}),
        "likelihood": ActivationSpec("flip_square", {}),
        "reaction": ActivationSpec(
            "pursuit",
            {
                "distance_index": DISTANCE,
                "emotion_index": FEAR,
                "emotion_max": params.emotion_max,
                "v_pursuer": params.v_pursuer,
                "v_evader_max": params.v_evader_max,
                "d_max": params.d_max,
            },
        ),
    }
    return FcmModel(concepts=concepts, weights=weights, activations=activations)


def initial_pursuit_state(params: PursuitParams) -> FcmState:
    """Seed distance and reaction with the starting separation ratio.

    The reaction concept doubles as the post-flight position, so before any
    reaction it equals the initial distance.
    """
    vector = np.zeros(5)
    vector[DISTANCE] = params.initial_distance_ratio
    vector[REACTION] = params.initial_distance_ratio
    return FcmState(vector=vector)


def pursuit_policy(
    epsilon: float = 1e-6, max_iterations: int = 1000
) -> TerminationPolicy:
    """Fixed-point tolerance plus capture (distance reaches zero) absorption."""
    return TerminationPolicy(
        epsilon=epsilon,
        max_iterations=max_iterations,
        absorbing=lambda v: v[DISTANCE] <= 0.0,
    )


def run_pursuit(
    params: PursuitParams, policy: TerminationPolicy | None = None
) -> tuple[list[FcmState], Outcome]:
    """Build, seed, and simulate the chase in one call."""
    model = build_pursuit_model(params)
    init = initial_pursuit_state(params)
    return simulate(model, init, policy or pursuit_policy())
