"""Grid-search calibration of the chase-scenario edge magnitudes.

Edge signs are fixed by the causal story; this script searches magnitude
combinations for the three free edges (distance->likelihood,
desirability->fear, likelihood->fear) and scores each candidate against the
scenario's qualitative targets:

  * pursuer faster (v_evader_max=8):  the distance must be absorbed at zero,
  * evader faster (v_evader_max=20):  a fixed point with positive distance
    and constant fear,
  * distance monotone non-increasing and fear monotone non-decreasing after
    the two-step startup transient, in both runs,
  * iteration counts as close as possible to the reference runs (capture at
    step 13, steady state near step 34).

Writes the ranked results to stdout; the chosen winner is recorded in
docs/pursuit-calibration.md and hard-coded in tagent.pursuit.

Run:  python3 scripts/calibrate_pursuit.py
"""

from __future__ import annotations

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
from tagent.pursuit import DESIRABILITY, DISTANCE, FEAR, LIKELIHOOD, REACTION

TARGET_CAPTURE_STEPS = 13
TARGET_STEADY_STEPS = 34


def build(beta: float, gamma: float, mu: float, v_evader: float) -> tuple[FcmModel, FcmState]:
    d_max, emotion_max, ratio = 80.0, 3.0, 0.9
    concepts = [
        Concept("distance", role=ConceptRole.INPUT, codomain=(0.0, 1.0)),
        Concept("desirability", codomain=(-1.0, 1.0)),
        Concept("likelihood", codomain=(0.0, 1.0)),
        Concept("fear", role=ConceptRole.EMOTION, codomain=(0.0, emotion_max)),
        Concept("reaction", role=ConceptRole.ACTION, codomain=(0.0, 1.0)),
    ]
    weights = np.zeros((5, 5))
    weights[DISTANCE, DESIRABILITY] = -1.0
    weights[DISTANCE, LIKELIHOOD] = -mu
    weights[DESIRABILITY, FEAR] = -beta
    weights[LIKELIHOOD, FEAR] = gamma
    weights[FEAR, REACTION] = 1.0
    weights[REACTION, DISTANCE] = d_max
    activations = {
        "distance": ActivationSpec("scale", {"factor": 1.0 / d_max}),
        "likelihood": ActivationSpec("flip_square", {}),
        "reaction": ActivationSpec(
            "pursuit",
            {
                "distance_index": DISTANCE,
                "emotion_index": FEAR,
                "emotion_max": emotion_max,
                "v_pursuer": 10.0,
                "v_evader_max": v_evader,
                "d_max": d_max,
            },
        ),
    }
    vector = np.zeros(5)
    vector[DISTANCE] = ratio
    vector[REACTION] = ratio
    return FcmModel(concepts, weights, activations), FcmState(vector=vector)


def monotone(values: list[float], rising: bool, skip: int = 0) -> bool:
    body = values[skip:]
    tol = 1e-9
    if rising:
        return all(b >= a - tol for a, b in zip(body, body[1:]))
    return all(b <= a + tol for a, b in zip(body, body[1:]))


def evaluate(beta: float, gamma: float, mu: float) -> dict | None:
    policy = TerminationPolicy(
        epsilon=1e-6, max_iterations=1000, absorbing=lambda v: v[DISTANCE] <= 0.0
    )
    model1, init1 = build(beta, gamma, mu, v_evader=8.0)
    run1, outcome1 = simulate(model1, init1, policy)
    model2, init2 = build(beta, gamma, mu, v_evader=20.0)
    run2, outcome2 = simulate(model2, init2, policy)
    if outcome1 is not Outcome.ABSORBED or outcome2 is not Outcome.FIXED_POINT:
        return None
    if run2[-1].vector[DISTANCE] <= 1e-9:
        return None
    d1 = [s.vector[DISTANCE] for s in run1]
    d2 = [s.vector[DISTANCE] for s in run2]
    f1 = [s.vector[FEAR] for s in run1]
    f2 = [s.vector[FEAR] for s in run2]
    if not (monotone(d1, rising=False) and monotone(d2, rising=False)):
        return None
    if not (monotone(f1, rising=True, skip=2) and monotone(f2, rising=True, skip=2)):
        return None
    capture = len(run1) - 1
    steady = len(run2) - 1
    return {
        "beta": beta,
        "gamma": gamma,
        "mu": mu,
        "capture_steps": capture,
        "steady_steps": steady,
        "final_distance": run2[-1].vector[DISTANCE],
        "final_fear": f2[-1],
        "score": 2 * abs(capture - TARGET_CAPTURE_STEPS)
        + 0.5 * abs(steady - TARGET_STEADY_STEPS),
    }


def main() -> None:
    results = []
    for beta in np.arange(0.5, 1.05, 0.05):
        for gamma in np.arange(2.0, 3.05, 0.125):
            for mu in np.arange(0.6, 1.01, 0.05):
                row = evaluate(round(beta, 3), round(gamma, 3), round(mu, 3))
                if row is not None:
                    results.append(row)
    results.sort(key=lambda r: r["score"])
    print(f"{len(results)} candidates satisfy the qualitative targets; best 10:")
    for row in results[:10]:
        print(
            "  beta={beta:.2f} gamma={gamma:.3f} mu={mu:.2f} "
            "capture={capture_steps} steady={steady_steps} "
            "distance*={final_distance:.4f} fear*={final_fear:.4f} "
            "score={score:.2f}".format(**row)
        )
    if results:
        best = results[0]
        print(
            "\nwinner: distance->likelihood = -{mu}, desirability->fear = -{beta}, "
            "likelihood->fear = +{gamma}".format(**best)
        )


if __name__ == "__main__":
    main()
