"""Tour of the twelve event-based emotion types.

Appraises a handful of scenario moments, resolves the pending prospects,
and shows how intensities decay between events.

Run:  python3 demos/02_appraisal_tour.py
"""

import math

from tagent.affect import (
    AppraisalInput,
    EmotionEpisode,
    ProspectRegistry,
    Will,
    appraise,
    decay_intensity,
    resolve_prospect,
)
from tagent.fcm import intensity, normalize_intensity


def show(label: str, inp: AppraisalInput, registry: ProspectRegistry) -> None:
    emotion = appraise(inp, registry)
    raw = max(0.0, intensity(emotion, inp.expectation, inp.desirability))
    value = normalize_intensity(emotion, raw)
    print(f"  {label:<42} -> {emotion.value:<12} intensity {value:.3f} (raw {raw:.3f})")


def main() -> None:
    registry = ProspectRegistry()
    print("first-phase appraisals:")
    show(
        "student accepts the teaching request",
        AppraisalInput(
            event_content="get_acceptance_from_student",
            event_endurer="molecule",
            emotion_holder="molecule",
            holder_goal="get_help_from_students",
            desirability=0.8,
            expectation=0.6,
        ),
        registry,
    )
    show(
        "student submits a flawless concept map",
        AppraisalInput(
            event_content="concept_map_correct",
            event_endurer="student",
            emotion_holder="molecule",
            holder_goal="student_performs_well",
            desirability=0.8,
            will=Will.GOOD_WILL,
        ),
        registry,
    )
    show(
        "the molecule attempts the root passage",
        AppraisalInput(
            event_content="attempt_transport",
            event_endurer="molecule",
            emotion_holder="molecule",
            holder_goal="enter_the_root",
            desirability=0.7,
            prospect_relevant=True,
            expectation=0.6,
        ),
        registry,
    )
    show(
        "a predator closes in (prospect of being caught)",
        AppraisalInput(
            event_content="giantDino_come",
            event_endurer="molecule",
            emotion_holder="molecule",
            holder_goal="avoid_giantDino",
            desirability=-1.0,
            prospect_relevant=True,
            expectation=0.8,
        ),
        registry,
    )

    print("\nprospect resolutions:")
    outcome = resolve_prospect(registry, ("molecule", "attempt_transport"), confirmed=True)
    print(f"  the passage succeeds                       -> {outcome.value}")
    outcome = resolve_prospect(registry, ("molecule", "giantDino_come"), confirmed=False)
    print(f"  the predator gives up                      -> {outcome.value}")

    print("\ndecay of a joy episode (half-life 60 s):")
    episode = EmotionEpisode(
        emotion=appraise(
            AppraisalInput(
                event_content="meet_student",
                event_endurer="molecule",
                emotion_holder="molecule",
                holder_goal="get_help_from_students",
                desirability=0.6,
            )
        ),
        raw_intensity=1.0,
        intensity=1.0,
        cause="meet_student",
        target="molecule",
        born_at=0.0,
        decay_rate_b=math.log(2) / 60.0,
    )
    for t in (0, 30, 60, 120, 300, 600):
        value = decay_intensity(episode, float(t))
        flag = " (expired)" if episode.expired else ""
        print(f"  t={t:>4}s  intensity {value:.4f}{flag}")


if __name__ == "__main__":
    main()
