"""Appraisal decision table, prospects, and decay."""

from __future__ import annotations

import itertools
import math

import pytest

from tagent.affect import (
    AppraisalInput,
    DesirabilityEntry,
    DesirabilityTable,
    EmotionEpisode,
    EmotionType,
    NEGATIVE_FIRST_PHASE,
    ProspectRegistry,
    Will,
    appraise,
    decay_intensity,
    judge_desirability,
    resolve_prospect,
)
from tagent.errors import NoPendingProspect, UnknownPair


def make_table() -> DesirabilityTable:
    return DesirabilityTable(
        {
            "get_acceptance_from_student": DesirabilityEntry(
                goal="get_help_from_students", consistent=True, magnitude=0.8
            ),
            "giantDino_come": DesirabilityEntry(
                goal="avoid_giantDino", consistent=False, magnitude=1.0
            ),
        }
    )


def make_input(**overrides) -> AppraisalInput:
    base = dict(
        event_content="evt",
        event_endurer="agent",
        emotion_holder="agent",
        holder_goal="goal",
        desirability=0.5,
        prospect_relevant=False,
    )
    base.update(overrides)
    return AppraisalInput(**base)


class TestJudgeDesirability:
    def test_consistent_event_is_positive(self):
        table = make_table()
        value = judge_desirability(
            "get_acceptance_from_student", "get_help_from_students", 0.8, table
        )
        assert value == pytest.approx(0.8)

    def test_inconsistent_event_is_negative(self):
        table = make_table()
        value = judge_desirability("giantDino_come", "avoid_giantDino", 1.0, table)
        assert value == pytest.approx(-1.0)

    def test_zero_magnitude_is_zero(self):
        table = make_table()
        assert judge_desirability("giantDino_come", "avoid_giantDino", 0.0, table) == 0.0

    def test_unknown_pair(self):
        table = make_table()
        with pytest.raises(UnknownPair):
            judge_desirability("unknown_event", "goal", 1.0, table)
        with pytest.raises(UnknownPair):
            judge_desirability("giantDino_come", "wrong_goal", 1.0, table)


class TestAppraise:
    def test_joy_for_immediate_desirable_self_event(self):
        inp = make_input(desirability=0.7, prospect_relevant=False)
        assert appraise(inp) is EmotionType.JOY

    def test_fear_for_prospective_undesirable_self_event(self):
        inp = make_input(desirability=-1.0, prospect_relevant=True)
        assert appraise(inp) is EmotionType.FEAR

    def test_happy_for_good_will_other(self):
        inp = make_input(
            event_endurer="student", desirability=0.8, will=Will.GOOD_WILL
        )
        assert appraise(inp) is EmotionType.HAPPY_FOR

    def test_exhaustive_first_phase_enumeration(self):
        # Every reachable branch combination maps onto exactly the eight
        # first-phase emotion types, each hit once.
        seen = {}
        for same, will, prospect, sign in itertools.product(
            (True, False), (Will.GOOD_WILL, Will.ILL_WILL), (True, False), (1, -1)
        ):
            inp = make_input(
                event_endurer="agent" if same else "student",
                will=will,
                prospect_relevant=prospect,
                desirability=0.5 * sign,
            )
            emotion = appraise(inp)
            key = (same, will if not same else None, prospect if same else None, sign)
            seen.setdefault(key, set()).add(emotion)
        # deterministic per branch
        assert all(len(v) == 1 for v in seen.values())
        produced = {e for v in seen.values() for e in v}
        assert produced == {
            EmotionType.JOY,
            EmotionType.DISTRESS,
            EmotionType.HOPE,
            EmotionType.FEAR,
            EmotionType.HAPPY_FOR,
            EmotionType.PITY,
            EmotionType.RESENTMENT,
            EmotionType.GLOATING,
        }

    def test_valence_coherence(self):
        # Positive desirability never yields a negative first-phase emotion.
        for same, will, prospect in itertools.product(
            (True, False), (Will.GOOD_WILL, Will.ILL_WILL), (True, False)
        ):
            inp = make_input(
                event_endurer="agent" if same else "student",
                will=will,
                prospect_relevant=prospect,
                desirability=0.9,
            )
            assert appraise(inp) not in NEGATIVE_FIRST_PHASE

    def test_will_required_for_other_endurer(self):
        with pytest.raises(ValueError):
            make_input(event_endurer="student", will=None)

    def test_registers_prospects(self):
        registry = ProspectRegistry()
        appraise(make_input(desirability=0.9, prospect_relevant=True), registry)
        assert registry.pending("agent", "evt") is not None
        assert len(registry) == 1


class TestResolveProspect:
    def _register(self, registry, emotion, content="evt"):
        episode = EmotionEpisode(
            emotion=emotion,
            raw_intensity=1.0,
            intensity=1.0,
            cause=content,
            target="agent",
            born_at=0.0,
        )
        registry.register("agent", content, episode)

    @pytest.mark.parametrize(
        "emotion,confirmed,expected",
        [
            (EmotionType.HOPE, True, EmotionType.SATISFACTION),
            (EmotionType.HOPE, False, EmotionType.DISAPPOINTMENT),
            (EmotionType.FEAR, True, EmotionType.FEARS_CONFIRMED),
            (EmotionType.FEAR, False, EmotionType.RELIEF),
        ],
    )
    def test_resolution_table(self, emotion, confirmed, expected):
        registry = ProspectRegistry()
        self._register(registry, emotion)
        assert resolve_prospect(registry, ("agent", "evt"), confirmed) is expected

    def test_double_resolve_fails(self):
        registry = ProspectRegistry()
        self._register(registry, EmotionType.HOPE)
        resolve_prospect(registry, ("agent", "evt"), True)
        with pytest.raises(NoPendingProspect):
            resolve_prospect(registry, ("agent", "evt"), True)

    def test_prospect_conservation(self):
        registry = ProspectRegistry()
        for i in range(5):
            self._register(registry, EmotionType.HOPE, content=f"evt{i}")
        for i in range(3):
            resolve_prospect(registry, ("agent", f"evt{i}"), True)
        assert registry.registered_count - registry.resolved_count == len(registry)

    def test_all_twelve_types_covered(self):
        first_phase = {
            EmotionType.JOY,
            EmotionType.DISTRESS,
            EmotionType.HOPE,
            EmotionType.FEAR,
            EmotionType.HAPPY_FOR,
            EmotionType.PITY,
            EmotionType.RESENTMENT,
            EmotionType.GLOATING,
        }
        resolutions = {
            EmotionType.SATISFACTION,
            EmotionType.DISAPPOINTMENT,
            EmotionType.FEARS_CONFIRMED,
            EmotionType.RELIEF,
        }
        assert first_phase | resolutions == set(EmotionType)


class TestDecay:
    def _episode(self, raw=1.0, b=math.log(2)):
        return EmotionEpisode(
            emotion=EmotionType.JOY,
            raw_intensity=raw,
            intensity=min(raw, 1.0),
            cause="evt",
            target="agent",
            born_at=0.0,
            decay_rate_b=b,
        )

    def test_zero_elapsed_is_identity(self):
        episode = self._episode(raw=0.83)
        assert decay_intensity(episode, 0.0) == pytest.approx(0.83)

    def test_half_life(self):
        episode = self._episode(raw=1.0, b=math.log(2))
        assert decay_intensity(episode, 1.0) == pytest.approx(0.5)

    def test_scalar_substitution(self):
        # independently evaluated: 0.8 * exp(-0.3 * 2) = 0.43904930887522114
        episode = self._episode(raw=0.8, b=0.3)
        assert decay_intensity(episode, 2.0) == pytest.approx(0.43904930887522114, abs=1e-12)

    def test_monotone_decreasing_and_nonnegative(self):
        episode = self._episode(raw=2.5, b=0.7)
        values = [decay_intensity(episode, t / 4) for t in range(40)]
        assert all(v >= 0 for v in values)
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_expiry_marking(self):
        episode = self._episode(raw=1.0, b=math.log(2))
        decay_intensity(episode, 3.0)
        assert not episode.expired
        decay_intensity(episode, 20.0)
        assert episode.expired

    def test_negative_elapsed_rejected(self):
        with pytest.raises(ValueError):
            decay_intensity(self._episode(), -1.0)
