"""Qualitative event appraisal into typed emotions.

Maps (event, goals, relationship, prospect status) onto one of twelve
event-based emotion types, keeps pending hope/fear prospects until a
confirming or disconfirming event arrives, and decays episode intensities
exponentially between events.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from tagent.errors import NoPendingProspect, UnknownPair

# Episodes whose decayed intensity falls below this are dropped.
EPSILON_EMOTION = 0.01

# Default decay rate: half-life of one minute, time measured in seconds.
DEFAULT_DECAY_B = math.log(2) / 60.0


class EmotionType(str, Enum):
    JOY = "joy"
    DISTRESS = "distress"
    HAPPY_FOR = "happy_for"
    PITY = "pity"
    GLOATING = "gloating"
    RESENTMENT = "resentment"
    HOPE = "hope"
    FEAR = "fear"
    SATISFACTION = "satisfaction"
    DISAPPOINTMENT = "disappointment"
    FEARS_CONFIRMED = "fears_confirmed"
    RELIEF = "relief"


class Will(str, Enum):
    GOOD_WILL = "good_will"
    ILL_WILL = "ill_will"


#: Emotion types that can only arise from a negatively-valenced appraisal.
NEGATIVE_FIRST_PHASE = frozenset(
    {EmotionType.DISTRESS, EmotionType.PITY, EmotionType.GLOATING, EmotionType.FEAR}
)


@dataclass
class AppraisalInput:
    """One event-context appraisal request.

    ``desirability`` is a signed scalar in [-1, 1]: the sign carries the
    desirable/undesirable judgment, the magnitude feeds intensity.  ``will``
    matters only when the endurer is not the emotion holder.
    """

    event_content: str
    event_endurer: str
    emotion_holder: str
    holder_goal: str
    desirability: float
    prospect_relevant: bool = False
    will: Will | None = None
    expectation: float = 0.0

    def __post_init__(self) -> None:
        if not -1.0 <= self.desirability <= 1.0:
            raise ValueError(f"desirability {self.desirability} outside [-1, 1]")
        if not 0.0 <= self.expectation <= 1.0:
            raise ValueError(f"expectation {self.expectation} outside [0, 1]")
        if self.event_endurer != self.emotion_holder and self.will is None:
            raise ValueError("will is required when the endurer is not the holder")


@dataclass
class AppraisalVariables:
    """Intensity factors carried with an appraisal.

    ``effort`` and ``realization`` are stored and traced for completeness
    but feed no implemented intensity formula.
    """

    expectation: float = 0.0
    desirability: float = 0.0
    effort: float = 0.0
    realization: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.expectation <= 1.0:
            raise ValueError(f"expectation {self.expectation} outside [0, 1]")
        if not -1.0 <= self.desirability <= 1.0:
            raise ValueError(f"desirability {self.desirability} outside [-1, 1]")
        if not 0.0 <= self.effort <= 1.0:
            raise ValueError(f"effort {self.effort} outside [0, 1]")
        if not 0.0 <= self.realization <= 1.0:
            raise ValueError(f"realization {self.realization} outside [0, 1]")


@dataclass
class EmotionEpisode:
    """A live, intensity-bearing emotion instance."""

    emotion: EmotionType
    raw_intensity: float
    intensity: float
    cause: str
    target: str
    born_at: float
    decay_rate_b: float = DEFAULT_DECAY_B
    expired: bool = False

    def __post_init__(self) -> None:
        if self.decay_rate_b <= 0:
            raise ValueError("decay rate must be positive")


@dataclass
class DesirabilityEntry:
    """Authored judgment of one event content against a goal."""

    goal: str
    consistent: bool
    magnitude: float
    prospect_relevant: bool = False
    endurer: str = ""
    expectation: float = 0.5

    @property
    def sign(self) -> int:
        return 1 if self.consistent else -1

    @property
    def desirability(self) -> float:
        return self.sign * self.magnitude


class DesirabilityTable:
    """Scenario-authored map of event contents to goal-consistency entries."""

    def __init__(self, entries: dict[str, DesirabilityEntry] | None = None) -> None:
        self._entries: dict[str, DesirabilityEntry] = dict(entries or {})

    def add(self, event_content: str, entry: DesirabilityEntry) -> None:
        self._entries[event_content] = entry

    def lookup(self, event_content: str, goal: str) -> DesirabilityEntry:
        entry = self._entries.get(event_content)
        if entry is None or entry.goal != goal:
            raise UnknownPair(f"no desirability entry for ({event_content!r}, {goal!r})")
        return entry

    def entry_for(self, event_content: str) -> DesirabilityEntry:
        entry = self._entries.get(event_content)
        if entry is None:
            raise UnknownPair(f"no desirability entry for {event_content!r}")
        return entry

    def __contains__(self, event_content: str) -> bool:
        return event_content in self._entries

    @classmethod
    def from_dict(cls, raw: dict) -> "DesirabilityTable":
        entries = {}
        for content, body in raw.items():
            if "sign" in body:
                consistent = int(body["sign"]) > 0
            else:
                consistent = bool(body["consistent"])
            entries[content] = DesirabilityEntry(
                goal=body["goal"],
                consistent=consistent,
                magnitude=float(body.get("magnitude", 1.0)),
                prospect_relevant=bool(body.get("prospect_relevant", False)),
                endurer=body.get("endurer", ""),
                expectation=float(body.get("expectation", 0.5)),
            )
        return cls(entries)


def judge_desirability(
    event_content: str, goal: str, magnitude: float, table: DesirabilityTable
) -> float:
    """Signed desirability of an event for a goal: +magnitude if consistent,
    -magnitude otherwise.  Raises UnknownPair for unregistered pairs."""
    entry = table.lookup(event_content, goal)
    return magnitude if entry.consistent else -magnitude


class ProspectRegistry:
    """Pending hope/fear episodes keyed by (holder, event content).

    At most one pending prospect per key; registering over an existing key
    replaces it.
    """

    def __init__(self) -> None:
        self._pending: dict[tuple[str, str], EmotionEpisode] = {}
        self.registered_count = 0
        self.resolved_count = 0

    def register(self, holder: str, event_content: str, episode: EmotionEpisode) -> None:
        if episode.emotion not in (EmotionType.HOPE, EmotionType.FEAR):
            raise ValueError("only hope/fear episodes can be pending prospects")
        self._pending[(holder, event_content)] = episode
        self.registered_count += 1

    def pending(self, holder: str, event_content: str) -> EmotionEpisode | None:
        return self._pending.get((holder, event_content))

    def pop(self, holder: str, event_content: str) -> EmotionEpisode:
        episode = self._pending.pop((holder, event_content), None)
        if episode is None:
            raise NoPendingProspect(f"no pending prospect for ({holder!r}, {event_content!r})")
        self.resolved_count += 1
        return episode

    def __len__(self) -> int:
        return len(self._pending)


def appraise(inp: AppraisalInput, registry: ProspectRegistry | None = None) -> EmotionType:
    """First-phase appraisal decision over a valid input.

    Walks the fortunes-of-others / prospect branches and returns the elicited
    emotion type.  Hope and fear are additionally registered as pending
    prospects when a registry is supplied.
    """
    desirable = inp.desirability > 0
    if inp.event_endurer != inp.emotion_holder:
        if inp.will is Will.GOOD_WILL:
            return EmotionType.HAPPY_FOR if desirable else EmotionType.PITY
        return EmotionType.RESENTMENT if desirable else EmotionType.GLOATING
    if not inp.prospect_relevant:
        return EmotionType.JOY if desirable else EmotionType.DISTRESS
    emotion = EmotionType.HOPE if desirable else EmotionType.FEAR
    if registry is not None:
        episode = EmotionEpisode(
            emotion=emotion,
            raw_intensity=abs(inp.desirability),
            intensity=abs(inp.desirability),
            cause=inp.event_content,
            target=inp.event_endurer,
            born_at=0.0,
        )
        registry.register(inp.emotion_holder, inp.event_content, episode)
    return emotion


def resolve_prospect(
    registry: ProspectRegistry, key: tuple[str, str], confirmed: bool
) -> EmotionType:
    """Resolve a pending hope/fear into its confirmation-phase emotion.

    hope+confirmed -> satisfaction, hope+disconfirmed -> disappointment,
    fear+confirmed -> fears_confirmed, fear+disconfirmed -> relief.
    The pending entry is removed; a second resolve raises NoPendingProspect.
    """
    holder, event_content = key
    episode = registry.pop(holder, event_content)
    if episode.emotion is EmotionType.HOPE:
        return EmotionType.SATISFACTION if confirmed else EmotionType.DISAPPOINTMENT
    return EmotionType.FEARS_CONFIRMED if confirmed else EmotionType.RELIEF


def decay_intensity(
    episode: EmotionEpisode, elapsed: float, epsilon: float = EPSILON_EMOTION
) -> float:
    """Exponentially decayed raw intensity after ``elapsed`` time units.

    Marks the episode expired once the decayed value drops below epsilon.
    """
    if elapsed < 0:
        raise ValueError("elapsed must be non-negative")
    value = episode.raw_intensity * math.exp(-episode.decay_rate_b * elapsed)
    if value < epsilon:
        episode.expired = True
    return value
