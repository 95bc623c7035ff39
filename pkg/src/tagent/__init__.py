"""Goal-net driven teachable agent engine.

A library for building affective teachable agents: declarative goal nets
drive the agent's learn/practice loop, events are appraised into typed
emotions, emotion intensities evolve through fuzzy-cognitive-map dynamics,
and taught concept maps compile into logic rules the agent plans with.
"""

from tagent.affect import (
    AppraisalInput,
    DesirabilityTable,
    EmotionEpisode,
    EmotionType,
    ProspectRegistry,
    Will,
    appraise,
    decay_intensity,
    judge_desirability,
    resolve_prospect,
)
from tagent.fcm import FcmModel, FcmState, TerminationPolicy, compose, fcm_step, simulate
from tagent.goalnet import ExecutionContext, GoalNet, TaskRegistry, load_goalnet
from tagent.knowledge import ConceptMap, KnowledgeBase, NoSolution, Rule, forward_chain

__version__ = "0.1.0"

__all__ = [
    "AppraisalInput",
    "ConceptMap",
    "DesirabilityTable",
    "EmotionEpisode",
    "EmotionType",
    "ExecutionContext",
    "FcmModel",
    "FcmState",
    "GoalNet",
    "KnowledgeBase",
    "NoSolution",
    "ProspectRegistry",
    "Rule",
    "TaskRegistry",
    "TerminationPolicy",
    "Will",
    "appraise",
    "compose",
    "decay_intensity",
    "fcm_step",
    "forward_chain",
    "judge_desirability",
    "load_goalnet",
    "resolve_prospect",
    "simulate",
]
