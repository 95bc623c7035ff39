"""Acceptance suite: one test per shipped criterion, one pass line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from importlib import resources
from pathlib import Path

import numpy as np
import pytest

from tagent.affect import AppraisalInput, EmotionType, ProspectRegistry, Will, appraise, resolve_prospect
from tagent.authoring import assemble_path, compile_catalog, compile_path, load_catalog
from tagent.errors import ValidationError
from tagent.fcm import Concept, FcmModel, FcmState, Outcome, fcm_step, intensity
from tagent.goalnet import (
    ExecutionContext,
    TaskRegistry,
    load_goalnet,
    run_to_completion,
    serialize_goalnet,
    step,
    validate_goalnet,
)
from tagent.goalnet.model import parse_goalnet
from tagent.knowledge import KnowledgeBase, NoSolution, Provenance, Rule, forward_chain
from tagent.pursuit import DISTANCE, FEAR, PursuitParams, run_pursuit
from tagent.runtime import ScenarioScript, load_data_text, run_scenario


def report(name: str, started: float, budget: float | None = None) -> None:
    elapsed = time.perf_counter() - started
    line = f"ACCEPTANCE PASS {name}: {elapsed:.3f}s"
    if budget is not None:
        assert elapsed < budget, f"{name} exceeded its {budget}s budget ({elapsed:.3f}s)"
        line += f" (budget {budget}s)"
    print(line)


def test_occ_appraisal_table_equivalence():
    """Exhaustive enumeration reproduces the appraisal decision table."""
    started = time.perf_counter()

    def expected_emotion(same, will, prospect, sign, confirmed):
        if not same:
            if will is Will.GOOD_WILL:
                return "happy_for" if sign > 0 else "pity"
            return "resentment" if sign > 0 else "gloating"
        if not prospect:
            return "joy" if sign > 0 else "distress"
        if sign > 0:
            return "satisfaction" if confirmed else "disappointment"
        return "fears_confirmed" if confirmed else "relief"

    produced: set[EmotionType] = set()
    mismatches = 0
    combos = 0
    for same, will, prospect, sign, confirmed in itertools.product(
        (True, False), (Will.GOOD_WILL, Will.ILL_WILL), (True, False), (1, -1), (True, False)
    ):
        combos += 1
        registry = ProspectRegistry()
        inp = AppraisalInput(
            event_content="evt",
            event_endurer="agent" if same else "other",
            emotion_holder="agent",
            holder_goal="goal",
            desirability=0.75 * sign,
            prospect_relevant=prospect,
            will=will,
        )
        emotion = appraise(inp, registry)
        produced.add(emotion)
        if same and prospect:
            # hope/fear elicited first, then refined by the confirmation
            assert emotion in (EmotionType.HOPE, EmotionType.FEAR)
            emotion = resolve_prospect(registry, ("agent", "evt"), confirmed)
            produced.add(emotion)
        if emotion.value != expected_emotion(same, will, prospect, sign, confirmed):
            mismatches += 1
    assert combos == 32
    assert mismatches == 0
    assert produced == set(EmotionType), "all 12 emotion types must be reachable"
    report("occ-appraisal-table-equivalence", started, budget=1.0)


def test_intensity_formula_grid():
    """100x100 grid matches independently coded formulas within 1e-12."""
    started = time.perf_counter()
    expectations = np.linspace(0.0, 1.0, 100)
    desirabilities = np.linspace(-1.0, 1.0, 100)
    for e in expectations:
        for d in desirabilities:
            joy_ref = 1.7 * e**0.5 - 0.7 * d
            fear_ref = 2.0 * e**2 - d
            assert abs(intensity(EmotionType.JOY, e, d) - joy_ref) < 1e-12
            assert abs(intensity(EmotionType.HOPE, e, d) - joy_ref) < 1e-12
            assert abs(intensity(EmotionType.FEAR, e, d) - fear_ref) < 1e-12
            assert abs(intensity(EmotionType.DISTRESS, e, d) - fear_ref) < 1e-12
    assert intensity(EmotionType.FEAR, 1.0, -1.0) == pytest.approx(3.0, abs=1e-12)
    assert intensity(EmotionType.JOY, 0.25, -1.0) == pytest.approx(1.55, abs=1e-12)
    report("intensity-formula-grid", started, budget=1.0)


def test_fcm_linear_core_oracle():
    """50 random identity-activation models: k steps equal v0 . W^k."""
    started = time.perf_counter()
    rng = np.random.default_rng(2024)
    for _ in range(50):
        n = int(rng.integers(2, 9))
        weights = rng.normal(scale=0.5, size=(n, n))
        v0 = rng.normal(size=n)
        model = FcmModel(
            concepts=[Concept(f"c{i}", codomain=None) for i in range(n)],
            weights=weights,
        )
        state = FcmState(vector=v0.copy())
        for k in range(1, 21):
            state = fcm_step(state, model)
            expected = v0 @ np.linalg.matrix_power(weights, k)
            assert np.allclose(state.vector, expected, atol=1e-9), f"n={n} k={k}"
    report("fcm-linear-core-oracle", started)


def test_pursuit_dichotomy():
    """Shipped weights reproduce the capture/escape dichotomy with monotone
    curves, and the calibration log reports the achieved counts."""
    started = time.perf_counter()
    capture_run, capture_outcome = run_pursuit(
        PursuitParams(v_pursuer=10, v_evader_max=8, d_max=80, initial_distance_ratio=0.9)
    )
    assert capture_outcome is Outcome.ABSORBED
    assert capture_run[-1].vector[DISTANCE] <= 0.0
    d1 = [s.vector[DISTANCE] for s in capture_run]
    f1 = [s.vector[FEAR] for s in capture_run]
    assert all(b <= a + 1e-9 for a, b in zip(d1, d1[1:]))
    assert all(b >= a - 1e-9 for a, b in zip(f1[2:], f1[3:]))

    escape_run, escape_outcome = run_pursuit(
        PursuitParams(v_pursuer=10, v_evader_max=20, d_max=80, initial_distance_ratio=0.9)
    )
    assert escape_outcome is Outcome.FIXED_POINT
    assert escape_run[-1].vector[DISTANCE] > 0.0
    f2 = [s.vector[FEAR] for s in escape_run]
    d2 = [s.vector[DISTANCE] for s in escape_run]
    assert all(b <= a + 1e-9 for a, b in zip(d2, d2[1:]))
    assert all(b >= a - 1e-9 for a, b in zip(f2[2:], f2[3:]))
    assert abs(f2[-1] - f2[-2]) < 1e-5  # constant fear at the fixed point

    log = Path(__file__).resolve().parents[1] / "docs" / "pursuit-calibration.md"
    assert log.exists(), "calibration log must ship with the repo"
    text = log.read_text()
    capture_steps = len(capture_run) - 1
    steady_steps = len(escape_run) - 1
    assert f"absorbed at iteration {capture_steps}" in text
    assert f"fixed point detected at iteration {steady_steps}" in text
    report("pursuit-dichotomy", started, budget=2.0)


def test_forward_chaining_oracle():
    """200 random kbs match a brute-force closure; the reference teaching
    case yields the exact plan and loses it without the taught rule."""
    started = time.perf_counter()
    rng = random.Random(1234)
    predicates = [f"p{i}" for i in range(8)]
    for _ in range(200):
        rules: set[Rule] = set()
        while len(rules) < rng.randint(1, 10):
            size = rng.randint(1, 3)
            premises = tuple(rng.sample(predicates, size))
            candidates = [p for p in predicates if p not in premises]
            rules.add(Rule(premises, rng.choice(candidates)))
        facts = set(rng.sample(predicates, rng.randint(0, 3)))
        kb = KnowledgeBase(rules=rules, facts=facts)

        known = set(facts)
        while True:
            added = False
            for rule in rules:
                if set(rule.premises) <= known and rule.conclusion not in known:
                    known.add(rule.conclusion)
                    added = True
            if not added:
                break

        for p in predicates:
            derivable = not isinstance(forward_chain(kb, p), NoSolution)
            assert derivable == (p in known), f"{p}: engine and oracle disagree"

    taught = Rule(
        ("through_osmosis", "water_ratio(ground)>water_ratio(root)"),
        "entering_root",
        Provenance.TAUGHT,
    )
    builtins = {
        Rule(("enter_hole(osmosis)",), "through_osmosis", Provenance.BUILT_IN),
        Rule(("rain",), "water_ratio(ground)>water_ratio(root)", Provenance.BUILT_IN),
    }
    establishable = {
        "enter_hole(osmosis)": "enter_hole(osmosis)",
        "rain": "wait_for(rain)",
    }
    kb = KnowledgeBase(rules=builtins | {taught}, establishable=dict(establishable))
    plan = forward_chain(kb, "entering_root")
    assert not isinstance(plan, NoSolution)
    assert plan.steps == ["enter_hole(osmosis)", "wait_for(rain)"]
    without = KnowledgeBase(rules=set(builtins), establishable=dict(establishable))
    assert isinstance(forward_chain(without, "entering_root"), NoSolution)
    report("forward-chaining-oracle", started, budget=5.0)


GOLDEN_SCENARIOS = {
    "scenario_teach_clean.json": {
        "tasks": ["require_teaching", "show_approach", "save_knowledge"],
        "emotions": ["happy_for"],
        "absent_tasks": [],
    },
    "scenario_teach_reject.json": {
        "tasks": ["finish"],
        "emotions": ["distress"],
        "absent_tasks": ["save_knowledge"],
        "transitions": ["t8_finish"],
    },
    "scenario_auto_practice.json": {
        "tasks": ["save_knowledge", "execute_plan"],
        "emotions": ["happy_for", "hope", "satisfaction"],
        "absent_tasks": [],
    },
}


def test_golden_scenario_traces():
    """The three shipped scripts replay byte-identically and contain their
    task/emotion milestones."""
    started = time.perf_counter()
    for name, expected in GOLDEN_SCENARIOS.items():
        renders = []
        traces = []
        for _ in range(2):
            script = ScenarioScript.from_json(load_data_text(name))
            trace = run_scenario(script)
            traces.append(trace)
            renders.append("\n".join(r.to_json() for r in trace))
        assert renders[0] == renders[1], f"{name} replay differs"
        trace = traces[0]
        trace_tasks = [r.task for r in trace]
        emotions = [e["emotion"] for r in trace for e in r.emotions]
        for task in expected["tasks"]:
            assert task in trace_tasks, f"{name}: missing milestone {task}"
        for task in expected["absent_tasks"]:
            assert task not in trace_tasks, f"{name}: unexpected task {task}"
        for emotion in expected["emotions"]:
            assert emotion in emotions, f"{name}: missing emotion {emotion}"
        for transition in expected.get("transitions", []):
            assert any(r.transition == transition for r in trace)
    report("golden-scenario-traces", started)


BUILTIN_TASKS = [
    "detect_user", "init_sub_goal", "finish",
    "require_teaching", "check_response", "show_approach", "perceive_knowledge",
    "check_error", "alert_user", "save_knowledge",
    "perceive_inquiry", "identify_target", "reason_solution", "generate_plan",
    "execute_plan",
    "perceive_event", "reason_desirability", "check_identity", "check_will",
    "check_relevance", "compute_intensity", "express_emotion",
]


def _stub_registry() -> TaskRegistry:
    registry = TaskRegistry()
    for name in BUILTIN_TASKS:
        registry.register(name, lambda ctx: None)
    return registry


def _checked_run(net, blackboard, max_steps=200) -> int:
    """Step a context to completion, asserting the pre/post membership
    invariant after every step."""
    ctx = ExecutionContext(net=net, registry=_stub_registry(), blackboard=dict(blackboard))
    checked = 0
    while not ctx.at_terminal() and len(ctx.trace) < max_steps:
        before_state = ctx.current_state
        before_net = ctx.current_net_id
        step(ctx)
        record = ctx.trace[-1]
        if record.transition:
            t = net.all_nets()[record.net].transitions[record.transition]
            assert record.state_from in t.pre_states
            if record.outcome == "success":
                assert ctx.current_state in t.post_states or ctx.net_stack
            if record.outcome == "fork_activated":
                assert ctx.current_state in t.post_states or list(ctx.pending_activations)
            checked += 1
        del before_state, before_net
    assert ctx.at_terminal(), "net did not finish"
    return checked


def test_goalnet_structural_suite():
    """The four built-in nets load, validate, and honor the structural
    invariant on every executed step; mutations are rejected."""
    started = time.perf_counter()
    learning = load_goalnet(load_data_text("learning.json"))
    practice = load_goalnet(load_data_text("practice.json"))
    affect = load_goalnet(load_data_text("affect.json"))
    routine = load_goalnet(load_data_text("routine.json"), subnets=[learning, affect])
    for net in (routine, learning, practice, affect):
        validate_goalnet(net)

    checks = 0
    checks += _checked_run(learning, {"response": "agree", "map_submitted": True, "map_errors": False})
    checks += _checked_run(learning, {"response": "reject"})
    checks += _checked_run(practice, {"practice_goal": "entering_root", "solution_found": True})
    checks += _checked_run(practice, {"practice_goal": "entering_root", "solution_found": False})
    checks += _checked_run(
        affect,
        {
            "appraisal_event": "evt",
            "endurer_is_holder": True,
            "prospect_relevant": False,
        },
    )
    checks += _checked_run(
        affect,
        {
            "appraisal_event": "evt",
            "endurer_is_holder": False,
            "will": "good_will",
        },
    )
    checks += _checked_run(
        routine,
        {
            "user_present": True,
            "response": "agree",
            "map_submitted": True,
            "map_errors": False,
            "appraisal_event": "evt",
            "endurer_is_holder": True,
            "prospect_relevant": False,
        },
    )
    assert checks > 30

    # mutation: dangling arc
    dangling = {
        "net": "broken",
        "states": [
            {"id": "root", "kind": "root"},
            {"id": "a", "is_start": True},
            {"id": "b", "is_end": True},
        ],
        "transitions": [{"id": "t", "tasks": ["go"], "pre": ["a"], "post": ["ghost"]}],
    }
    with pytest.raises(ValidationError):
        load_goalnet(json.dumps(dangling))

    # mutation: cyclic branch
    inner = {
        "net": "inner",
        "states": [
            {"id": "root", "kind": "root"},
            {"id": "a", "is_start": True},
            {"id": "c", "kind": "composite", "sub_net": "outer"},
            {"id": "b", "is_end": True},
        ],
        "transitions": [
            {"id": "t1", "tasks": ["go"], "pre": ["a"], "post": ["c"]},
            {"id": "t2", "tasks": ["go"], "pre": ["c"], "post": ["b"]},
        ],
        "branches": [{"state": "c", "sub_net": "outer"}],
    }
    cyclic = {
        "net": "outer",
        "states": [
            {"id": "root", "kind": "root"},
            {"id": "a", "is_start": True},
            {"id": "c", "kind": "composite", "sub_net": "inner"},
            {"id": "b", "is_end": True},
        ],
        "transitions": [
            {"id": "t1", "tasks": ["go"], "pre": ["a"], "post": ["c"]},
            {"id": "t2", "tasks": ["go"], "pre": ["c"], "post": ["b"]},
        ],
        "branches": [{"state": "c", "sub_net": "inner"}],
        "subnets": [inner],
    }
    with pytest.raises(ValidationError):
        load_goalnet(json.dumps(cyclic))
    report("goalnet-structural-suite", started)


def test_authoring_round_trip_and_paths():
    """The shipped catalog compiles, round-trips, and 100 random valid paths
    execute goals in exactly the selected order."""
    started = time.perf_counter()
    catalog = load_catalog(
        load_data_text("vs_catalog.json"), point_catalog={1, 2, 3, 4, 5, 6, 7}
    )
    net = compile_catalog(catalog)
    validate_goalnet(net, require_subnets=True)
    doc = serialize_goalnet(net)
    reloaded = parse_goalnet(doc)
    validate_goalnet(reloaded, require_subnets=True)
    assert serialize_goalnet(reloaded) == doc

    registry = TaskRegistry()
    for goal in catalog.goals.values():
        for task in goal.task_list:
            registry.register(task, lambda ctx: None)

    rng = random.Random(77)
    paths_checked = 0
    while paths_checked < 100:
        chosen: list[str] = []
        available = set(catalog.goals)
        target_len = rng.randint(1, 9)
        while available and len(chosen) < target_len:
            ready = [
                g for g in sorted(available)
                if catalog.goals[g].prerequisites <= set(chosen)
            ]
            if not ready:
                break
            pick = rng.choice(ready)
            chosen.append(pick)
            available.discard(pick)
        if not chosen:
            continue
        paths_checked += 1
        path = assemble_path(catalog, chosen)
        personal = compile_path(catalog, path)
        trace = run_to_completion(personal, registry, {"max_steps": 300})
        visited = [
            r.state_from
            for r in trace
            if r.state_from in catalog.goals and r.outcome == "success"
        ]
        # oracle: the selection is itself the only valid topological order
        assert visited == chosen
    report("authoring-round-trip", started)
