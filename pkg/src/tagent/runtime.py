"""The agent main loop: events, threads, scenarios, and tracing.

A session drives three logical threads over a virtual clock: the routine
net senses the user and forks the goal pursuits, the teachability thread
runs the learning and practice nets, and the affect thread appraises every
event into emotion episodes.  Threads step once per tick in a fixed
priority order, so traces are deterministic and replayable; an optional
lockstep threaded mode runs the same schedule on real threads.
"""

from __future__ import annotations

import json
import random
import threading
from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Iterable

from tagent.affect import (
    DEFAULT_DECAY_B,
    DesirabilityTable,
    EmotionEpisode,
    EmotionType,
    ProspectRegistry,
    AppraisalInput,
    Will,
    appraise,
    decay_intensity,
    resolve_prospect,
)
from tagent.errors import (
    ParseError,
    TaskFailure,
    UnknownEvent,
)
from tagent.fcm import intensity, normalize_intensity
from tagent.goalnet import (
    ExecutionContext,
    GoalNet,
    TaskRegistry,
    TaskResult,
    TraceRecord,
    WouldBlock,
    load_goalnet,
    step,
)
from tagent.knowledge import (
    AllDone,
    ConceptMap,
    HintBook,
    KnowledgeBase,
    PanelKind,
    Provenance,
    Rule,
    TeachingPanel,
    Vocabulary,
    check_syntax,
    compile_map,
    forward_chain,
    map_accepted,
    select_panel,
    NoSolution,
)

TICKS_PER_SECOND = 10
TICK_SECONDS = 1.0 / TICKS_PER_SECOND
DEFAULT_MAX_TICKS = 600

AGENT_HOLDER = "agent"

SCRIPTED_EVENT_IDS = ("E1", "E2", "E3", "E4", "E5", "E6")

THREAD_ROUTINE = "routine"
THREAD_TEACH = "teachability"
THREAD_AFFECT = "affect"
THREAD_ORDER = (THREAD_ROUTINE, THREAD_TEACH, THREAD_AFFECT)

GOAL_LEARN = "to_learn_from_user"
GOAL_PRACTICE = "to_practice"
GOAL_AFFECT = "to_be_affective"


def load_data_text(name: str) -> str:
    return resources.files("tagent.data").joinpath(name).read_text()


def load_data_json(name: str) -> dict:
    return json.loads(load_data_text(name))


def load_builtin_nets() -> dict[str, GoalNet]:
    learning = load_goalnet(load_data_text("learning.json"))
    affect = load_goalnet(load_data_text("affect.json"))
    practice = load_goalnet(load_data_text("practice.json"))
    routine = load_goalnet(load_data_text("routine.json"), subnets=[learning, affect])
    return {
        "routine": routine,
        "learning": learning,
        "practice": practice,
        "affect": affect,
    }


def load_builtin_kb() -> KnowledgeBase:
    raw = load_data_json("vs_builtins.json")
    kb = KnowledgeBase()
    kb.add_rules(
        Rule(tuple(r["premises"]), r["conclusion"], Provenance.BUILT_IN)
        for r in raw["rules"]
    )
    kb.establishable = dict(raw["establishable"])
    points = load_data_json("vs_points.json")["points"]
    kb.point_catalog = {int(p["id"]) for p in points}
    return kb


def load_panels() -> list[TeachingPanel]:
    raw = load_data_json("vs_panels.json")
    return [
        TeachingPanel(
            panel_id=p["panel_id"],
            kind=PanelKind(p["kind"]),
            difficulty=int(p["difficulty"]),
            covered_points=frozenset(int(x) for x in p["covered_points"]),
            practice_goal=p.get("practice_goal", ""),
        )
        for p in raw["panels"]
    ]


# --- events and scripts --------------------------------------------------------


@dataclass
class SimEvent:
    event_id: str
    payload: dict = field(default_factory=dict)
    endurer: str = "student"
    timestamp: float = 0.0


@dataclass
class ScenarioScript:
    scenario_id: str
    events: list[tuple[float, SimEvent]]
    initial_blackboard: dict = field(default_factory=dict)
    seed: int = 0
    auto_practice: bool = False
    desirability_table: str = "vs_desirability"

    def __post_init__(self) -> None:
        for delay, _ in self.events:
            if delay < 0:
                raise ValueError("event delays must be non-negative")

    @classmethod
    def from_json(cls, source: str) -> "ScenarioScript":
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid scenario document: {exc}") from exc
        events = []
        for raw in doc.get("events", []):
            payload = dict(raw.get("payload", {}))
            if "map_ref" in payload:
                payload["map"] = load_data_json(payload.pop("map_ref") + ".json")
            events.append(
                (
                    float(raw.get("delay", 0.0)),
                    SimEvent(
                        event_id=raw["event_id"],
                        payload=payload,
                        endurer=raw.get("endurer", "student"),
                    ),
                )
            )
        return cls(
            scenario_id=doc.get("scenario", "scenario"),
            events=events,
            initial_blackboard=dict(doc.get("initial_blackboard", {})),
            seed=int(doc.get("seed", 0)),
            auto_practice=bool(doc.get("auto_practice", False)),
            desirability_table=doc.get("desirability_table", "vs_desirability"),
        )


@dataclass
class AppraisalJob:
    """One unit of affect-thread work: a first-phase appraisal, or the
    resolution of a pending hope/fear."""

    content: str
    endurer: str
    resolves: str = ""
    confirmed: bool = True


# --- the agent -------------------------------------------------------------------


@dataclass
class AgentInstance:
    agent_id: str
    role: str
    kb: KnowledgeBase
    nets: dict[str, GoalNet]
    desirability: DesirabilityTable
    panels: list[TeachingPanel]
    hints: HintBook
    vocabulary: Vocabulary
    emotion_snapshot: list[EmotionEpisode] = field(default_factory=list)
    intensity_overrides: dict[EmotionType, float] = field(default_factory=dict)

    def live_episodes(self, now: float) -> list[EmotionEpisode]:
        kept = []
        for episode in self.emotion_snapshot:
            decay_intensity(episode, max(0.0, now - episode.born_at))
            if not episode.expired:
                kept.append(episode)
        self.emotion_snapshot = kept
        return kept


def build_vs_agent(agent_id: str = "water_molecule") -> AgentInstance:
    """Assemble the shipped water-molecule agent with built-in content."""
    return AgentInstance(
        agent_id=agent_id,
        role="water_molecule",
        kb=load_builtin_kb(),
        nets=load_builtin_nets(),
        desirability=DesirabilityTable.from_dict(load_data_json("vs_desirability.json")),
        panels=load_panels(),
        hints=HintBook.from_dict(load_data_json("vs_points.json")),
        vocabulary=Vocabulary.from_dict(load_data_json("vs_vocabulary.json")),
    )


def dispatch(event: SimEvent, agent: AgentInstance) -> set[str]:
    """Map an event onto the goals it activates."""
    eid = event.event_id
    if eid not in SCRIPTED_EVENT_IDS and eid not in agent.desirability:
        raise UnknownEvent(f"event {eid!r} is not registered")
    activated = {GOAL_AFFECT}
    if eid == "E1":
        activated.add(GOAL_LEARN)
    if eid == "E3":
        activated.add(GOAL_PRACTICE)
    return activated


def emotion_state(agent: AgentInstance, now: float) -> list[tuple[EmotionType, float]]:
    """Live (emotion, decayed normalized intensity) pairs, strongest first."""
    rows = []
    for episode in agent.live_episodes(now):
        raw = decay_intensity(episode, max(0.0, now - episode.born_at))
        value = normalize_intensity(episode.emotion, raw, agent.intensity_overrides)
        rows.append((episode.emotion, value))
    rows.sort(key=lambda row: (-row[1], row[0].value))
    return rows


# --- per-thread execution ---------------------------------------------------------


class NetThread:
    """One logical thread: a queue of net executions stepped one per tick."""

    def __init__(self, name: str, session: "AgentSession") -> None:
        self.name = name
        self.session = session
        self.queue: deque[tuple[GoalNet, dict]] = deque()
        self.ctx: ExecutionContext | None = None
        self.blackboard: dict[str, Any] = {}
        self.rng = random.Random(f"{session.seed}:{name}")
        self.step_counter = 0
        self.parked = False

    def enqueue(self, net: GoalNet, extra: dict | None = None) -> None:
        self.queue.append((net, dict(extra or {})))

    def has_work(self) -> bool:
        return self.ctx is not None or bool(self.queue)

    def _start_next(self) -> None:
        net, extra = self.queue.popleft()
        self.blackboard.update(extra)
        self.ctx = ExecutionContext(
            net=net,
            registry=self.session.registry,
            blackboard=self.blackboard,
            rng=self.rng,
            thread_name=self.name,
        )

    def tick(self) -> None:
        self.parked = False
        if self.ctx is None:
            if not self.queue:
                return
            self._start_next()
        ctx = self.ctx
        assert ctx is not None
        ctx.now = self.session.now
        before = len(ctx.trace)
        try:
            step(ctx)
        except WouldBlock:
            self.parked = True
        except TaskFailure:
            # failure already traced; drop the execution, not the session
            self.ctx = None
        self._collect(ctx, before)
        if self.ctx is not None and self.ctx.at_terminal():
            self.ctx = None

    def _collect(self, ctx: ExecutionContext, start: int) -> None:
        new = ctx.trace[start:]
        if not new:
            return
        pending = ctx.blackboard.pop("_emissions", None)
        if pending:
            new[-1].emotions.extend(pending)
        for record in new:
            record.thread = self.name
            record.step = self.step_counter
            self.step_counter += 1
            self.session.trace.append(record)


class RoutineThread(NetThread):
    """The main routine cycles; a terminal pass starts over next tick."""

    def tick(self) -> None:
        if self.ctx is None:
            self._start_next()
        assert self.ctx is not None
        self.blackboard["subgoal_work"] = (
            self.session.teachability.has_work() or self.session.affect.has_work()
        )
        super().tick()
        if self.ctx is None:  # finished a pass; queue the next one
            self.enqueue(self.session.agent.nets["routine"])

    def _start_next(self) -> None:
        if not self.queue:
            self.enqueue(self.session.agent.nets["routine"])
        super()._start_next()
        assert self.ctx is not None
        self.ctx.composite_policy = RoutineDelegation(self.session)


class RoutineDelegation:
    """Composite states of the routine stand for the worker threads; they
    are complete when their thread has drained."""

    COMPOSITE_THREADS = {
        "teachability_pursuit": THREAD_TEACH,
        "affect_pursuit": THREAD_AFFECT,
    }

    def __init__(self, session: "AgentSession") -> None:
        self.session = session
        self.activated: set[str] = set()

    def on_activate(self, ctx: ExecutionContext, state_id: str) -> None:
        if state_id in self.activated:
            raise WouldBlock(f"waiting on {state_id}")
        self.activated.add(state_id)

    def is_complete(self, ctx: ExecutionContext, state_id: str) -> bool:
        if state_id not in self.activated:
            return False
        thread_name = self.COMPOSITE_THREADS.get(state_id)
        if thread_name is None:
            return True
        thread: NetThread = getattr(self.session, thread_name)
        return not thread.has_work()


# --- the session -------------------------------------------------------------------


class AgentSession:
    """A live agent runtime fed by scripted or interactive events."""

    def __init__(
        self,
        agent: AgentInstance,
        seed: int = 0,
        auto_practice: bool = True,
        initial_blackboard: dict | None = None,
    ) -> None:
        self.agent = agent
        self.seed = seed
        self.auto_practice = auto_practice
        self.now = 0.0
        self.trace: list[TraceRecord] = []
        self.emissions: list[dict] = []
        self.prospects = ProspectRegistry()
        self.registry = build_agent_registry(self)
        self.routine = RoutineThread(THREAD_ROUTINE, self)
        self.teachability = NetThread(THREAD_TEACH, self)
        self.affect = NetThread(THREAD_AFFECT, self)
        self.routine.blackboard.update(initial_blackboard or {"user_present": False})
        self.pending_events: deque[SimEvent] = deque()
        self.last_activity = 0.0
        self.stall_episode = 0
        self.last_diagnostics: list = []
        self.last_plan: list[str] | None = None
        self.last_practice_outcome: str = ""
        self.hint_log: list[dict] = []

    # -- event intake ------------------------------------------------------------

    def inject(self, event: SimEvent) -> set[str]:
        """Deliver one event: update blackboards and enqueue goal work."""
        activated = dispatch(event, self.agent)
        event.timestamp = self.now
        self.last_activity = self.now
        self.stall_episode += 1
        if event.event_id == "E1":
            self.routine.blackboard["user_present"] = True
        if event.event_id == "E2":
            self.teachability.blackboard["response"] = event.payload.get("response", "agree")
        if event.event_id == "E4":
            raw_map = event.payload.get("map", {"nodes": [], "links": []})
            self.teachability.blackboard["submitted_map"] = raw_map
            self.teachability.blackboard["map_submitted"] = True
            self.teachability.blackboard.pop("map_errors", None)
        if GOAL_LEARN in activated:
            self.teachability.enqueue(self.agent.nets["learning"])
        if GOAL_PRACTICE in activated:
            goal = event.payload.get("goal") or self._default_practice_goal()
            self.enqueue_practice(goal)
        self._enqueue_appraisal(event)
        return activated

    def _default_practice_goal(self) -> str:
        for panel in self.agent.panels:
            if panel.practice_goal:
                return panel.practice_goal
        return "entering_root"

    def enqueue_practice(self, goal: str) -> None:
        self.teachability.enqueue(
            self.agent.nets["practice"], {"practice_goal": goal}
        )
        self.affect.enqueue(
            self._affect_net(), self._appraisal_blackboard(AppraisalJob("attempt_transport", AGENT_HOLDER))
        )

    def _affect_net(self) -> GoalNet:
        return self.agent.nets["affect"]

    def _event_content(self, event: SimEvent) -> AppraisalJob | None:
        eid = event.event_id
        payload = event.payload
        if eid == "E1":
            return AppraisalJob("meet_student", AGENT_HOLDER)
        if eid == "E2":
            agreed = payload.get("response", "agree") == "agree"
            content = "get_acceptance_from_student" if agreed else "get_rejection_from_student"
            return AppraisalJob(content, AGENT_HOLDER)
        if eid == "E3":
            teaching = bool(payload.get("teaching", True))
            return AppraisalJob(
                "student_teaching" if teaching else "student_idle", AGENT_HOLDER
            )
        if eid == "E4":
            raw_map = payload.get("map", {"nodes": [], "links": []})
            cmap = ConceptMap.from_dict(raw_map)
            clean = map_accepted(check_syntax(cmap, self.agent.vocabulary))
            content = "concept_map_correct" if clean else "concept_map_error"
            return AppraisalJob(content, "student")
        if eid == "E5":
            return AppraisalJob("attempt_transport", AGENT_HOLDER)
        if eid == "E6":
            success = bool(payload.get("success", True))
            content = "transport_succeeded" if success else "transport_blocked"
            return AppraisalJob(
                content, AGENT_HOLDER, resolves="attempt_transport", confirmed=success
            )
        # authored event ids appraise as themselves
        entry = self.agent.desirability.entry_for(eid)
        return AppraisalJob(eid, entry.endurer or AGENT_HOLDER)

    def _appraisal_blackboard(self, job: AppraisalJob) -> dict:
        entry = self.agent.desirability.entry_for(job.content)
        endurer = self.agent.agent_id if job.endurer == AGENT_HOLDER else job.endurer
        return {
            "appraisal_event": job.content,
            "appraisal_endurer": endurer,
            "endurer_is_holder": endurer == self.agent.agent_id,
            "will": Will.GOOD_WILL.value,
            "prospect_relevant": entry.prospect_relevant,
            "desirability": entry.desirability,
            "expectation": entry.expectation,
            "resolves": job.resolves,
            "resolve_confirmed": job.confirmed,
        }

    def _enqueue_appraisal(self, event: SimEvent) -> None:
        job = self._event_content(event)
        if job is not None:
            self.affect.enqueue(self._affect_net(), self._appraisal_blackboard(job))

    def enqueue_resolution(self, antecedent: str, content: str, confirmed: bool) -> None:
        job = AppraisalJob(content, AGENT_HOLDER, resolves=antecedent, confirmed=confirmed)
        self.affect.enqueue(self._affect_net(), self._appraisal_blackboard(job))

    # -- emotions ----------------------------------------------------------------

    def emit_emotion(
        self, emotion: EmotionType, raw: float, cause: str, target: str
    ) -> dict:
        value = normalize_intensity(emotion, raw, self.agent.intensity_overrides)
        episode = EmotionEpisode(
            emotion=emotion,
            raw_intensity=raw,
            intensity=value,
            cause=cause,
            target=target,
            born_at=self.now,
            decay_rate_b=DEFAULT_DECAY_B,
        )
        self.agent.emotion_snapshot.append(episode)
        emission = {
            "holder": self.agent.agent_id,
            "emotion": emotion.value,
            "intensity": round(value, 9),
            "cause": cause,
            "t": round(self.now, 6),
        }
        self.emissions.append(emission)
        return emission

    # -- stall hints --------------------------------------------------------------

    def check_stall(self) -> None:
        stalled_for = self.now - self.last_activity
        panel_id = self.teachability.blackboard.get("current_panel")
        if not panel_id:
            return
        panel = next((p for p in self.agent.panels if p.panel_id == panel_id), None)
        if panel is None:
            return
        open_points = sorted(panel.covered_points - self.agent.kb.learned_points)
        if not open_points:
            return
        hint = self.agent.hints.hint_on_stall(
            open_points[0], stalled_for, episode=self.stall_episode
        )
        if hint is not None:
            self.hint_log.append(
                {
                    "point": hint.point,
                    "title": hint.title,
                    "scene_ref": hint.scene_ref,
                    "t": round(self.now, 6),
                }
            )

    # -- scheduling ---------------------------------------------------------------

    def quiescent(self) -> bool:
        return (
            not self.pending_events
            and not self.teachability.has_work()
            and not self.affect.has_work()
            and self.routine.parked
        )

    def tick(self) -> None:
        while self.pending_events and self.pending_events[0].timestamp <= self.now + 1e-9:
            event = self.pending_events.popleft()
            self.inject(event)
        for thread in (self.routine, self.teachability, self.affect):
            thread.tick()
        self.check_stall()
        self.now = round(self.now + TICK_SECONDS, 6)

    def run(self, max_ticks: int = DEFAULT_MAX_TICKS, stable_ticks: int = 3) -> None:
        """Tick until quiescent, until the trace stops growing with no events
        left to deliver, or until the tick budget runs out."""
        unchanged = 0
        for _ in range(max_ticks):
            before = len(self.trace)
            self.tick()
            if self.quiescent():
                break
            if not self.pending_events and len(self.trace) == before:
                unchanged += 1
                if unchanged >= stable_ticks:
                    break
            else:
                unchanged = 0

    def run_threaded(self, max_ticks: int = DEFAULT_MAX_TICKS) -> None:
        """Lockstep threaded mode: each logical thread runs on a real thread,
        released one at a time in the fixed priority order."""
        threads = [self.routine, self.teachability, self.affect]
        go = [threading.Event() for _ in threads]
        done = [threading.Event() for _ in threads]
        stop = threading.Event()

        def worker(index: int) -> None:
            while True:
                go[index].wait()
                go[index].clear()
                if stop.is_set():
                    return
                threads[index].tick()
                done[index].set()

        workers = [
            threading.Thread(target=worker, args=(i,), daemon=True)
            for i in range(len(threads))
        ]
        for w in workers:
            w.start()
        try:
            unchanged = 0
            for _ in range(max_ticks):
                before = len(self.trace)
                while self.pending_events and self.pending_events[0].timestamp <= self.now + 1e-9:
                    self.inject(self.pending_events.popleft())
                for i in range(len(threads)):
                    done[i].clear()
                    go[i].set()
                    done[i].wait()
                self.check_stall()
                self.now = round(self.now + TICK_SECONDS, 6)
                if self.quiescent():
                    break
                if not self.pending_events and len(self.trace) == before:
                    unchanged += 1
                    if unchanged >= 3:
                        break
                else:
                    unchanged = 0
        finally:
            stop.set()
            for g in go:
                g.set()
            for w in workers:
                w.join(timeout=1.0)


def run_scenario(
    script: ScenarioScript,
    agent: AgentInstance | None = None,
    max_ticks: int = DEFAULT_MAX_TICKS,
    threaded: bool = False,
) -> list[TraceRecord]:
    """Execute a scripted event stream against a fresh or given agent."""
    agent = agent or build_vs_agent()
    session = AgentSession(
        agent,
        seed=script.seed,
        auto_practice=script.auto_practice,
        initial_blackboard=dict(script.initial_blackboard),
    )
    clock = 0.0
    for delay, event in script.events:
        clock = round(clock + delay, 6)
        event.timestamp = clock
        session.pending_events.append(event)
    if threaded:
        session.run_threaded(max_ticks)
    else:
        session.run(max_ticks)
    return session.trace


def write_trace(trace: Iterable[TraceRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in trace:
            fh.write(record.to_json() + "\n")


# --- task hooks --------------------------------------------------------------------


def build_agent_registry(session: AgentSession) -> TaskRegistry:
    """Bind every built-in net task to the session."""
    agent = session.agent
    registry = TaskRegistry()

    def noop(ctx: ExecutionContext) -> None:
        return None

    for name in (
        "detect_user",
        "init_sub_goal",
        "finish",
        "require_teaching",
        "check_response",
        "perceive_knowledge",
        "identify_target",
        "perceive_event",
        "reason_desirability",
        "check_identity",
        "check_will",
        "check_relevance",
    ):
        registry.register(name, noop)

    def show_approach(ctx: ExecutionContext) -> TaskResult:
        chosen = select_panel(agent.kb, agent.panels)
        if isinstance(chosen, AllDone):
            ctx.blackboard["current_panel"] = ""
            return TaskResult.ok("all_done")
        ctx.blackboard["current_panel"] = chosen.panel_id
        return TaskResult.ok(chosen.panel_id)

    def check_error(ctx: ExecutionContext) -> TaskResult:
        raw_map = ctx.blackboard.get("submitted_map", {"nodes": [], "links": []})
        cmap = ConceptMap.from_dict(raw_map)
        diagnostics = check_syntax(cmap, agent.vocabulary)
        session.last_diagnostics = diagnostics
        ctx.blackboard["map_errors"] = not map_accepted(diagnostics)
        return TaskResult.ok(ctx.blackboard["map_errors"])

    def alert_user(ctx: ExecutionContext) -> TaskResult:
        if ctx.current_net_id == "learning":
            # syntax errors: clear the submission and log mistakes
            ctx.blackboard["map_submitted"] = False
            panel_id = ctx.blackboard.get("current_panel")
            panel = next(
                (p for p in agent.panels if p.panel_id == panel_id), None
            )
            if panel is not None:
                for point in sorted(panel.covered_points - agent.kb.learned_points):
                    agent.kb.record_mistake(point, session.now)
        else:
            # practice had no solution: beg for more teaching, the pending
            # hope is disconfirmed (the attempt appraisal precedes this in
            # the affect queue)
            session.last_practice_outcome = "no_solution"
            session.enqueue_resolution(
                "attempt_transport", "transport_blocked", confirmed=False
            )
        return TaskResult.ok()

    def save_knowledge(ctx: ExecutionContext) -> TaskResult:
        raw_map = ctx.blackboard.get("submitted_map", {"nodes": [], "links": []})
        cmap = ConceptMap.from_dict(raw_map)
        rules = compile_map(cmap, agent.vocabulary)
        agent.kb.add_rules(rules)
        panel_id = ctx.blackboard.get("current_panel")
        panel = next((p for p in agent.panels if p.panel_id == panel_id), None)
        if panel is not None:
            agent.kb.mark_learned(panel.covered_points)
            if (
                session.auto_practice
                and panel.practice_goal
                and panel.covered_points <= agent.kb.learned_points
            ):
                session.enqueue_practice(panel.practice_goal)
        ctx.blackboard["map_submitted"] = False
        return TaskResult.ok(len(rules))

    def perceive_inquiry(ctx: ExecutionContext) -> TaskResult:
        ctx.blackboard["active_goal"] = ctx.blackboard.get("practice_goal", "")
        return TaskResult.ok()

    def reason_solution(ctx: ExecutionContext) -> TaskResult:
        goal = ctx.blackboard.get("active_goal", "")
        plan = forward_chain(agent.kb, goal)
        if isinstance(plan, NoSolution):
            ctx.blackboard["solution_found"] = False
            session.last_plan = None
        else:
            ctx.blackboard["solution_found"] = True
            ctx.blackboard["plan_steps"] = list(plan.steps)
            session.last_plan = list(plan.steps)
        return TaskResult.ok()

    def generate_plan(ctx: ExecutionContext) -> TaskResult:
        return TaskResult.ok(ctx.blackboard.get("plan_steps", []))

    def execute_plan(ctx: ExecutionContext) -> TaskResult:
        session.last_practice_outcome = "success"
        ctx.blackboard.pop("practice_goal", None)
        session.enqueue_resolution(
            "attempt_transport", "transport_succeeded", confirmed=True
        )
        return TaskResult.ok()

    def compute_intensity(ctx: ExecutionContext) -> TaskResult:
        board = ctx.blackboard
        content = board["appraisal_event"]
        desirability = float(board["desirability"])
        expectation = float(board["expectation"])
        if board.get("resolves"):
            key = (agent.agent_id, board["resolves"])
            pending = session.prospects.pending(*key)
            if pending is None:
                # a confirmation with no antecedent: record, don't crash
                return TaskResult.fail(f"no pending prospect for {key!r}")
            antecedent = pending.raw_intensity
            emotion = resolve_prospect(
                session.prospects, key, bool(board["resolve_confirmed"])
            )
            raw = intensity(emotion, expectation, abs(desirability), antecedent=antecedent)
        else:
            inp = AppraisalInput(
                event_content=content,
                event_endurer=board["appraisal_endurer"],
                emotion_holder=agent.agent_id,
                holder_goal=agent.desirability.entry_for(content).goal,
                desirability=desirability,
                prospect_relevant=bool(board["prospect_relevant"]),
                will=Will(board["will"]) if board["appraisal_endurer"] != agent.agent_id else None,
                expectation=expectation,
            )
            emotion = appraise(inp)
            raw = intensity(emotion, expectation, desirability)
            raw = max(raw, 0.0)
        board["elicited_emotion"] = emotion.value
        board["elicited_raw"] = raw
        if emotion in (EmotionType.HOPE, EmotionType.FEAR):
            episode = EmotionEpisode(
                emotion=emotion,
                raw_intensity=raw,
                intensity=normalize_intensity(emotion, raw, agent.intensity_overrides),
                cause=content,
                target=board["appraisal_endurer"],
                born_at=session.now,
            )
            session.prospects.register(agent.agent_id, content, episode)
        return TaskResult.ok(emotion.value)

    def express_emotion(ctx: ExecutionContext) -> TaskResult:
        emotion = EmotionType(ctx.blackboard["elicited_emotion"])
        raw = float(ctx.blackboard["elicited_raw"])
        emission = session.emit_emotion(
            emotion,
            raw,
            cause=ctx.blackboard["appraisal_event"],
            target=ctx.blackboard["appraisal_endurer"],
        )
        ctx.blackboard.setdefault("_emissions", []).append(emission)
        return TaskResult.ok(emission)

    registry.register("show_approach", show_approach)
    registry.register("check_error", check_error)
    registry.register("alert_user", alert_user)
    registry.register("save_knowledge", save_knowledge)
    registry.register("perceive_inquiry", perceive_inquiry)
    registry.register("reason_solution", reason_solution)
    registry.register("generate_plan", generate_plan)
    registry.register("execute_plan", execute_plan)
    registry.register("compute_intensity", compute_intensity)
    registry.register("express_emotion", express_emotion)
    return registry
