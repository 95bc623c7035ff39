"""HTTP session service exposing the live teaching loop.

Each session wraps one agent runtime.  Requests within a session are
serialized; responses carry the emotion events the request elicited, and a
server-push stream replays emotion/trace events with monotone ids so
clients can resume after a disconnect.
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from dataclasses import dataclass, field
from typing import Any, Iterator

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import StreamingResponse
from pydantic import BaseModel

from tagent.authoring import GoalCatalog, assemble_path, compile_path, load_catalog
from tagent.errors import (
    DuplicateSelection,
    PrerequisiteViolation,
    TagentError,
    ValidationError,
)
from tagent.knowledge import NoSolution, forward_chain
from tagent.runtime import (
    AgentSession,
    SimEvent,
    build_vs_agent,
    emotion_state,
    load_data_text,
)

DEFAULT_EXPIRY_SECONDS = 30 * 60

TRACE_EVENT = "trace"
EMOTION_EVENT = "emotion"


class CreateSessionBody(BaseModel):
    catalog_id: str
    seed: int = 0


class MapBody(BaseModel):
    map_id: str = "map"
    topic: str = ""
    nodes: list[dict] = []
    links: list[dict] = []


class PracticeBody(BaseModel):
    goal: str


class PathBody(BaseModel):
    selections: list[str]


@dataclass
class PushEvent:
    id: int
    kind: str
    data: dict

    def render(self) -> str:
        payload = json.dumps(self.data, sort_keys=True, separators=(",", ":"))
        return f"id: {self.id}\nevent: {self.kind}\ndata: {payload}\n\n"


@dataclass
class ServiceSession:
    token: str
    runtime: AgentSession
    catalog_id: str
    path: list[str] = field(default_factory=list)
    events: list[PushEvent] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_touch: float = field(default_factory=time.monotonic)
    trace_cursor: int = 0
    agreed: bool = False

    def touch(self) -> None:
        self.last_touch = time.monotonic()

    def expired(self, expiry_seconds: float) -> bool:
        return time.monotonic() - self.last_touch > expiry_seconds

    def sync_events(self) -> None:
        """Fold newly appended trace records into the push-event log."""
        for record in self.runtime.trace[self.trace_cursor :]:
            self.events.append(
                PushEvent(len(self.events), TRACE_EVENT, record.to_dict())
            )
            for emission in record.emotions:
                self.events.append(
                    PushEvent(len(self.events), EMOTION_EVENT, dict(emission))
                )
        self.trace_cursor = len(self.runtime.trace)

    def emissions_since(self, start: int) -> list[dict]:
        return [dict(e) for e in self.runtime.emissions[start:]]


def create_app(expiry_seconds: float = DEFAULT_EXPIRY_SECONDS) -> FastAPI:
    app = FastAPI(title="teachable-agent sessions")
    catalogs: dict[str, GoalCatalog] = {}
    vs_catalog = load_catalog(
        load_data_text("vs_catalog.json"), point_catalog={1, 2, 3, 4, 5, 6, 7}
    )
    catalogs[vs_catalog.catalog_id] = vs_catalog
    sessions: dict[str, ServiceSession] = {}
    app.state.catalogs = catalogs
    app.state.sessions = sessions

    def get_session(token: str) -> ServiceSession:
        session = sessions.get(token)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        if session.expired(expiry_seconds):
            sessions.pop(token, None)
            raise HTTPException(status_code=410, detail="session expired")
        session.touch()
        return session

    @app.get("/catalogs")
    def list_catalogs() -> list[dict]:
        out = []
        for catalog in catalogs.values():
            out.append(
                {
                    "catalog_id": catalog.catalog_id,
                    "root_description": catalog.root_description,
                    "topics": list(catalog.topics),
                    "goals": [
                        {
                            "id": g.id,
                            "topic": g.topic,
                            "difficulty": g.difficulty,
                            "description": g.description,
                            "prerequisites": sorted(g.prerequisites),
                            "covered_points": sorted(g.covered_points),
                        }
                        for g in sorted(
                            catalog.goals.values(), key=lambda g: (g.topic, g.difficulty)
                        )
                    ],
                }
            )
        return out

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody) -> dict:
        if body.catalog_id not in catalogs:
            raise HTTPException(status_code=404, detail="unknown catalog")
        token = secrets.token_urlsafe(16)
        agent = build_vs_agent()
        runtime = AgentSession(agent, seed=body.seed, auto_practice=True)
        session = ServiceSession(token=token, runtime=runtime, catalog_id=body.catalog_id)
        with session.lock:
            runtime.inject(SimEvent("E1", endurer="student"))
            runtime.run()
            session.sync_events()
        sessions[token] = session
        return {
            "session_id": token,
            "catalog_id": body.catalog_id,
            "agent": agent.agent_id,
            "emotion_events": session.emissions_since(0),
        }

    @app.get("/sessions/{token}/state")
    def session_state(token: str) -> dict:
        session = get_session(token)
        with session.lock:
            runtime = session.runtime
            emotions = [
                {"emotion": emotion.value, "intensity": round(value, 9)}
                for emotion, value in emotion_state(runtime.agent, runtime.now)
            ]
            return {
                "session_id": token,
                "now": runtime.now,
                "emotions": emotions,
                "learned_points": sorted(runtime.agent.kb.learned_points),
                "mistakes": sorted(runtime.agent.kb.mistake_points()),
                "current_panel": runtime.teachability.blackboard.get("current_panel", ""),
                "path": list(session.path),
                "trace_length": len(runtime.trace),
                "hints": list(runtime.hint_log),
            }

    @app.post("/sessions/{token}/map")
    def submit_map(token: str, body: MapBody) -> dict:
        session = get_session(token)
        with session.lock:
            runtime = session.runtime
            emission_start = len(runtime.emissions)
            if not session.agreed:
                runtime.inject(SimEvent("E2", {"response": "agree"}, endurer="agent"))
                runtime.run()
                session.agreed = True
            learned_before = set(runtime.agent.kb.learned_points)
            runtime.inject(
                SimEvent("E4", {"map": body.model_dump()}, endurer="student")
            )
            runtime.run()
            session.sync_events()
            diagnostics = [
                {
                    "code": d.code,
                    "severity": d.severity.value,
                    "message": d.message,
                    "subject": d.subject,
                }
                for d in runtime.last_diagnostics
            ]
            learned = runtime.agent.kb.learned_points > learned_before or (
                not diagnostics and bool(body.links)
            )
            return {
                "diagnostics": diagnostics,
                "learned": bool(learned),
                "emotion_events": session.emissions_since(emission_start),
            }

    @app.post("/sessions/{token}/practice")
    def request_practice(token: str, body: PracticeBody) -> dict:
        session = get_session(token)
        with session.lock:
            runtime = session.runtime
            emission_start = len(runtime.emissions)
            plan = forward_chain(runtime.agent.kb, body.goal)
            runtime.inject(SimEvent("E3", {"goal": body.goal}, endurer="agent"))
            runtime.run()
            session.sync_events()
            if isinstance(plan, NoSolution):
                return {
                    "plan": None,
                    "no_solution": True,
                    "outcome": runtime.last_practice_outcome,
                    "message": "no solution found; please teach me more",
                    "emotion_events": session.emissions_since(emission_start),
                }
            return {
                "plan": list(plan.steps),
                "no_solution": False,
                "outcome": runtime.last_practice_outcome,
                "emotion_events": session.emissions_since(emission_start),
            }

    @app.post("/sessions/{token}/path")
    def select_path(token: str, body: PathBody) -> dict:
        session = get_session(token)
        with session.lock:
            catalog = catalogs[session.catalog_id]
            try:
                path = assemble_path(catalog, body.selections)
                net = compile_path(catalog, path)
            except PrerequisiteViolation as exc:
                raise HTTPException(
                    status_code=422,
                    detail={
                        "error": "prerequisite_violation",
                        "goal": exc.goal,
                        "prerequisite": exc.prerequisite,
                    },
                ) from exc
            except DuplicateSelection as exc:
                raise HTTPException(
                    status_code=422,
                    detail={"error": "duplicate_selection", "message": str(exc)},
                ) from exc
            except ValidationError as exc:
                raise HTTPException(
                    status_code=422,
                    detail={"error": "validation", "message": str(exc)},
                ) from exc
            session.path = list(path.goal_ids)
            return {
                "path": list(path.goal_ids),
                "net": net.id,
                "first_goal": path.goal_ids[0],
            }

    @app.get("/sessions/{token}/events")
    def event_stream(
        token: str,
        request: Request,
        last_event_id: int | None = Query(default=None),
        once: bool = Query(default=False),
    ) -> StreamingResponse:
        session = get_session(token)
        resume_from = last_event_id
        if resume_from is None:
            header = request.headers.get("last-event-id")
            resume_from = int(header) if header is not None else -1

        def stream() -> Iterator[str]:
            cursor = resume_from + 1
            while True:
                with session.lock:
                    session.sync_events()
                    backlog = session.events[cursor:]
                for event in backlog:
                    yield event.render()
                    cursor = event.id + 1
                if once:
                    return
                time.sleep(0.1)
                yield ": keep-alive\n\n"

        return StreamingResponse(stream(), media_type="text/event-stream")

    @app.exception_handler(TagentError)
    def tagent_error_handler(request: Request, exc: TagentError):  # pragma: no cover
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=422, content={"detail": str(exc)})

    return app


app = create_app()
