"""End-to-end teaching session at the library level.

Creates the shipped water-molecule agent, drives the full loop by hand:
meet the student, get agreement, teach the reference concept map, let the
agent practice, and watch its emotions along the way.

Run:  python3 demos/04_teaching_session.py
"""

from tagent.runtime import (
    AgentSession,
    SimEvent,
    build_vs_agent,
    emotion_state,
    load_data_json,
)


def print_emotions(session: AgentSession) -> None:
    rows = emotion_state(session.agent, session.now)
    if not rows:
        print("    (no live emotions)")
    for emotion, value in rows:
        bar = "#" * int(round(value * 20))
        print(f"    {emotion.value:<15} {value:.3f} {bar}")


def main() -> None:
    agent = build_vs_agent()
    session = AgentSession(agent, seed=7, auto_practice=True)

    print("1) the student walks up to the water molecule (E1)")
    session.inject(SimEvent("E1", endurer="student"))
    session.run()
    print_emotions(session)

    print("\n2) the student agrees to teach (E2)")
    session.inject(SimEvent("E2", {"response": "agree"}, endurer="agent"))
    session.run()
    print(f"    panel shown: {session.teachability.blackboard.get('current_panel')}")

    print("\n3) the student teaches the reference concept map (E4)")
    session.inject(
        SimEvent("E4", {"map": load_data_json("osmosis_map.json")}, endurer="student")
    )
    session.run()
    print(f"    diagnostics: {[d.code for d in session.last_diagnostics] or 'none'}")
    print(f"    learned points: {sorted(agent.kb.learned_points)}")
    print(f"    taught rules: {len([r for r in agent.kb.rules if r.provenance.value == 'taught'])}")
    print("    auto-practice kicked in:")
    print(f"    plan: {session.last_plan}")
    print(f"    outcome: {session.last_practice_outcome}")
    print_emotions(session)

    print("\n4) the merged trace")
    print(f"    {len(session.trace)} records across threads "
          f"{sorted(set(r.thread for r in session.trace))}")
    emissions = [e for r in session.trace for e in r.emotions]
    print("    emotion timeline:")
    for emission in emissions:
        print(
            f"      t={emission['t']:>5}  {emission['emotion']:<13} "
            f"intensity={emission['intensity']:.3f}  cause={emission['cause']}"
        )


if __name__ == "__main__":
    main()
