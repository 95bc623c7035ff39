"""Walk the built-in learning net step by step.

Loads the learning goal net, wires stub tasks, and narrates an agree-path
run and a reject-path run, printing each transition as it fires.

Run:  python3 demos/01_goalnet_walkthrough.py
"""

from tagent.goalnet import ExecutionContext, TaskRegistry, load_goalnet, step
from tagent.runtime import load_data_text

TASKS = [
    "require_teaching", "check_response", "show_approach", "perceive_knowledge",
    "check_error", "alert_user", "save_knowledge", "finish",
]


def narrate(title: str, blackboard: dict, hooks: dict | None = None) -> None:
    net = load_goalnet(load_data_text("learning.json"))
    registry = TaskRegistry({name: (lambda ctx: None) for name in TASKS})
    for name, hook in (hooks or {}).items():
        registry.register(name, hook)
    ctx = ExecutionContext(net=net, registry=registry, blackboard=blackboard)
    print(f"\n=== {title} ===")
    print(f"start at {ctx.current_state!r}")
    while not ctx.at_terminal():
        step(ctx)
        record = ctx.trace[-1]
        arrow = f"{record.state_from} --[{record.transition}:{record.task}]--> {ctx.current_state}"
        print(f"  step {record.step}: {arrow} ({record.outcome})")
    print(f"finished after {len(ctx.trace)} steps")


def main() -> None:
    narrate(
        "student agrees and teaches error-free knowledge",
        {"response": "agree", "map_submitted": True, "map_errors": False},
    )
    narrate("student rejects the request", {"response": "reject"})

    def student_fixes_map(ctx):
        # after the alert, the resubmitted map is clean
        ctx.blackboard["map_errors"] = False

    narrate(
        "first submission has an error, the corrected one is saved",
        {"response": "agree", "map_submitted": True, "map_errors": True},
        hooks={"alert_user": student_fixes_map},
    )


if __name__ == "__main__":
    main()
