"""Author a catalog, compile it, and run student-selected paths.

Shows the shipped transport-in-plants catalog compiling into a goal net,
then assembles two different student paths and executes them with stub
tasks, printing the visited goal order.

Run:  python3 demos/05_learning_paths.py
"""

from tagent.authoring import assemble_path, compile_catalog, compile_path, load_catalog
from tagent.errors import PrerequisiteViolation
from tagent.goalnet import TaskRegistry, run_to_completion
from tagent.runtime import load_data_text


def stub_registry(catalog) -> TaskRegistry:
    registry = TaskRegistry()
    for goal in catalog.goals.values():
        for task in goal.task_list:
            registry.register(task, lambda ctx: None)
    return registry


def run_path(catalog, registry, selections) -> None:
    print(f"\nselected path: {selections}")
    try:
        path = assemble_path(catalog, selections)
    except PrerequisiteViolation as exc:
        print(f"  rejected: {exc}")
        return
    net = compile_path(catalog, path)
    trace = run_to_completion(net, registry, {"max_steps": 200})
    visited = [
        r.state_from for r in trace if r.state_from in catalog.goals and r.outcome == "success"
    ]
    print(f"  executed goal order: {visited}")


def main() -> None:
    catalog = load_catalog(
        load_data_text("vs_catalog.json"), point_catalog={1, 2, 3, 4, 5, 6, 7}
    )
    print(f"catalog {catalog.catalog_id!r}: {len(catalog.goals)} goals in "
          f"{len(catalog.topics)} topics")
    for topic in catalog.topics:
        goals = catalog.goals_for_topic(topic)
        print(f"  {topic}: " + " -> ".join(f"{g.id}(d{g.difficulty})" for g in goals))

    net = compile_catalog(catalog)
    print(f"\ncompiled net {net.id!r}: {len(net.states)} top-level states, "
          f"{len(net.subnets)} topic sub-nets")

    registry = stub_registry(catalog)
    run_path(catalog, registry, ["osmosis_l1", "osmosis_l2", "osmosis_l3"])
    run_path(catalog, registry, ["xylem_l1", "osmosis_l1", "xylem_l2", "osmosis_l2"])
    run_path(catalog, registry, ["osmosis_l3"])  # violates the level order


if __name__ == "__main__":
    main()
