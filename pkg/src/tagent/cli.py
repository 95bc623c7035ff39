"""Command-line front end: scenario runs, FCM simulation, validation, serving.

Exit codes: 0 ok, 2 validation failure, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from tagent.authoring import load_catalog
from tagent.errors import ParseError, TagentError, ValidationError
from tagent.fcm import load_fcm_scenario, simulate, trajectory_csv
from tagent.goalnet import load_goalnet
from tagent.runtime import (
    ScenarioScript,
    build_vs_agent,
    run_scenario,
    write_trace,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        script = ScenarioScript.from_json(Path(args.scenario).read_text())
    except (OSError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.seed is not None:
        script.seed = args.seed
    try:
        trace = run_scenario(script, build_vs_agent(), max_ticks=args.max_ticks)
    except TagentError as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    if args.trace:
        write_trace(trace, args.trace)
    emotions = [e for record in trace for e in record.emotions]
    print(
        f"scenario {script.scenario_id}: {len(trace)} trace records, "
        f"{len(emotions)} emotion emissions"
    )
    for emission in emotions:
        print(
            f"  t={emission['t']:g} {emission['emotion']} "
            f"intensity={emission['intensity']:.3f} cause={emission['cause']}"
        )
    return EXIT_OK


def _cmd_simulate_fcm(args: argparse.Namespace) -> int:
    try:
        model, init, policy = load_fcm_scenario(Path(args.model).read_text())
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        trajectory, outcome = simulate(model, init, policy)
    except TagentError as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    csv_text = trajectory_csv(model, trajectory, outcome)
    if args.csv:
        Path(args.csv).write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    print(
        f"model {args.model}: {len(trajectory) - 1} iterations, outcome {outcome.value}",
        file=sys.stderr,
    )
    return EXIT_OK


def _detect_and_validate(path: Path) -> str:
    text = path.read_text()
    doc = json.loads(text)
    if "net" in doc:
        load_goalnet(text)
        return "goal net"
    if "catalog" in doc:
        load_catalog(text)
        return "catalog"
    if "events" in doc or "scenario" in doc:
        ScenarioScript.from_json(text)
        return "scenario"
    if "concepts" in doc and "weights" in doc:
        load_fcm_scenario(text)
        return "fcm model"
    raise ValidationError("unrecognized document type")


def _cmd_validate(args: argparse.Namespace) -> int:
    path = Path(args.file)
    try:
        kind = _detect_and_validate(path)
    except (OSError, json.JSONDecodeError, TagentError, ValueError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print(f"{path}: valid {kind}")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from tagent.service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tagent", description="teachable agent engine"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scripted scenario")
    run_p.add_argument("--scenario", required=True, help="scenario JSON file")
    run_p.add_argument("--trace", help="write the NDJSON trace here")
    run_p.add_argument("--seed", type=int, default=None, help="override the script seed")
    run_p.add_argument("--max-ticks", type=int, default=600)
    run_p.set_defaults(func=_cmd_run)

    fcm_p = sub.add_parser("simulate-fcm", help="simulate an FCM scenario file")
    fcm_p.add_argument("--model", required=True, help="FCM scenario JSON file")
    fcm_p.add_argument("--csv", help="write the trajectory CSV here")
    fcm_p.set_defaults(func=_cmd_simulate_fcm)

    val_p = sub.add_parser("validate", help="validate a goal net, scenario, or catalog")
    val_p.add_argument("file", help="document to validate")
    val_p.set_defaults(func=_cmd_validate)

    serve_p = sub.add_parser("serve", help="start the session service")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
