import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence

from checker.contribution import full_contribution
from checker.labeling import check
from core.errors import InputError, SomasError
from core.validation import validate
from decomposition.dot import export_dot
from decomposition.fcon import fcon_somas
from decomposition.graph import dependence_graph, layers
from logic.parser import parse_formula, parse_goal
from tools.fuzz import Fuzzer
from tools.loader import load_query, load_somas, resolve_state
from tools.report import (
    check_report,
    contribution_report,
    graph_report,
    show_report,
    to_json,
    verdict_report,
    violations_report,
)
from tools.setup import Settings, load_settings, setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_ERROR = 2


def _names(text: Optional[str]) -> List[str]:
    """Agent names from a comma-separated list."""
    if not text:
        return []
    return [name.strip() for name in text.split(",") if name.strip()]


def _braced(names: Sequence[str]) -> str:
    return "{" + ",".join(names) + "}"


def cmd_validate(args, settings: Settings) -> int:
    somas = load_somas(args.model)
    violations = validate(somas)
    if args.json:
        print(to_json(violations_report(violations)))
    elif violations:
        for violation in violations:
            print(violation)
    else:
        print("valid")
    return EXIT_FALSE if violations else EXIT_OK


def cmd_check(args, settings: Settings) -> int:
    somas = load_somas(args.model)
    state, texts = args.state, list(args.formula or [])
    if args.query:
        query = load_query(args.query)
        state = state or query.state
        texts.extend(query.formulas)
    if not texts:
        raise InputError("check needs a formula or a query file with formulas")
    q = resolve_state(somas, state)

    reports = []
    for text in texts:
        formula = parse_formula(text)
        reports.append(check_report(somas, q, formula, check(somas, q, formula)))
    if args.json:
        print(to_json(reports[0] if len(reports) == 1 else reports))
    elif len(reports) == 1:
        print("true" if reports[0]["holds"] else "false")
    else:
        for report in reports:
            print(f"{report['formula']}: {'true' if report['holds'] else 'false'}")
    return EXIT_OK if all(report["holds"] for report in reports) else EXIT_FALSE


def cmd_fullcontrib(args, settings: Settings) -> int:
    somas = load_somas(args.model)
    state, goal_texts, probes = args.state, list(args.goal or []), []
    if args.query:
        query = load_query(args.query)
        state = state or query.state
        goal_texts.extend(query.goals)
        probes = [somas.coalition(names) for names in query.coalitions]
    q = resolve_state(somas, state)
    goals = [parse_goal(text) for text in goal_texts]

    if args.coalition is not None:
        coalition = somas.coalition(_names(args.coalition))
        verdicts = [
            full_contribution(somas, coalition, q, goal, settings.full_contribution_limit) for goal in goals
        ]
        reports = [verdict_report(somas, q, verdict) for verdict in verdicts]
        if args.json:
            print(to_json(reports[0] if len(reports) == 1 else reports))
        else:
            for report in reports:
                line = f"{_braced(report['coalition'])} {report['goal']}: {'full' if report['full'] else 'not full'}"
                line += f" (semantic={report['semantic']}, structural={report['structural']}"
                line += f", minimal={report['minimal']})"
                if report["witness"] is not None:
                    line += f" witness {_braced(report['witness'])}"
                print(line)
        return EXIT_OK if all(verdict.full for verdict in verdicts) else EXIT_FALSE

    found = fcon_somas(somas, q, goals, probes=probes, cap=settings.candidate_cap, workers=args.workers)
    report = contribution_report(somas, q, found)
    if args.json:
        print(to_json(report))
    else:
        for entry in report["entries"]:
            print(f"{_braced(entry['coalition'])} {entry['goal']}")
        for rejection in report["rejections"]:
            goal = f" {rejection['goal']}" if rejection["goal"] else ""
            print(f"rejected {_braced(rejection['coalition'])}{goal}: {rejection['reason']}")
    logger.info("F(%s): %d entries, %d rejections", report["state"], len(found.entries), len(found.rejections))
    return EXIT_OK


def cmd_graph(args, settings: Settings) -> int:
    somas = load_somas(args.model)
    q = resolve_state(somas, args.state)
    coalition = somas.all_agents if args.coalition is None else somas.coalition(_names(args.coalition))
    graph = dependence_graph(somas, coalition, q)
    decomposition = layers(graph) if args.layers else None
    if args.json:
        print(to_json(graph_report(graph, decomposition)))
    else:
        print(export_dot(decomposition or graph), end="")
    return EXIT_OK


def cmd_fuzz(args, settings: Settings) -> int:
    fuzzer = Fuzzer(
        seed=args.seed,
        count=args.count,
        formulas=args.formulas,
        out_dir=args.out,
        brute_force_limit=settings.brute_force_limit,
        progress=not args.json,
    )
    summary = fuzzer.run()
    report = {
        "seed": args.seed,
        "models": summary.models,
        "queries": summary.queries,
        "invalid_models": summary.invalid_models,
        "mismatches": [vars(m) for m in summary.mismatches],
    }
    if args.json:
        print(to_json(report))
    else:
        show_report(report, "Fuzz summary")
    return EXIT_OK if summary.ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="somas", description="Verify self-organizing multi-agent systems")
    commands = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print the result as JSON")

    model = argparse.ArgumentParser(add_help=False, parents=[common])
    model.add_argument("--model", required=True, help="Model file (explicit model, scenario or community config)")
    model.add_argument("--state", help="State name (default: the query file's state, else the first state)")

    validate_cmd = commands.add_parser("validate", parents=[model], help="Check the model invariants")
    validate_cmd.set_defaults(run=cmd_validate)

    check_cmd = commands.add_parser("check", parents=[model], help="Check ATL-Gamma formulas at a state")
    check_cmd.add_argument("formula", nargs="*", help='Formula, e.g. "<a1,a2> F passed"')
    check_cmd.add_argument("--query", help="Query file with a state and formulas")
    check_cmd.set_defaults(run=cmd_check)

    contrib_cmd = commands.add_parser("fullcontrib", parents=[model], help="Find coalitions with full contribution")
    contrib_cmd.add_argument("--goal", action="append", help='Temporal goal, e.g. "F passed" (repeatable)')
    contrib_cmd.add_argument("--coalition", help="Comma-separated agents; check this coalition only")
    contrib_cmd.add_argument("--query", help="Query file with a state, goals and probe coalitions")
    contrib_cmd.add_argument("--workers", type=int, default=1, help="Threads for candidate checks (default: 1)")
    contrib_cmd.set_defaults(run=cmd_fullcontrib)

    graph_cmd = commands.add_parser("graph", parents=[model], help="Print the dependence graph as DOT")
    graph_cmd.add_argument("--coalition", help="Comma-separated agents whose rules restrict the computations")
    graph_cmd.add_argument("--layers", action="store_true", help="Group nodes into ranked layers")
    graph_cmd.set_defaults(run=cmd_graph)

    fuzz_cmd = commands.add_parser("fuzz", parents=[common], help="Compare the checker with path enumeration")
    fuzz_cmd.add_argument("--seed", type=int, default=0, help="Seed of the random model stream (default: 0)")
    fuzz_cmd.add_argument("--count", type=int, default=100, help="Number of models (default: 100)")
    fuzz_cmd.add_argument("--formulas", type=int, default=20, help="Formulas per model (default: 20)")
    fuzz_cmd.add_argument("--out", help="Directory for disagreeing models")
    fuzz_cmd.set_defaults(run=cmd_fuzz)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = load_settings()
        setup_logging(settings)
        return args.run(args, settings)
    except (SomasError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
