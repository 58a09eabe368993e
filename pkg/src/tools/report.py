import json
from typing import Any, Dict, List, Optional, Sequence, TypedDict

from checker.contribution import ContributionVerdict
from core.somas import Somas, StateId
from core.validation import Violation
from decomposition.fcon import ContributionSet
from decomposition.graph import Decomposition, DependenceGraph
from logic.formulas import Formula, render_formula, render_goal


class CheckReport(TypedDict):
    state: str
    formula: str
    holds: bool


class VerdictReport(TypedDict):
    state: str
    coalition: List[str]
    goal: str
    semantic: bool
    structural: bool
    minimal: bool
    full: bool
    witness: Optional[List[str]]


class ContributionReport(TypedDict):
    state: str
    entries: List[Dict[str, Any]]
    rejections: List[Dict[str, Any]]


def check_report(somas: Somas, q: StateId, formula: Formula, holds: bool) -> CheckReport:
    return {"state": somas.state_name(q), "formula": render_formula(formula), "holds": holds}


def verdict_report(somas: Somas, q: StateId, verdict: ContributionVerdict) -> VerdictReport:
    return {
        "state": somas.state_name(q),
        "coalition": list(somas.agent_names(verdict.coalition)),
        "goal": render_goal(verdict.goal),
        "semantic": verdict.semantic,
        "structural": verdict.structural,
        "minimal": verdict.minimal,
        "full": verdict.full,
        "witness": None if verdict.witness is None else list(somas.agent_names(verdict.witness)),
    }


def contribution_report(somas: Somas, q: StateId, found: ContributionSet) -> ContributionReport:
    return {
        "state": somas.state_name(q),
        "entries": [
            {"coalition": list(somas.agent_names(coalition)), "goal": render_goal(goal)}
            for coalition, goal in found.entries
        ],
        "rejections": [
            {
                "coalition": list(somas.agent_names(rejection.coalition)),
                "reason": rejection.reason,
                "goal": None if rejection.goal is None else render_goal(rejection.goal),
            }
            for rejection in found.rejections
        ],
    }


def graph_report(graph: DependenceGraph, decomposition: Optional[Decomposition] = None) -> Dict[str, Any]:
    report: Dict[str, Any] = {
        "nodes": [graph.label(a) for a in graph.sorted_nodes()],
        "edges": [[graph.label(a), graph.label(b)] for a, b in graph.sorted_edges()],
    }
    if decomposition is not None:
        report["layers"] = [sorted(graph.label(a) for a in layer) for layer in decomposition.layers]
    return report


def violations_report(violations: Sequence[Violation]) -> Dict[str, Any]:
    return {
        "valid": not violations,
        "violations": [
            {"kind": v.kind, "agent": v.agent, "state": v.state, "detail": v.detail} for v in violations
        ],
    }


def to_json(report: Any) -> str:
    return json.dumps(report, indent=2)


def show_report(report: Any, title: str) -> None:
    """Print a report between banner lines."""
    print(f"\n{'=' * 10} {title.center(28)} {'=' * 10}")
    print(to_json(report))
    print("=" * 48)
