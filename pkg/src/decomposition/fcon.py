"""The FConSOMAS procedure: collect every (coalition, goal) pair with full contribution at a state.

Candidates are the parent-closed coalitions of the dependence graph of the
star computation. Each one is checked in order of size:

1. it takes no input from outside itself in its own dependence graph;
2. it brings about the goal on its own;
3. no smaller confirmed structurally independent coalition already does.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import groupby
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from checker.contribution import semantically_independent
from core.somas import Coalition, Somas, StateId
from decomposition.graph import (
    CANDIDATE_CAP,
    dependence_graph,
    independent_coalitions,
    star_dependence_graph,
)
from logic.formulas import TemporalGoal

logger = logging.getLogger(__name__)

NOT_STRUCTURAL = "not-structural"
NOT_SEMANTIC = "not-semantic"
NOT_MINIMAL = "not-minimal"


@dataclass(frozen=True)
class Rejection:
    coalition: Coalition
    reason: str
    goal: Optional[TemporalGoal] = None


@dataclass
class ContributionSet:
    entries: List[Tuple[Coalition, TemporalGoal]] = field(default_factory=list)
    rejections: List[Rejection] = field(default_factory=list)

    def coalitions_for(self, goal: TemporalGoal) -> List[Coalition]:
        return [coalition for coalition, g in self.entries if g == goal]


def gets_outside_input(somas: Somas, coalition: Coalition, q: StateId) -> bool:
    """Some member queries a non-member in G(q, rules of the coalition); only edges into the coalition count."""
    graph = dependence_graph(somas, coalition, q)
    return any(b in coalition and a not in coalition for a, b in graph.edges)


class ContributionFinder:
    """Runs the three checks over the candidates, memoizing verdicts per coalition."""

    def __init__(self, somas: Somas, q: StateId, goals: Sequence[TemporalGoal], workers: int = 1):
        self.somas = somas
        self.q = q
        self.goals = list(dict.fromkeys(goals))
        self.workers = max(1, workers)
        self.structural: Dict[Coalition, bool] = {}
        self.semantic: Dict[Tuple[Coalition, TemporalGoal], bool] = {}

    def _evaluate(self, coalition: Coalition) -> Tuple[bool, Dict[TemporalGoal, bool]]:
        if gets_outside_input(self.somas, coalition, self.q):
            return False, {}
        return True, {goal: semantically_independent(self.somas, coalition, self.q, goal) for goal in self.goals}

    def _minimal(self, coalition: Coalition, goal: TemporalGoal) -> bool:
        return not any(
            smaller < coalition and self.semantic.get((smaller, goal), False)
            for smaller, ok in self.structural.items()
            if ok
        )

    def run(self, candidates: Sequence[Coalition]) -> ContributionSet:
        verdicts: Dict[Coalition, List[Tuple[Optional[TemporalGoal], Optional[str]]]] = {}
        by_size = sorted(candidates, key=len)
        executor = ThreadPoolExecutor(max_workers=self.workers) if self.workers > 1 else None
        try:
            for size, tier in groupby(by_size, key=len):
                tier = list(tier)
                if executor is None:
                    results = [self._evaluate(c) for c in tier]
                else:
                    results = list(executor.map(self._evaluate, tier))
                # Barrier: minimality of this tier only reads verdicts of smaller tiers.
                decided = []
                for coalition, (structural, semantic) in zip(tier, results):
                    decided.append((coalition, structural, semantic, self._decide(coalition, structural, semantic)))
                for coalition, structural, semantic, outcome in decided:
                    self.structural[coalition] = structural
                    for goal, holds in semantic.items():
                        self.semantic[(coalition, goal)] = holds
                    verdicts[coalition] = outcome
                logger.debug("tier of size %d: %d candidates", size, len(tier))
        finally:
            if executor is not None:
                executor.shutdown()

        result = ContributionSet()
        for coalition in candidates:
            for goal, reason in verdicts[coalition]:
                if reason is None:
                    result.entries.append((coalition, goal))
                else:
                    result.rejections.append(Rejection(coalition, reason, goal))
        return result

    def _decide(self, coalition, structural, semantic):
        if not self.goals:
            return []
        if not structural:
            return [(None, NOT_STRUCTURAL)]
        outcome = []
        for goal in self.goals:
            if not semantic[goal]:
                outcome.append((goal, NOT_SEMANTIC))
            elif not self._minimal(coalition, goal):
                outcome.append((goal, NOT_MINIMAL))
            else:
                outcome.append((goal, None))
        return outcome


def fcon_somas(
    somas: Somas,
    q: StateId,
    goals: Sequence[TemporalGoal],
    probes: Iterable[Coalition] = (),
    cap: int = CANDIDATE_CAP,
    workers: int = 1,
) -> ContributionSet:
    """F(q): every coalition with full contribution to one of ``goals`` at ``q``.

    ``probes`` are extra coalitions to report on; one that is not parent-closed
    in the star dependence graph is rejected as not structural without checks.
    """
    somas.check_state(q)
    goals = list(dict.fromkeys(goals))
    if not goals:
        return ContributionSet()
    star = star_dependence_graph(somas, q)
    candidates = independent_coalitions(star, cap)
    logger.info("state %s: %d candidate coalitions for %d goals", somas.state_name(q), len(candidates), len(goals))

    result = ContributionFinder(somas, q, goals, workers).run(candidates)

    known = set(candidates)
    for probe in probes:
        probe = frozenset(probe)
        if probe in known or not probe:
            continue
        known.add(probe)
        # Candidates are all parent-closed sets, so any other probe has an outside parent.
        result.rejections.append(Rejection(probe, NOT_STRUCTURAL))
    return result
