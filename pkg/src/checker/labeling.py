"""Fixpoint labeling for ATL-Gamma.

A coalition formula <A> psi quantifies over every computation in which the
members of A take their prescribed actions, so each temporal operator is a CTL
"for all paths" operator on the transition relation restricted by A's rules.
Subformulas are labeled children first, as in CTL labeling.
"""
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, Set

from core.computations import restricted_successors
from core.errors import MissingAtomHook, UnboundNameError
from core.somas import Coalition, Somas, StateId
from logic.formulas import (
    And,
    CoalitionGlobally,
    CoalitionNext,
    CoalitionUntil,
    Com,
    Formula,
    Not,
    Prop,
    Top,
    coalition_names,
    render_formula,
    subformulas,
)

logger = logging.getLogger(__name__)


class TransitionGraph:
    """Successors and predecessors of every state under one coalition's rules."""

    def __init__(self, somas: Somas, coalition: Coalition):
        self._successors: Dict[StateId, FrozenSet[StateId]] = {}
        self._predecessors: Dict[StateId, Set[StateId]] = {q: set() for q in somas.cgs.state_ids()}
        for q in somas.cgs.state_ids():
            targets = restricted_successors(somas, coalition, q)
            self._successors[q] = targets
            for target in targets:
                self._predecessors[target].add(q)

    def successors(self, q: StateId) -> FrozenSet[StateId]:
        return self._successors[q]

    def predecessors(self, q: StateId) -> Set[StateId]:
        return self._predecessors[q]

    def states(self) -> Iterable[StateId]:
        return self._successors.keys()


class Labeler:
    """Labels states of one model; graphs and labels are memoized per instance."""

    def __init__(self, somas: Somas):
        self.somas = somas
        self.labels: Dict[Formula, FrozenSet[StateId]] = {}
        self._graphs: Dict[Coalition, TransitionGraph] = {}

    def graph(self, names: FrozenSet[str]) -> TransitionGraph:
        coalition = frozenset(self.somas.agent_id(name) for name in names)
        if coalition not in self._graphs:
            self._graphs[coalition] = TransitionGraph(self.somas, coalition)
        return self._graphs[coalition]

    def bind(self, formula: Formula) -> None:
        unknown = coalition_names(formula) - set(self.somas.agents)
        if unknown:
            raise UnboundNameError(f"coalition names undeclared agents: {', '.join(sorted(unknown))}")

    def satisfies(self, formula: Formula) -> FrozenSet[StateId]:
        self.bind(formula)
        for sub in subformulas(formula):
            if sub not in self.labels:
                self.labels[sub] = self._label(sub)
        return self.labels[formula]

    def _label(self, formula: Formula) -> FrozenSet[StateId]:
        cgs = self.somas.cgs
        everywhere = frozenset(cgs.state_ids())
        if isinstance(formula, Top):
            return everywhere
        if isinstance(formula, Prop):
            return frozenset(q for q in everywhere if formula.name in cgs.label(q))
        if isinstance(formula, Com):
            hook = self.somas.atom_hook
            if hook is None:
                raise MissingAtomHook(f"model {self.somas.name} cannot evaluate {render_formula(formula)}")
            return frozenset(q for q in everywhere if hook(self.somas, q, formula))
        if isinstance(formula, Not):
            return everywhere - self.labels[formula.body]
        if isinstance(formula, And):
            return self.labels[formula.left] & self.labels[formula.right]
        if isinstance(formula, CoalitionNext):
            return self._next(self.graph(formula.coalition), self.labels[formula.body])
        if isinstance(formula, CoalitionGlobally):
            return self._globally(self.graph(formula.coalition), self.labels[formula.body])
        if isinstance(formula, CoalitionUntil):
            return self._until(
                self.graph(formula.coalition), self.labels[formula.left], self.labels[formula.right]
            )
        raise TypeError(f"not a formula: {formula!r}")

    @staticmethod
    def _next(graph: TransitionGraph, target: FrozenSet[StateId]) -> FrozenSet[StateId]:
        return frozenset(q for q in graph.states() if graph.successors(q) <= target)

    @staticmethod
    def _until(graph: TransitionGraph, hold: FrozenSet[StateId], goal: FrozenSet[StateId]) -> FrozenSet[StateId]:
        # Least fixpoint: a hold-state joins once all of its successors have joined.
        pending = {q: len(graph.successors(q)) for q in hold - goal}
        result = set(goal)
        queue = deque(goal)
        rounds = 0
        while queue:
            q = queue.popleft()
            rounds += 1
            for p in graph.predecessors(q):
                if p in pending and p not in result:
                    pending[p] -= 1
                    if pending[p] == 0:
                        result.add(p)
                        queue.append(p)
        logger.debug("until fixpoint: %d states after %d steps", len(result), rounds)
        return frozenset(result)

    @staticmethod
    def _globally(graph: TransitionGraph, hold: FrozenSet[StateId]) -> FrozenSet[StateId]:
        # Greatest fixpoint: drop states with a successor outside the set until stable.
        alive = set(hold)
        queue = deque(q for q in hold if not graph.successors(q) <= hold)
        removed = set(queue)
        while queue:
            q = queue.popleft()
            alive.discard(q)
            for p in graph.predecessors(q):
                if p in alive and p not in removed:
                    removed.add(p)
                    queue.append(p)
        logger.debug("globally fixpoint: %d of %d states kept", len(alive), len(hold))
        return frozenset(alive)


def label_states(somas: Somas, formula: Formula) -> FrozenSet[StateId]:
    """All states of ``somas`` satisfying ``formula``."""
    return Labeler(somas).satisfies(formula)


def check(somas: Somas, q: StateId, formula: Formula) -> bool:
    somas.check_state(q)
    return q in label_states(somas, formula)


def exists_eventually(somas: Somas, q: StateId, formula: Formula) -> bool:
    """Some computation from ``q``, rules or not, reaches ``formula``."""
    return not check(somas, q, CoalitionGlobally(frozenset(), Not(formula)))


def coalition_ids(somas: Somas, names: Iterable[str]) -> Coalition:
    unknown = set(names) - set(somas.agents)
    if unknown:
        raise UnboundNameError(f"undeclared agents: {', '.join(sorted(unknown))}")
    return somas.coalition(names)
