"""Explicit path enumeration, used to cross-check the fixpoint labeling on small models."""
import logging
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple

from checker.labeling import coalition_ids
from core.computations import prescribed_action
from core.errors import InputError, MissingAtomHook, SizeLimitExceeded
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
    render_formula,
)

logger = logging.getLogger(__name__)

BRUTE_FORCE_LIMIT = 12


def path_follows(somas: Somas, coalition: Coalition, path: Sequence[StateId]) -> bool:
    """True iff every step of ``path`` is realized by a move where all of ``coalition`` obey their rules."""
    for q, nxt in zip(path, path[1:]):
        vectors = [vector for vector, target in somas.cgs.moves(q) if target == nxt]
        if not vectors:
            raise InputError(f"invalid path: no move from {somas.state_name(q)} to {somas.state_name(nxt)}")
        prescribed = {a: prescribed_action(somas, a, q) for a in coalition}
        if not any(all(vector[a] == action for a, action in prescribed.items()) for vector in vectors):
            return False
    return True


def lassos(somas: Somas, coalition: Coalition, q: StateId) -> Iterator[Tuple[List[StateId], int]]:
    """Every simple path from ``q`` closed by one edge back onto itself.

    Yields (states, loop start index). The restricted computations from ``q``
    are covered: any prefix of one is a prefix of some yielded lasso.
    """
    path = [q]
    index = {q: 0}

    def extend() -> Iterator[Tuple[List[StateId], int]]:
        current = path[-1]
        for nxt in sorted(somas.cgs.successors(current)):
            if not path_follows(somas, coalition, [current, nxt]):
                continue
            if nxt in index:
                yield list(path), index[nxt]
                continue
            index[nxt] = len(path)
            path.append(nxt)
            yield from extend()
            path.pop()
            del index[nxt]

    yield from extend()


class BruteForceChecker:
    def __init__(self, somas: Somas, limit: int = BRUTE_FORCE_LIMIT):
        if len(somas.states) > limit:
            raise SizeLimitExceeded(
                f"brute-force checking is limited to {limit} states, model has {len(somas.states)}"
            )
        self.somas = somas
        self.memo: Dict[Tuple[Formula, StateId], bool] = {}

    def holds(self, q: StateId, formula: Formula) -> bool:
        key = (formula, q)
        if key not in self.memo:
            self.memo[key] = self._holds(q, formula)
        return self.memo[key]

    def _holds(self, q: StateId, formula: Formula) -> bool:
        somas = self.somas
        if isinstance(formula, Top):
            return True
        if isinstance(formula, Prop):
            return formula.name in somas.cgs.label(q)
        if isinstance(formula, Com):
            if somas.atom_hook is None:
                raise MissingAtomHook(f"model {somas.name} cannot evaluate {render_formula(formula)}")
            return somas.atom_hook(somas, q, formula)
        if isinstance(formula, Not):
            return not self.holds(q, formula.body)
        if isinstance(formula, And):
            return self.holds(q, formula.left) and self.holds(q, formula.right)
        if isinstance(formula, (CoalitionNext, CoalitionGlobally, CoalitionUntil)):
            coalition = coalition_ids(somas, formula.coalition)
            return all(self._path_holds(states, start, formula) for states, start in lassos(somas, coalition, q))
        raise TypeError(f"not a formula: {formula!r}")

    def _path_holds(self, states: List[StateId], start: int, formula: Formula) -> bool:
        if isinstance(formula, CoalitionNext):
            second = states[1] if len(states) > 1 else states[start]
            return self.holds(second, formula.body)
        if isinstance(formula, CoalitionGlobally):
            return all(self.holds(s, formula.body) for s in states)
        # Positions past the last listed state repeat loop states already seen.
        for s in states:
            if self.holds(s, formula.right):
                return True
            if not self.holds(s, formula.left):
                return False
        return False


def brute_force_check(somas: Somas, q: StateId, formula: Formula, limit: int = BRUTE_FORCE_LIMIT) -> bool:
    somas.check_state(q)
    return BruteForceChecker(somas, limit).holds(q, formula)


def reachable_under(somas: Somas, coalition: Coalition, q: StateId) -> FrozenSet[StateId]:
    """States on the enumerated lassos; equals ``out_reachable`` on every model."""
    seen = set()
    for states, _ in lassos(somas, coalition, q):
        seen.update(states)
    return frozenset(seen)
