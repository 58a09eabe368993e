import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional

from checker.extended import structurally_independent
from checker.labeling import check
from core.computations import communication_inputs, star_computation
from core.errors import SizeLimitExceeded
from core.somas import Coalition, Somas, StateId
from logic.formulas import TemporalGoal

logger = logging.getLogger(__name__)

FULL_CONTRIBUTION_LIMIT = 20


@dataclass(frozen=True)
class ContributionVerdict:
    coalition: Coalition
    goal: TemporalGoal
    semantic: bool
    structural: bool
    minimal: bool
    witness: Optional[Coalition] = None

    @property
    def full(self) -> bool:
        return self.semantic and self.structural and self.minimal


def semantically_independent(somas: Somas, coalition: Coalition, q: StateId, goal: TemporalGoal) -> bool:
    """The coalition brings about ``goal`` from ``q`` whatever the other agents do."""
    return check(somas, q, goal.bind(somas.agent_names(coalition)))


def proper_subsets(somas: Somas, coalition: Coalition) -> Iterator[Coalition]:
    """Nonempty proper subsets, smallest first, then in name order."""
    members = sorted(coalition, key=lambda a: somas.agents[a])
    for size in range(1, len(members)):
        for subset in combinations(members, size):
            yield frozenset(subset)


def closed_under(inputs, coalition: Iterable[int]) -> bool:
    """True iff no member takes input from outside ``coalition``."""
    members = frozenset(coalition)
    return all(inputs[b] <= members for b in members)


def full_contribution(
    somas: Somas,
    coalition: Coalition,
    q: StateId,
    goal: TemporalGoal,
    limit: int = FULL_CONTRIBUTION_LIMIT,
) -> ContributionVerdict:
    """Semantic and structural independence of the coalition, plus minimality among its subsets."""
    members = frozenset(coalition)
    if len(members) > limit:
        raise SizeLimitExceeded(f"full contribution is limited to coalitions of {limit} agents, got {len(members)}")
    semantic = semantically_independent(somas, members, q, goal)
    structural = structurally_independent(somas, members, q)

    # A subset that is structurally independent from q never queries outside
    # itself along the star computation, so closure there is a necessary test.
    star_inputs = communication_inputs(somas, star_computation(somas, q).states)
    witness = None
    checked = 0
    for subset in proper_subsets(somas, members):
        if not closed_under(star_inputs, subset):
            continue
        checked += 1
        if semantically_independent(somas, subset, q, goal) and structurally_independent(somas, subset, q):
            witness = subset
            break
    logger.debug(
        "full contribution of %s: semantic=%s structural=%s, %d subsets checked",
        somas.agent_names(members), semantic, structural, checked,
    )
    return ContributionVerdict(members, goal, semantic, structural, witness is None, witness)
