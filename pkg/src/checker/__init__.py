from checker.contribution import (
    ContributionVerdict,
    full_contribution,
    semantically_independent,
)
from checker.extended import (
    ExtendedStateF,
    ExtendedStructureE,
    ExtendedStructureF,
    build_se,
    build_sf,
    structurally_independent,
)
from checker.labeling import check, exists_eventually, label_states
from checker.oracle import brute_force_check, path_follows

__all__ = [
    "ContributionVerdict",
    "ExtendedStateF",
    "ExtendedStructureE",
    "ExtendedStructureF",
    "brute_force_check",
    "build_se",
    "build_sf",
    "check",
    "exists_eventually",
    "full_contribution",
    "label_states",
    "path_follows",
    "semantically_independent",
    "structurally_independent",
]
