from decomposition.dot import export_dot
from decomposition.fcon import (
    NOT_MINIMAL,
    NOT_SEMANTIC,
    NOT_STRUCTURAL,
    ContributionSet,
    Rejection,
    fcon_somas,
)
from decomposition.graph import (
    Decomposition,
    DependenceGraph,
    condense,
    dependence_graph,
    independent_coalitions,
    layers,
    star_dependence_graph,
)

__all__ = [
    "NOT_MINIMAL",
    "NOT_SEMANTIC",
    "NOT_STRUCTURAL",
    "ContributionSet",
    "Decomposition",
    "DependenceGraph",
    "Rejection",
    "condense",
    "dependence_graph",
    "export_dot",
    "fcon_somas",
    "independent_coalitions",
    "layers",
    "star_dependence_graph",
]
