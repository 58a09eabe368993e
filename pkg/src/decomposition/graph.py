"""Dependence graphs between agents and their layered decomposition.

An edge (a, b) means agent b queries agent a at some state reached by the
computations of interest. Condensing strongly connected components gives a
DAG; an agent's layer is the length of the longest chain of parent components
above its own component.
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, List, Mapping, Tuple

import networkx as nx

from core.computations import communication_inputs, out_reachable
from core.errors import SizeLimitExceeded
from core.somas import Coalition, Somas, StateId

logger = logging.getLogger(__name__)

CANDIDATE_CAP = 1_000_000

Node = Hashable


@dataclass(frozen=True)
class DependenceGraph:
    nodes: FrozenSet[Node]
    edges: FrozenSet[Tuple[Node, Node]]
    names: Mapping[Node, str]

    def label(self, node: Node) -> str:
        return self.names.get(node, str(node))

    def parents(self, node: Node) -> FrozenSet[Node]:
        """Nodes ``node`` takes input from, itself excluded."""
        return frozenset(a for a, b in self.edges if b == node and a != node)

    def sorted_nodes(self) -> List[Node]:
        return sorted(self.nodes, key=self.label)

    def sorted_edges(self) -> List[Tuple[Node, Node]]:
        return sorted(self.edges, key=lambda edge: (self.label(edge[0]), self.label(edge[1])))

    def to_networkx(self) -> nx.DiGraph:
        G = nx.DiGraph()
        G.add_nodes_from(self.nodes)
        G.add_edges_from(self.edges)
        return G


@dataclass(frozen=True)
class Decomposition:
    graph: DependenceGraph
    layers: Tuple[FrozenSet[Node], ...]
    rho: Mapping[Node, int]

    @property
    def height(self) -> int:
        return len(self.layers) - 1


def dependence_graph(somas: Somas, coalition: Coalition, q: StateId) -> DependenceGraph:
    """G(q, rules of the coalition): every agent's queries over the coalition's reachable states."""
    reached = out_reachable(somas, coalition, q)
    inputs = communication_inputs(somas, reached)
    edges = frozenset((a, b) for b, sources in inputs.items() for a in sources)
    names = dict(enumerate(somas.agents))
    return DependenceGraph(frozenset(somas.cgs.agent_ids()), edges, names)


def star_dependence_graph(somas: Somas, q: StateId) -> DependenceGraph:
    return dependence_graph(somas, somas.all_agents, q)


def _component_name(members: List[str]) -> str:
    return members[0] if len(members) == 1 else "{" + ",".join(members) + "}"


def condense(g: DependenceGraph) -> Tuple[DependenceGraph, Dict[Node, int]]:
    """Collapse strongly connected components; components are numbered by their smallest member name."""
    G = g.to_networkx()
    components = sorted(
        (sorted(component, key=g.label) for component in nx.strongly_connected_components(G)),
        key=lambda members: g.label(members[0]),
    )
    dag = nx.condensation(G, scc=[set(members) for members in components])
    membership = dict(dag.graph["mapping"])
    names = {i: _component_name([g.label(a) for a in members]) for i, members in enumerate(components)}
    return DependenceGraph(frozenset(dag.nodes), frozenset(dag.edges), names), membership


def layers(g: DependenceGraph) -> Decomposition:
    dag, membership = condense(g)
    D = dag.to_networkx()
    level: Dict[int, int] = {}
    for component in nx.topological_sort(D):
        parents = list(D.predecessors(component))
        level[component] = max(level[p] for p in parents) + 1 if parents else 0
    rho = {a: level[membership[a]] for a in g.nodes}
    height = max(rho.values(), default=-1)
    partition = tuple(frozenset(a for a in g.nodes if rho[a] == i) for i in range(height + 1))
    return Decomposition(g, partition, rho)


def independent_coalitions(g: DependenceGraph, cap: int = CANDIDATE_CAP) -> List[FrozenSet[Node]]:
    """Nonempty sets closed under taking parents, lowest top layer first, then smaller, then by name.

    Every set comes before its proper supersets.
    """
    decomposition = layers(g)
    dag, membership = condense(g)
    members: Dict[int, List[Node]] = {}
    for a, component in membership.items():
        members.setdefault(component, []).append(a)
    top_layer = {component: decomposition.rho[group[0]] for component, group in members.items()}
    order = sorted(dag.nodes, key=lambda c: (top_layer[c], dag.label(c)))

    closed: List[FrozenSet[int]] = [frozenset()]
    for component in order:
        parents = dag.parents(component)
        closed.extend([s | {component} for s in closed if parents <= s])
        if len(closed) - 1 > cap:
            raise SizeLimitExceeded(f"more than {cap} independent coalitions")

    coalitions = []
    for components in closed[1:]:
        agents = frozenset(a for c in components for a in members[c])
        key = (max(top_layer[c] for c in components), len(agents), sorted(g.label(a) for a in agents))
        coalitions.append((key, agents))
    coalitions.sort(key=lambda item: item[0])
    logger.debug("%d independent coalitions over %d components", len(coalitions), len(order))
    return [agents for _, agents in coalitions]
