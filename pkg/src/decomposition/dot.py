import re
from typing import List, Union

from decomposition.graph import Decomposition, DependenceGraph

_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _quote(name: str) -> str:
    if _IDENTIFIER.match(name):
        return name
    return '"' + name.replace('"', '\\"') + '"'


def export_dot(subject: Union[DependenceGraph, Decomposition], name: str = "dependence") -> str:
    """DOT text with nodes and edges in name order; a decomposition adds one ranked cluster per layer."""
    graph = subject.graph if isinstance(subject, Decomposition) else subject
    lines: List[str] = [f"digraph {_quote(name)} {{"]

    if isinstance(subject, Decomposition):
        lines.append("  rankdir=BT;")
        for i, layer in enumerate(subject.layers):
            lines.append(f"  subgraph cluster_{i} {{")
            lines.append(f'    label="L{i}";')
            lines.append("    rank=same;")
            for node in sorted(layer, key=graph.label):
                lines.append(f"    {_quote(graph.label(node))};")
            lines.append("  }")
    else:
        for node in graph.sorted_nodes():
            lines.append(f"  {_quote(graph.label(node))};")

    for a, b in graph.sorted_edges():
        lines.append(f"  {_quote(graph.label(a))} -> {_quote(graph.label(b))};")
    lines.append("}")
    return "\n".join(lines) + "\n"
