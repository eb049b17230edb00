"""Hasse diagrams in Graphviz DOT.

Solid edges are the cover relation of the order, drawn bottom to top.
Dashed edges mark specialization pairs x -> y that the order does not already
give. For an extension, the images of the embedded structure are boxes.
"""

import networkx as nx

from src.models.extension import Extension
from src.models.semilattice import SpecSemilattice


def _quote(label: str) -> str:
    return label.replace("\\", "\\\\").replace('"', '\\"')


def cover_edges(structure: SpecSemilattice) -> list[tuple[int, int]]:
    """Sorted covering pairs (x, y): x < y with nothing strictly between."""
    order = structure.leq_matrix
    graph = nx.DiGraph()
    graph.add_nodes_from(range(structure.size))
    graph.add_edges_from(
        (x, y) for x in range(structure.size) for y in range(structure.size) if x != y and order[x, y]
    )
    return sorted((int(x), int(y)) for x, y in nx.transitive_reduction(graph).edges)


def export_dot(target: SpecSemilattice | Extension, name: str = "structure") -> str:
    """Render a structure or an extension as a DOT digraph.

    Examples:
        >>> from src.services.examples_factory import chain
        >>> print(export_dot(chain(2), "two"), end="")
        digraph "two" {
          rankdir=BT;
          node [shape=ellipse];
          n0 [label="0"];
          n1 [label="1"];
          n0 -> n1;
        }
    """
    if isinstance(target, Extension):
        structure = target.result
        marked = {int(c) for c in target.upsilon}
    else:
        structure = target
        marked = set()

    lines = [f'digraph "{_quote(name)}" {{', "  rankdir=BT;", "  node [shape=ellipse];"]
    for x in range(structure.size):
        shape = ", shape=box" if x in marked else ""
        lines.append(f'  n{x} [label="{_quote(structure.labels[x])}"{shape}];')
    for x, y in cover_edges(structure):
        lines.append(f"  n{x} -> n{y};")

    extra = structure.spec & ~structure.leq_matrix
    for x in range(structure.size):
        for y in range(structure.size):
            if extra[x, y]:
                lines.append(f"  n{x} -> n{y} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
