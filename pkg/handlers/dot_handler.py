# ===============================================================
#  File: dot_handler.py
#  Description: Graphviz DOT text for decompositions. The graft
#               is drawn with factor-components as clusters and
#               KL classes as fill groups; the DM poset is drawn
#               as a Hasse digraph.
#
#  Author: ac.craft8
#  Created: 2025-06-24
#  License: MIT
# ===============================================================

# ================================
#  Module and Library Imports
# ================================
from core.graft import Graft

# ================================
#  Configuration
# ================================
PALETTE = "set312"
PALETTE_SIZE = 12


# ================================
#  Function Definitions
# ================================

def _quote(text):
    return '"' + str(text).replace('\\', '\\\\').replace('"', '\\"') + '"'


def class_label(G: Graft, vertices):
    """Render a vertex set as {a,b} in vertex order"""
    return "{" + ",".join(str(G.graph.label(v)) for v in sorted(vertices)) + "}"


def graft_dot(G: Graft, components, partition, allowed):
    """Graft drawing: one cluster per factor-component, dashed edges are not allowed"""
    graph = G.graph
    lines = ["graph graft {", "  node [style=filled];"]
    for component in components:
        lines.append(f"  subgraph cluster_{component.id} {{")
        lines.append(f"    label={_quote(f'C{component.id}')};")
        for v in sorted(component.vertices):
            color = partition.class_of[v] % PALETTE_SIZE + 1
            shape = "doublecircle" if v in G.terminals else "circle"
            lines.append(
                f"    {_quote(graph.label(v))} [shape={shape}, fillcolor=\"/{PALETTE}/{color}\"];"
            )
        lines.append("  }")
    for e, (u, v) in enumerate(graph.edges):
        style = "solid" if e in allowed else "dashed"
        lines.append(f"  {_quote(graph.label(u))} -- {_quote(graph.label(v))} "
                     f"[style={style}, label=\"e{e}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_dot(G: Graft, poset, attribute_map=None):
    """Hasse digraph of the DM poset, lower component pointing at upper.

    Cover edges leaving the queried base component carry its attribute.
    """
    lines = ["digraph poset {", "  rankdir=BT;"]
    for component in poset.components:
        lines.append(f"  C{component.id} [label={_quote(f'C{component.id} ' + class_label(G, component.vertices))}];")
    for lower, upper in poset.hasse:
        attribute = ""
        if attribute_map is not None and lower == attribute_map.base and upper in attribute_map.labels:
            members = attribute_map.classes[attribute_map.labels[upper]]
            attribute = f" [label={_quote(class_label(G, members))}]"
        lines.append(f"  C{lower} -> C{upper}{attribute};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_export(G: Graft, components, partition, allowed, poset=None, attribute_map=None):
    """The graft drawing, followed by the Hasse digraph when a poset is given"""
    text = graft_dot(G, components, partition, allowed)
    if poset is not None:
        text += hasse_dot(G, poset, attribute_map)
    return text
