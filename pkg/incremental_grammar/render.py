"""Graphviz DOT text for parse states."""

from . import core
from .parse_state import DerivationForest, LinkDiagram, ParseState, Tree


def _forest_context(state: DerivationForest) -> dict:
    nodes: list[dict] = []
    edges: list[dict] = []
    leaf_count = 0

    def visit(tree: Tree) -> str:
        nonlocal leaf_count
        if tree.is_leaf:
            leaf_count += 1
            return f"w{leaf_count - 1}"
        node_id = len(nodes)
        nodes.append({"id": node_id, "label": tree.label, "rule": tree.rule})
        for child in tree.children:
            edges.append({"parent": f"g{node_id}", "child": visit(child)})
        return f"g{node_id}"

    for tree in state.trees:
        visit(tree)
    return {"words": list(state.prefix), "nodes": nodes, "edges": edges}


def _links_context(state: LinkDiagram) -> dict:
    residual = set(state.residual())
    wires = []
    offsets = state.group_offsets()
    for word_index, group in enumerate(state.groups):
        for k, wire in enumerate(group):
            wire_id = offsets[word_index] + k
            wires.append({"id": wire_id, "word": word_index, "label": str(wire), "residual": wire_id in residual})
    links = [{"left": left, "right": right} for left, right in state.links]
    return {"words": list(state.prefix), "wires": wires, "links": links}


def render_state(state: ParseState, name: str = "parse") -> str:
    """DOT digraph of a derivation forest (bottom-up tree) or a link diagram (wires joined by cups)."""
    if isinstance(state, DerivationForest):
        return core.render("derivation.dot.j2", {"name": name} | _forest_context(state))
    if isinstance(state, LinkDiagram):
        return core.render("links.dot.j2", {"name": name} | _links_context(state))
    raise TypeError(f"Cannot render {type(state).__name__}")
