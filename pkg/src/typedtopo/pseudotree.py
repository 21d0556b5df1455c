"""Type-II pseudotree of per-track components.

Level ``t`` holds the components of track ``t``. A component's children
are the linked components of track ``t+1``. Two neighbouring nodes of a
level may share one child, which must be the last child of the left node
and the first child of the right node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import networkx as nx

from .components import ComponentInterval, adjacency
from .errors import TypeIIViolation
from .grid import GridParams


@dataclass(frozen=True)
class Node:
    component: ComponentInterval
    interval: tuple[int, int]

    @property
    def t(self) -> int:
        return self.component.t

    @property
    def name(self) -> str:
        return f"{self.component.t}:{self.component.lo}-{self.component.hi}"


@dataclass
class PseudoTree:
    levels: dict[int, list[Node]]
    children: dict[ComponentInterval, list[ComponentInterval]] = field(default_factory=dict)

    @property
    def nodes(self) -> list[Node]:
        return [nd for t in sorted(self.levels) for nd in self.levels[t]]

    @property
    def edges(self) -> list[tuple[ComponentInterval, ComponentInterval]]:
        return [(p, c) for p in sorted(self.children) for c in self.children[p]]

    def node(self, c: ComponentInterval) -> Node:
        for nd in self.levels.get(c.t, ()):
            if nd.component == c:
                return nd
        raise KeyError(c)

    def shared_children(self) -> list[tuple[ComponentInterval, ComponentInterval, ComponentInterval]]:
        """``(left, right, child)`` for every child shared by two level neighbours."""
        out = []
        seen = set()
        for t in sorted(self.levels):
            row = [nd.component for nd in self.levels[t]]
            for a, b in _neighbour_pairs(row):
                kids_a = self.children.get(a, ())
                kids_b = self.children.get(b, ())
                if not kids_a or not kids_b or kids_a[-1] != kids_b[0]:
                    continue
                c = kids_a[-1]
                if (c, frozenset((a, b))) not in seen:
                    seen.add((c, frozenset((a, b))))
                    out.append((a, b, c))
        return out


def _neighbour_pairs(row: Sequence[ComponentInterval]):
    # a track is a ring, so the last node also neighbours the first
    if len(row) < 2:
        return []
    return [(row[i], row[(i + 1) % len(row)]) for i in range(len(row))]


def _check_type_ii(levels: Mapping[int, list[ComponentInterval]], children) -> None:
    for t in sorted(levels):
        row = levels[t]
        pos = {c: i for i, c in enumerate(row)}
        parents: dict[ComponentInterval, list[ComponentInterval]] = {}
        for p in row:
            for c in children.get(p, ()):
                parents.setdefault(c, []).append(p)
        neighbours = set(_neighbour_pairs(row))
        # on a two-node ring the pair meets on both sides
        limit = 2 if len(row) == 2 else 1
        per_pair: dict[frozenset, int] = {}
        for c, ps in parents.items():
            if len(ps) == 2:
                key = frozenset(ps)
                per_pair[key] = per_pair.get(key, 0) + 1
                if per_pair[key] > limit:
                    a, b = sorted(ps, key=pos.get)
                    raise TypeIIViolation(f"{a} and {b} share more than one child")
        for c, ps in parents.items():
            if len(ps) == 1:
                continue
            if len(ps) > 2:
                raise TypeIIViolation(f"{c} has {len(ps)} parents on level {t}")
            a, b = sorted(ps, key=pos.get)
            ok = any(
                (left, right) in neighbours
                and children[left][-1] == c
                and children[right][0] == c
                for left, right in ((a, b), (b, a))
            )
            if not ok:
                if (a, b) not in neighbours and (b, a) not in neighbours:
                    raise TypeIIViolation(f"{c} is shared by non-neighbouring nodes {a} and {b}")
                raise TypeIIViolation(
                    f"{c} is shared by {a} and {b} but is not last child of the left "
                    "and first child of the right"
                )


def build_pseudotree(
    params: GridParams,
    comps: Mapping[int, Sequence[ComponentInterval]],
    adj: Mapping[ComponentInterval, Sequence[ComponentInterval]] | None = None,
) -> PseudoTree:
    """Assemble the levelled component graph and check the shared-child rule.

    ``adj`` maps each component to its children in order; it defaults to
    the geometric adjacency of :func:`typedtopo.components.adjacency`.
    Raises :class:`TypeIIViolation` when a child is shared by non-neighbouring
    nodes, sits in the wrong position, or two neighbours share two children.
    """
    if adj is None:
        adj = adjacency(params, comps)
    levels = {t: sorted(comps[t]) for t in sorted(comps) if comps[t]}
    children = {c: list(adj.get(c, ())) for t in levels for c in levels[t]}
    _check_type_ii(levels, children)
    tree_levels = {
        t: [Node(c, c.codes(params)) for c in row] for t, row in levels.items()
    }
    return PseudoTree(tree_levels, children)


def find_cycles(tree: PseudoTree) -> list[list[ComponentInterval]]:
    """Simple cycles of the undirected parent-child graph.

    Each cycle starts at its smallest node and runs toward the smaller of
    that node's two cycle neighbours.
    """
    g = nx.Graph()
    g.add_nodes_from(nd.component for nd in tree.nodes)
    g.add_edges_from(tree.edges)
    out = []
    for cyc in nx.simple_cycles(g):
        if len(cyc) < 3:
            continue
        k = cyc.index(min(cyc))
        cyc = cyc[k:] + cyc[:k]
        if cyc[-1] < cyc[1]:
            cyc = [cyc[0]] + cyc[1:][::-1]
        out.append(cyc)
    return sorted(out)
