"""Acyclicity testing and forest structure of complements of removed sets.

A set S is decycling when the subgraph induced on V - S is a forest.  The
forest profile records the data the component and diameter arguments need:
tree count, per-tree diameters (measured in edges) and the number of edges
with both endpoints inside S.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import NotAForest
from .graphs import Graph, VertexSet
from .infection import _check_set


@dataclass(frozen=True)
class ForestProfile:
    """Structure of the forest induced on the complement of a removed set.

    ``component_count`` equals vertices minus edges of the complement;
    isolated vertices count as trees of diameter 0 and ``max_diameter`` is 0
    for an empty complement.
    """

    is_forest: bool
    component_count: int
    tree_diameters: tuple[int, ...]
    max_diameter: int
    removed_adjacent_pairs: int


def _complement_acyclic(
    edges: tuple[tuple[int, int], ...], n: int, removed_bits: int
) -> bool:
    """Union-find cycle check over the edges avoiding ``removed_bits``."""
    parent = list(range(n))
    for a, b in edges:
        if removed_bits >> a & 1 or removed_bits >> b & 1:
            continue
        ra = a
        while parent[ra] != ra:
            parent[ra] = parent[parent[ra]]
            ra = parent[ra]
        rb = b
        while parent[rb] != rb:
            parent[rb] = parent[parent[rb]]
            rb = parent[rb]
        if ra == rb:
            return False
        parent[rb] = ra
    return True


def is_decycling_set(g: Graph, s: VertexSet) -> bool:
    """True iff the subgraph induced on the complement of s is acyclic."""
    _check_set(g, s)
    return _complement_acyclic(g.edges, g.vertex_count, s.bits)


def _bfs_farthest(
    adj: tuple[tuple[int, ...], ...], removed_bits: int, start: int
) -> tuple[int, int, list[int]]:
    """BFS within the complement; returns (farthest vertex, distance, visited)."""
    dist = {start: 0}
    order = [start]
    queue = deque([start])
    far, far_d = start, 0
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if removed_bits >> w & 1 or w in dist:
                continue
            d = dist[v] + 1
            dist[w] = d
            order.append(w)
            queue.append(w)
            if d > far_d:
                far, far_d = w, d
    return far, far_d, order


def forest_profile(g: Graph, s: VertexSet) -> ForestProfile:
    """Component count, per-tree diameters and adjacent pairs inside s.

    Requires s to be a decycling set; raises NotAForest otherwise.  Tree
    diameters are found by double BFS (farthest vertex from an arbitrary
    root, then farthest from that) and listed in order of each tree's
    smallest vertex index.
    """
    _check_set(g, s)
    n = g.vertex_count
    bits = s.bits
    if not _complement_acyclic(g.edges, n, bits):
        raise NotAForest("complement contains a cycle")
    adj = g.adjacency
    seen = 0
    diameters = []
    for v in range(n):
        if bits >> v & 1 or seen >> v & 1:
            continue
        far, _, order = _bfs_farthest(adj, bits, v)
        for w in order:
            seen |= 1 << w
        _, diameter, _ = _bfs_farthest(adj, bits, far)
        diameters.append(diameter)
    pairs = sum(1 for a, b in g.edges if bits >> a & 1 and bits >> b & 1)
    return ForestProfile(
        is_forest=True,
        component_count=len(diameters),
        tree_diameters=tuple(diameters),
        max_diameter=max(diameters, default=0),
        removed_adjacent_pairs=pairs,
    )


def diameter_to_time(d: int) -> int:
    """Infecting time of a hull set of a cubic graph whose complement forest
    has maximum tree diameter d: ceil((d + 1) / 2)."""
    if d < 0:
        raise ValueError(f"diameter must be nonnegative (got {d})")
    return (d + 2) // 2


def profile_to_json(profile: ForestProfile) -> dict:
    return {
        "components": profile.component_count,
        "diameters": list(profile.tree_diameters),
        "max_diameter": profile.max_diameter,
        "adjacent_pairs_in_S": profile.removed_adjacent_pairs,
    }
