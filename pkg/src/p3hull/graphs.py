"""Graph families and primitives.

Builders for the cubic families studied here: the generalized Petersen graph
G(n,k), the surgery graph G(n,k)#G(n,k), and the permutation generalization
GGP(n,sigma).  Vertex indexing is canonical throughout: exterior vertex u_i
gets index i, interior vertex v_i gets index n+i, and the second surgery copy
is offset by 2n.  Graphs are immutable after construction and safe to share
across workers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ExceedsCapacity, InvalidParams, InvalidPermutation, ParseError

#: Hard cap on graph size; all desk-scale instances fit well below this.
MAX_GRAPH_VERTICES = 256


class VertexSet:
    """Immutable set of vertex indices backed by a dense bitmask.

    ``size`` is the number of vertices of the ambient graph; ``bits`` holds
    one bit per index.  Binary operations require matching sizes.
    """

    __slots__ = ("size", "bits")

    def __init__(self, size: int, bits: int = 0):
        if size < 0:
            raise ValueError("size must be nonnegative")
        if bits < 0 or bits >> size:
            raise ValueError(f"bits 0x{bits:x} out of range for size {size}")
        self.size = size
        self.bits = bits

    @classmethod
    def from_indices(cls, size: int, indices: Iterable[int]) -> "VertexSet":
        bits = 0
        for v in indices:
            if not 0 <= v < size:
                raise ValueError(f"vertex {v} out of range [0, {size})")
            bits |= 1 << v
        return cls(size, bits)

    @classmethod
    def empty(cls, size: int) -> "VertexSet":
        return cls(size, 0)

    @classmethod
    def full(cls, size: int) -> "VertexSet":
        return cls(size, (1 << size) - 1)

    def indices(self) -> tuple[int, ...]:
        """Member indices in ascending order."""
        return tuple(self)

    def complement(self) -> "VertexSet":
        return VertexSet(self.size, ((1 << self.size) - 1) ^ self.bits)

    def issubset(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def _check(self, other: "VertexSet") -> None:
        if not isinstance(other, VertexSet):
            raise TypeError(f"expected VertexSet, got {type(other).__name__}")
        if self.size != other.size:
            raise ValueError(f"size mismatch: {self.size} != {other.size}")

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.size and self.bits >> v & 1 == 1

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.size, self.bits | other.bits)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.size, self.bits & other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.size, self.bits & ~other.bits)

    def __le__(self, other: "VertexSet") -> bool:
        return self.issubset(other)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, VertexSet)
            and self.size == other.size
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.size, self.bits))

    def __repr__(self) -> str:
        return f"VertexSet({self.size}, {{{', '.join(map(str, self))}}})"


@dataclass(frozen=True)
class FamilyTag:
    """Provenance of a graph: which family and parameters built it."""

    kind: str  # "gp" | "surgery" | "ggp" | "custom"
    n: Optional[int] = None
    k: Optional[int] = None
    cycles: Optional[tuple[tuple[int, ...], ...]] = None

    @classmethod
    def generalized_petersen(cls, n: int, k: int) -> "FamilyTag":
        return cls("gp", n=n, k=k)

    @classmethod
    def surgery(cls, n: int, k: int) -> "FamilyTag":
        return cls("surgery", n=n, k=k)

    @classmethod
    def ggp(cls, n: int, cycles: tuple[tuple[int, ...], ...]) -> "FamilyTag":
        return cls("ggp", n=n, cycles=cycles)

    @classmethod
    def custom(cls) -> "FamilyTag":
        return cls("custom")


@dataclass(frozen=True)
class GPParams:
    """Parameters (n, k) of a generalized Petersen graph, with 1 <= k < n/2."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 3:
            raise InvalidParams(f"n must be at least 3 (got n={self.n})")
        if self.k < 1 or 2 * self.k >= self.n:
            raise InvalidParams(
                f"k must satisfy 1 <= k < n/2 (got n={self.n}, k={self.k})"
            )

    @property
    def c(self) -> int:
        """gcd(n, k): the number of interior cycles."""
        return gcd(self.n, self.k)

    @property
    def l(self) -> int:
        """n / gcd(n, k): the common length of the interior cycles (always >= 3)."""
        return self.n // self.c


@dataclass(frozen=True)
class Permutation:
    """A fixed-point-free permutation of {0..n-1} whose cycles all have length >= 3.

    ``image[i]`` is sigma(i); ``cycles`` is the disjoint-cycle decomposition,
    each cycle rotated to start at its minimum element and the cycles listed
    by minimum element ascending.  Use :meth:`from_image`, :meth:`from_cycles`
    or :meth:`shift` instead of the raw constructor.
    """

    n: int
    image: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]

    @classmethod
    def from_image(cls, image: Sequence[int]) -> "Permutation":
        n = len(image)
        image = tuple(image)
        if sorted(image) != list(range(n)):
            raise InvalidPermutation(f"image {image} is not a bijection of 0..{n - 1}")
        seen = [False] * n
        cycles = []
        for start in range(n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = image[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = image[j]
            if len(cyc) == 1:
                raise InvalidPermutation(
                    f"fixed point at {start} (would create a self-loop)"
                )
            if len(cyc) == 2:
                raise InvalidPermutation(
                    f"2-cycle {tuple(cyc)}: every cycle must have length >= 3"
                )
            cycles.append(tuple(cyc))
        return cls(n, image, tuple(cycles))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        image = list(range(n))
        covered = [False] * n
        for cyc in cycles:
            cyc = tuple(cyc)
            if len(cyc) < 3:
                raise InvalidPermutation(
                    f"cycle {cyc} has length {len(cyc)}: every cycle must have length >= 3"
                )
            for v in cyc:
                if not 0 <= v < n:
                    raise InvalidPermutation(f"index {v} out of range [0, {n})")
                if covered[v]:
                    raise InvalidPermutation(f"index {v} appears in more than one cycle")
                covered[v] = True
            for pos, v in enumerate(cyc):
                image[v] = cyc[(pos + 1) % len(cyc)]
        missing = [v for v in range(n) if not covered[v]]
        if missing:
            raise InvalidPermutation(
                f"indices {missing} are fixed points (not covered by any cycle)"
            )
        return cls.from_image(image)

    @classmethod
    def shift(cls, n: int, k: int) -> "Permutation":
        """The rotation sigma(i) = i + k mod n (GGP(n, shift) equals G(n, k))."""
        return cls.from_image(tuple((i + k) % n for i in range(n)))

    @cached_property
    def cycle_index(self) -> tuple[int, ...]:
        """For each element, the position of its cycle in ``cycles``."""
        out = [0] * self.n
        for ci, cyc in enumerate(self.cycles):
            for v in cyc:
                out[v] = ci
        return tuple(out)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def render(self) -> str:
        """Cycle notation, e.g. ``(0 1 2)(3 4 5)``."""
        return "".join("(" + " ".join(map(str, cyc)) + ")" for cyc in self.cycles)


_CYCLE_TEXT = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, n: int) -> Permutation:
    """Parse whitespace-insensitive cycle notation like ``(0 1 2)(3 4 5)``.

    Raises ParseError for malformed text and InvalidPermutation for
    semantically invalid cycles (repeats, out-of-range, fixed points,
    cycles shorter than 3).
    """
    if re.fullmatch(r"\s*(?:\([^()]*\)\s*)+", text) is None:
        raise ParseError(f"malformed cycle notation: {text!r}")
    cycles = []
    for group in _CYCLE_TEXT.findall(text):
        tokens = group.replace(",", " ").split()
        if not tokens:
            raise ParseError("empty cycle ()")
        try:
            cycles.append(tuple(int(t) for t in tokens))
        except ValueError:
            raise ParseError(f"non-integer token in cycle ({group})") from None
    return Permutation.from_cycles(n, cycles)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph with adjacency by vertex index.

    Invariants (checked at construction): no self-loops, no duplicate
    neighbors, adjacency lists sorted, and symmetric (j in adjacency[i] iff
    i in adjacency[j]).
    """

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    family_tag: FamilyTag

    def __post_init__(self):
        n = self.vertex_count
        if n > MAX_GRAPH_VERTICES:
            raise ExceedsCapacity(f"{n} vertices exceeds the cap of {MAX_GRAPH_VERTICES}")
        if len(self.adjacency) != n:
            raise ValueError("adjacency length must equal vertex_count")
        if len(self.labels) != n:
            raise ValueError("labels length must equal vertex_count")
        for i, nbrs in enumerate(self.adjacency):
            prev = -1
            for j in nbrs:
                if j == i:
                    raise ValueError(f"self-loop at vertex {i}")
                if not 0 <= j < n:
                    raise ValueError(f"neighbor {j} of {i} out of range")
                if j <= prev:
                    raise ValueError(f"adjacency[{i}] not sorted or has duplicates")
                prev = j
                if i not in self.adjacency[j]:
                    raise ValueError(f"edge ({i}, {j}) is not symmetric")

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        labels: Optional[Sequence[str]] = None,
        family_tag: Optional[FamilyTag] = None,
    ) -> "Graph":
        """Build a graph from an edge list; rejects self-loops and duplicates."""
        if vertex_count > MAX_GRAPH_VERTICES:
            raise ExceedsCapacity(
                f"{vertex_count} vertices exceeds the cap of {MAX_GRAPH_VERTICES}"
            )
        nbrs: list[set[int]] = [set() for _ in range(vertex_count)]
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < vertex_count and 0 <= b < vertex_count):
                raise ValueError(f"edge ({a}, {b}) out of range")
            if b in nbrs[a]:
                raise ValueError(f"duplicate edge ({a}, {b})")
            nbrs[a].add(b)
            nbrs[b].add(a)
        if labels is None:
            labels = tuple(str(i) for i in range(vertex_count))
        return cls(
            vertex_count,
            tuple(tuple(sorted(s)) for s in nbrs),
            tuple(labels),
            family_tag if family_tag is not None else FamilyTag.custom(),
        )

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Per-vertex bitmask of neighbors (kernel input for the infection code)."""
        out = []
        for nbrs in self.adjacency:
            m = 0
            for j in nbrs:
                m |= 1 << j
            out.append(m)
        return tuple(out)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as (i, j) pairs with i < j, sorted."""
        return tuple(
            (i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if i < j
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def full_set(self) -> VertexSet:
        return VertexSet.full(self.vertex_count)


def _gp_edges(n: int, k: int) -> list[tuple[int, int]]:
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))          # exterior u_i u_{i+1}
        edges.append((i, n + i))                # spoke u_i v_i
        edges.append((n + i, n + (i + k) % n))  # interior v_i v_{i+k}
    return edges


def _gp_labels(n: int, suffix: str = "") -> list[str]:
    return [f"u{i}{suffix}" for i in range(n)] + [f"v{i}{suffix}" for i in range(n)]


def build_generalized_petersen(params: GPParams) -> Graph:
    """The generalized Petersen graph G(n, k) on 2n vertices.

    Indexing: u_i -> i and v_i -> n + i.  Edges are u_i u_{i+1}, u_i v_i and
    v_i v_{i+k}, indices mod n.  The result is cubic, simple and connected.
    """
    n, k = params.n, params.k
    return Graph.from_edges(
        2 * n, _gp_edges(n, k), _gp_labels(n), FamilyTag.generalized_petersen(n, k)
    )


def build_surgery(params: GPParams) -> Graph:
    """The surgery graph G(n,k)#G(n,k) on 4n vertices.

    Two disjoint copies of G(n, k) (copy B offset by 2n, labels suffixed
    with "b") with the edges u_0 u_1 and u_0' u_1' replaced by u_0 u_0' and
    u_1 u_1'.
    """
    n, k = params.n, params.k
    off = 2 * n
    removed = {(0, 1), (off, off + 1)}
    edges = []
    for a, b in _gp_edges(n, k):
        if (a, b) not in removed:
            edges.append((a, b))
        edges.append((a + off, b + off))
    edges = [e for e in edges if e not in removed]
    edges.append((0, off))          # u_0 u_0'
    edges.append((1, off + 1))      # u_1 u_1'
    labels = _gp_labels(n) + _gp_labels(n, "b")
    return Graph.from_edges(4 * n, edges, labels, FamilyTag.surgery(n, k))


def build_ggp(perm: Permutation) -> Graph:
    """The GGP graph for sigma on 2n vertices.

    Edges are u_i u_{i+1}, u_i v_i and v_i v_{sigma(i)}; interior edges are
    deduplicated as unordered pairs.  Requires a fixed-point-free sigma whose
    cycles all have length >= 3, which forces the result to be simple and
    cubic.  When sigma(i) = i + k mod n the result is index-identical to
    build_generalized_petersen(n, k).
    """
    n = perm.n
    if n < 3:
        raise InvalidPermutation(f"need n >= 3 exterior vertices (got n={n})")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    interior = {tuple(sorted((n + i, n + perm(i)))) for i in range(n)}
    edges += sorted(interior)
    return Graph.from_edges(2 * n, edges, _gp_labels(n), FamilyTag.ggp(n, perm.cycles))


def induced_subgraph(g: Graph, keep: VertexSet) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced on ``keep``, plus the relabeling map.

    Returns (subgraph, old_index) where old_index[new] is the vertex of ``g``
    that the new index came from; kept vertices are relabeled in ascending
    order of their old index.
    """
    if keep.size != g.vertex_count:
        raise ValueError("keep has wrong universe size for this graph")
    old = keep.indices()
    new_of_old = {v: i for i, v in enumerate(old)}
    edges = [
        (new_of_old[a], new_of_old[b]) for a, b in g.edges if a in keep and b in keep
    ]
    sub = Graph.from_edges(
        len(old), edges, tuple(g.labels[v] for v in old), FamilyTag.custom()
    )
    return sub, old


@dataclass(frozen=True)
class ConnectivityReport:
    connected: bool
    is_cubic: bool
    component_count: int


def connectivity_and_degree_report(g: Graph) -> ConnectivityReport:
    """BFS-based connectivity and cubicity report."""
    n = g.vertex_count
    seen = [False] * n
    components = 0
    for start in range(n):
        if seen[start]:
            continue
        components += 1
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
    is_cubic = n > 0 and all(len(nbrs) == 3 for nbrs in g.adjacency)
    return ConnectivityReport(components <= 1, is_cubic, components)


def _dot_name(tag: FamilyTag) -> str:
    if tag.kind == "gp":
        return f"G_{tag.n}_{tag.k}"
    if tag.kind == "surgery":
        return f"S_{tag.n}_{tag.k}"
    if tag.kind == "ggp":
        return f"GGP_{tag.n}"
    return "G"


def to_dot(g: Graph) -> str:
    """DOT text: undirected edges one per line, endpoints in index order."""
    lines = [f"graph {_dot_name(g.family_tag)} {{"]
    for v in range(g.vertex_count):
        if not g.adjacency[v]:
            lines.append(f"  {g.labels[v]};")
    for i, j in g.edges:
        lines.append(f"  {g.labels[i]} -- {g.labels[j]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: Graph) -> dict:
    """JSON-ready dict: family tag, parameters, vertex count and edge list."""
    tag = g.family_tag
    out: dict = {"family": tag.kind}
    if tag.kind in ("gp", "surgery"):
        out["n"] = tag.n
        out["k"] = tag.k
    elif tag.kind == "ggp":
        out["n"] = tag.n
        out["cycles"] = [list(c) for c in tag.cycles]
    out["vertices"] = g.vertex_count
    out["edges"] = [[i, j] for i, j in g.edges]
    return out


def graph_from_json(data: dict) -> Graph:
    """Rebuild a graph from its JSON dict; family graphs are re-derived and
    checked against the stored edge list."""
    kind = data.get("family", "custom")
    if kind == "gp":
        g = build_generalized_petersen(GPParams(data["n"], data["k"]))
    elif kind == "surgery":
        g = build_surgery(GPParams(data["n"], data["k"]))
    elif kind == "ggp":
        g = build_ggp(Permutation.from_cycles(data["n"], data["cycles"]))
    elif kind == "custom":
        return Graph.from_edges(
            data["vertices"], [tuple(e) for e in data.get("edges", [])]
        )
    else:
        raise ValueError(f"unknown family {kind!r}")
    stored = {tuple(e) for e in data.get("edges", [])}
    if stored and stored != set(g.edges):
        raise ValueError("stored edge list does not match the declared family")
    if data.get("vertices") not in (None, g.vertex_count):
        raise ValueError("stored vertex count does not match the declared family")
    return g
