"""P3-interval operator, hull closure, infecting-set test and infecting time.

One infection step adds every vertex with at least two infected neighbors;
steps are synchronous (each step is computed from the previous set as a
whole).  Two kernels share the incremental-counter scheme (O(E) work per
closure): `_closure_bits` returns only the fixed point and is the hot path
for the search module, `_closure_rounds` additionally records the vertices
newly infected at each step.  Both are pure functions of the adjacency and
must agree on the fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotInfecting
from .graphs import Graph, VertexSet


@dataclass(frozen=True)
class InfectionTrace:
    """The chain S = I^0[S] through the fixed point of the interval operator.

    ``steps[p]`` is I^p[S]; ``newly_infected[p-1]`` lists the vertices first
    infected at step p (ascending).  ``fixed_point`` equals ``steps[-1]`` and
    ``time_to_fixed_point`` is the last index; cardinality is strictly
    increasing until then.
    """

    steps: tuple[VertexSet, ...]
    newly_infected: tuple[tuple[int, ...], ...]
    fixed_point: VertexSet
    time_to_fixed_point: int


def _seed_list(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def _closure_bits(adj: tuple[tuple[int, ...], ...], n: int, bits: int) -> int:
    """Fixed point of the interval operator, as a bitmask (no trace)."""
    counts = [0] * n
    stack = _seed_list(bits)
    infected = bits
    while stack:
        v = stack.pop()
        for w in adj[v]:
            c = counts[w] + 1
            counts[w] = c
            if c == 2 and not infected >> w & 1:
                infected |= 1 << w
                stack.append(w)
    return infected


def _closure_rounds(
    adj: tuple[tuple[int, ...], ...], n: int, bits: int
) -> tuple[int, list[list[int]]]:
    """Fixed point plus the per-step lists of newly infected vertices.

    Counter increments in a round come only from the previous round's
    frontier, so the update is synchronous even though newly infected
    vertices are flagged as soon as their counter reaches two.
    """
    counts = [0] * n
    frontier = _seed_list(bits)
    infected = bits
    rounds: list[list[int]] = []
    while frontier:
        nxt: list[int] = []
        for v in frontier:
            for w in adj[v]:
                c = counts[w] + 1
                counts[w] = c
                if c == 2 and not infected >> w & 1:
                    infected |= 1 << w
                    nxt.append(w)
        if not nxt:
            break
        nxt.sort()
        rounds.append(nxt)
        frontier = nxt
    return infected, rounds


def _check_set(g: Graph, s: VertexSet) -> None:
    if s.size != g.vertex_count:
        raise ValueError(
            f"vertex set over {s.size} vertices does not fit a graph on {g.vertex_count}"
        )


def p3_interval(g: Graph, s: VertexSet) -> VertexSet:
    """One synchronous step: s plus all vertices with >= 2 neighbors in s."""
    _check_set(g, s)
    bits = s.bits
    out = bits
    for v, mask in enumerate(g.neighbor_masks):
        if not bits >> v & 1 and (mask & bits).bit_count() >= 2:
            out |= 1 << v
    return VertexSet(g.vertex_count, out)


def hull_closure(g: Graph, s: VertexSet) -> InfectionTrace:
    """Iterate the interval operator to its fixed point, recording each step."""
    _check_set(g, s)
    n = g.vertex_count
    _, rounds = _closure_rounds(g.adjacency, n, s.bits)
    steps = [s]
    bits = s.bits
    newly = []
    for new_vertices in rounds:
        for w in new_vertices:
            bits |= 1 << w
        steps.append(VertexSet(n, bits))
        newly.append(tuple(new_vertices))
    return InfectionTrace(
        steps=tuple(steps),
        newly_infected=tuple(newly),
        fixed_point=steps[-1],
        time_to_fixed_point=len(steps) - 1,
    )


def is_hull_set(g: Graph, s: VertexSet) -> bool:
    """True iff the hull of s is the whole vertex set."""
    _check_set(g, s)
    n = g.vertex_count
    return _closure_bits(g.adjacency, n, s.bits) == (1 << n) - 1


def infecting_time(g: Graph, s: VertexSet) -> int:
    """Smallest p with I^p[S] = V; raises NotInfecting if the hull is proper."""
    _check_set(g, s)
    n = g.vertex_count
    infected, rounds = _closure_rounds(g.adjacency, n, s.bits)
    if infected != (1 << n) - 1:
        raise NotInfecting(f"hull has {infected.bit_count()} of {n} vertices")
    return len(rounds)


def trace_to_json(trace: InfectionTrace) -> dict:
    """JSON-ready dict for a trace (see the documented wire format)."""
    full = trace.fixed_point.size and trace.fixed_point == VertexSet.full(
        trace.fixed_point.size
    )
    infecting = bool(full) or trace.fixed_point.size == 0
    return {
        "initial": list(trace.steps[0]),
        "steps": [
            {"t": t + 1, "new": list(new)} for t, new in enumerate(trace.newly_infected)
        ],
        "infecting": infecting,
        "time": trace.time_to_fixed_point if infecting else None,
    }
