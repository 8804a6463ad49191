"""Exact computation of hull and decycling numbers by subset enumeration.

Enumeration is cardinality-ascending, each level scanned in lexicographic
order of the sorted index tuples, so the reported witness is always the
lexicographically least feasible set.  A level that contains no feasible set
is certified by a full sweep; by monotonicity (supersets of feasible sets
are feasible) refuting cardinality m refutes everything below it, so the
reported optimum never depends on the lower-bound hint.  Optional
parallelism splits each level into contiguous chunks whose finds are merged
by lexicographic minimum; results are deterministic regardless of schedule.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, islice
from math import comb
from time import perf_counter
from typing import Iterator, Optional

from .decycling import _complement_acyclic, forest_profile
from .errors import ExceedsCapacity, InvalidParams
from .graphs import (
    GPParams,
    Graph,
    VertexSet,
    build_generalized_petersen,
    connectivity_and_degree_report,
)
from .infection import _closure_bits

DEFAULT_SEARCH_CAPACITY = 32

#: Below this many combinations a level is scanned serially even when a pool
#: is available; process dispatch would cost more than the scan.
_PARALLEL_MIN_LEVEL = 4096


def search_capacity() -> int:
    """Vertex cap for exhaustive search; P3HULL_MAX_VERTICES overrides it."""
    raw = os.environ.get("P3HULL_MAX_VERTICES")
    if raw is None:
        return DEFAULT_SEARCH_CAPACITY
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"P3HULL_MAX_VERTICES must be an integer (got {raw!r})") from None


@dataclass
class SearchResult:
    """Certified optimum with its lexicographically least witness.

    ``sets_examined`` counts every feasibility evaluation consumed by the
    search; ``examined_by_level`` breaks the count down by cardinality (a
    fully refuted level m shows exactly C(|V|, m) there).
    """

    optimum: int
    witness: VertexSet
    sets_examined: int
    wall_time: float
    examined_by_level: dict[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class DiameterSpectrum:
    """Distinct max tree diameters over all minimum hull sets of G(n, 1)."""

    n: int
    diameters: tuple[int, ...]
    set_count: int


def _scan_range(
    kind: str,
    adj: tuple[tuple[int, ...], ...],
    edges: tuple[tuple[int, int], ...],
    n: int,
    m: int,
    start: int,
    stop: int,
) -> tuple[Optional[tuple[int, ...]], int]:
    """Scan combination ranks [start, stop) at cardinality m.

    Returns (first feasible combination or None, number examined).  Stops at
    the first find: within a chunk the first feasible set in scan order is
    its lexicographic minimum.
    """
    full = (1 << n) - 1
    pow2 = [1 << v for v in range(n)]
    it: Iterator[tuple[int, ...]] = combinations(range(n), m)
    if start or stop < comb(n, m):
        it = islice(it, start, stop)
    examined = 0
    if kind == "hull":
        closure = _closure_bits
        for combo in it:
            examined += 1
            bits = sum(map(pow2.__getitem__, combo))
            if closure(adj, n, bits) == full:
                return combo, examined
    elif kind == "decycling":
        acyclic = _complement_acyclic
        for combo in it:
            examined += 1
            bits = sum(map(pow2.__getitem__, combo))
            if acyclic(edges, n, bits):
                return combo, examined
    else:
        raise ValueError(f"unknown predicate kind {kind!r}")
    return None, examined


def _scan_task(args) -> tuple[Optional[tuple[int, ...]], int]:
    return _scan_range(*args)


def _run_level(
    kind: str,
    g: Graph,
    m: int,
    pool: Optional[ProcessPoolExecutor],
    parallelism: int,
) -> tuple[Optional[tuple[int, ...]], int]:
    """Scan one cardinality level, optionally split over a process pool.

    Chunks are collected in submission (= lexicographic) order; once an
    earlier chunk reports a find, later chunks are cancelled and contribute
    nothing to the examined count, which keeps the totals deterministic.
    """
    n = g.vertex_count
    total = comb(n, m)
    if pool is None or total < _PARALLEL_MIN_LEVEL:
        return _scan_range(kind, g.adjacency, g.edges, n, m, 0, total)
    chunk_count = parallelism * 2
    step = -(-total // chunk_count)
    bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    futures = [
        pool.submit(_scan_task, (kind, g.adjacency, g.edges, n, m, lo, hi))
        for lo, hi in bounds
    ]
    witness = None
    examined = 0
    for idx, fut in enumerate(futures):
        combo, count = fut.result()
        examined += count
        if combo is not None:
            witness = combo
            for later in futures[idx + 1 :]:
                later.cancel()
            break
    return witness, examined


def _default_hint(g: Graph, floor: int) -> int:
    """Lower-bound hint: ceil((V/2 + 1) / 2) for cubic connected graphs on an
    even number of vertices, otherwise the floor (1 for hull, 0 for decycling)."""
    report = connectivity_and_degree_report(g)
    if report.connected and report.is_cubic and g.vertex_count % 2 == 0:
        return (g.vertex_count // 2 + 2) // 2
    return floor


def _minimize(
    kind: str,
    g: Graph,
    lower_bound_hint: Optional[int],
    floor: int,
    parallelism: int,
    early_exit: bool,
    capacity: Optional[int],
) -> SearchResult:
    t0 = perf_counter()
    n = g.vertex_count
    cap = capacity if capacity is not None else search_capacity()
    if n > cap:
        raise ExceedsCapacity(f"{n} vertices exceeds the search cap of {cap}")
    if n == 0:
        return SearchResult(0, VertexSet(0), 0, perf_counter() - t0, {})
    hint = lower_bound_hint if lower_bound_hint is not None else _default_hint(g, floor)
    start = min(max(floor, hint), n)

    examined_by_level: dict[int, int] = {}
    pool = ProcessPoolExecutor(max_workers=parallelism) if parallelism > 1 else None
    try:
        m = start
        witness = None
        while witness is None:  # the full vertex set is always feasible
            combo, count = _run_level(kind, g, m, pool, parallelism)
            examined_by_level[m] = examined_by_level.get(m, 0) + count
            if combo is None:
                m += 1
            else:
                witness = combo
        optimum = m
        if not early_exit:
            # Levels [start, optimum) were already refuted on the way up; if
            # the first level scanned was feasible, certify downward until a
            # level is refuted (this also repairs an overshooting hint).
            while optimum > floor and optimum - 1 < start:
                below = optimum - 1
                combo, count = _run_level(kind, g, below, pool, parallelism)
                examined_by_level[below] = examined_by_level.get(below, 0) + count
                if combo is None:
                    break
                witness, optimum = combo, below
    finally:
        if pool is not None:
            pool.shutdown(wait=False, cancel_futures=True)

    return SearchResult(
        optimum=optimum,
        witness=VertexSet.from_indices(n, witness),
        sets_examined=sum(examined_by_level.values()),
        wall_time=perf_counter() - t0,
        examined_by_level=examined_by_level,
    )


def min_hull_number(
    g: Graph,
    lower_bound_hint: Optional[int] = None,
    *,
    parallelism: int = 1,
    early_exit: bool = False,
    capacity: Optional[int] = None,
) -> SearchResult:
    """Exact minimum cardinality of a hull (infecting) set.

    The hint only sets the starting cardinality; every reported optimum is
    certified by an exhaustive sweep of the level below it unless
    ``early_exit`` is set (in which case the hint is trusted).
    """
    return _minimize("hull", g, lower_bound_hint, 1, parallelism, early_exit, capacity)


def min_decycling_number(
    g: Graph,
    lower_bound_hint: Optional[int] = None,
    *,
    parallelism: int = 1,
    early_exit: bool = False,
    capacity: Optional[int] = None,
) -> SearchResult:
    """Exact minimum cardinality of a decycling set (0 for forests)."""
    return _minimize(
        "decycling", g, lower_bound_hint, 0, parallelism, early_exit, capacity
    )


def _dihedral_index_maps(n: int) -> list[tuple[int, ...]]:
    """Vertex-index action of the 2n dihedral symmetries of G(n, k)."""
    maps = []
    for t in range(n):
        rot = [0] * (2 * n)
        ref = [0] * (2 * n)
        for i in range(n):
            rot[i] = (i + t) % n
            rot[n + i] = n + (i + t) % n
            ref[i] = (t - i) % n
            ref[n + i] = n + (t - i) % n
        maps.append(tuple(rot))
        maps.append(tuple(ref))
    return maps


def enumerate_min_hull_sets(
    g: Graph,
    optimum: int,
    *,
    unique_up_to_symmetry: bool = False,
    capacity: Optional[int] = None,
) -> Iterator[VertexSet]:
    """Yield every hull set of the given cardinality, each exactly once, in
    lexicographic order of the sorted index tuples.

    With ``unique_up_to_symmetry`` (generalized Petersen graphs only), only
    the lexicographically least member of each dihedral orbit is yielded.
    """
    n = g.vertex_count
    cap = capacity if capacity is not None else search_capacity()
    if n > cap:
        raise ExceedsCapacity(f"{n} vertices exceeds the search cap of {cap}")
    if not 0 <= optimum <= n:
        raise ValueError(f"cardinality {optimum} out of range for {n} vertices")
    auts = None
    if unique_up_to_symmetry:
        if g.family_tag.kind != "gp":
            raise InvalidParams("symmetry filtering is only defined for the gp family")
        auts = _dihedral_index_maps(g.family_tag.n)
    adj = g.adjacency
    full = (1 << n) - 1
    pow2 = [1 << v for v in range(n)]
    for combo in combinations(range(n), optimum):
        bits = sum(map(pow2.__getitem__, combo))
        if _closure_bits(adj, n, bits) != full:
            continue
        if auts is not None and any(
            tuple(sorted(a[v] for v in combo)) < combo for a in auts
        ):
            continue
        yield VertexSet(n, bits)


def diameter_spectrum_gn1(n: int) -> DiameterSpectrum:
    """Distinct forest diameters over all minimum hull sets of G(n, 1).

    Desk-scale only (3 <= n <= 12): enumerates every minimum hull set and
    profiles its complement forest.
    """
    if n < 3:
        raise InvalidParams(f"n must be at least 3 (got {n})")
    if n > 12:
        raise ExceedsCapacity(f"spectrum enumeration is capped at n = 12 (got {n})")
    g = build_generalized_petersen(GPParams(n, 1))
    optimum = min_hull_number(g).optimum
    diameters: set[int] = set()
    count = 0
    for s in enumerate_min_hull_sets(g, optimum):
        count += 1
        diameters.add(forest_profile(g, s).max_diameter)
    return DiameterSpectrum(n, tuple(sorted(diameters)), count)


def result_to_json(result: SearchResult) -> dict:
    return {
        "optimum": result.optimum,
        "witness": list(result.witness),
        "examined": result.sets_examined,
        "ms": result.wall_time * 1000.0,
    }


def spectrum_to_json(spectrum: DiameterSpectrum) -> dict:
    return {
        "n": spectrum.n,
        "diameters": list(spectrum.diameters),
        "min_sets_count": spectrum.set_count,
    }
