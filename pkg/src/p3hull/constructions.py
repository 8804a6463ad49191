"""Closed-form constructions and predicted values for the graph families.

Everything here is exact integer arithmetic.  Set constructions that rest on
an under-specified pattern (the GGP infecting set) are validated against the
closure oracle before being returned; a failed validation raises
ConstructionFailed rather than handing back an unverified set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ConstructionFailed, InvalidParams, PathConditionUnmet
from .graphs import GPParams, Permutation, VertexSet, build_ggp
from .infection import is_hull_set


@dataclass(frozen=True)
class GGPBounds:
    """Bounds on the hull number of a GGP graph, exact when known."""

    lower: int
    upper: int
    exact: Optional[int]
    odd_cycle_count: int


def predicted_hull_number_gp(n: int, k: int) -> int:
    """Hull number of G(n, k): ceil((n + 1) / 2)."""
    GPParams(n, k)
    return (n + 2) // 2


def canonical_infecting_set(n: int, k: int) -> VertexSet:
    """The explicit minimum infecting set for G(n, k).

    Interior part: v_{j+ik} for odd i (0 <= i <= l-1, 0 <= j <= c-1), one
    alternating run per interior cycle.  Exterior part: {u_0} when l is
    even, else {u_{c-1}} plus the even-indexed u_j with j < c.
    """
    params = GPParams(n, k)
    c, l = params.c, params.l
    indices = {n + (j + i * k) % n for j in range(c) for i in range(1, l, 2)}
    if l % 2 == 0:
        indices.add(0)
    else:
        indices.add(c - 1)
        indices.update(range(0, c, 2))
    return VertexSet.from_indices(2 * n, indices)


def predicted_infecting_time(n: int, k: int) -> int:
    """Infecting time of the canonical set: n/2 for l even, (n-c)/2 + 1 for l odd."""
    params = GPParams(n, k)
    c, l = params.c, params.l
    if l % 2 == 0:
        return n // 2
    return (n - c) // 2 + 1


def predicted_diameter_set_gn1(n: int) -> frozenset[int]:
    """All max tree diameters realized by minimum hull sets of G(n, 1).

    Odd n: {n, n+2, ..., n + 2*floor((n-3)/4)}.  Even n: every d with
    floor(n/2) <= d <= 3n/2 - 2 except d = n - 1.
    """
    if n < 3:
        raise InvalidParams(f"n must be at least 3 (got {n})")
    if n % 2 == 1:
        return frozenset(range(n, n + 2 * ((n - 3) // 4) + 1, 2))
    return frozenset(
        d for d in range(n // 2, 3 * n // 2 - 1) if d != n - 1
    )


def predicted_hull_surgery(n: int, k: int) -> int:
    """Hull number of the surgery graph G(n,k)#G(n,k): n + 1."""
    GPParams(n, k)
    return n + 1


def _shift_gp_index(x: int, n: int, amount: int) -> int:
    """Rotate a G(n, k) vertex index by ``amount`` within its u/v layer."""
    if x < n:
        return (x + amount) % n
    return n + (x - n + amount) % n


def surgery_infecting_set(n: int, k: int) -> VertexSet:
    """A minimum infecting set of size n + 1 for the canonical surgery graph.

    The construction follows three parity cases.  Where the underlying
    argument places the surgery along u_{c-1} u_c, the index shift is
    applied to the set (rotate by -(c-1)) so that it lands on the canonical
    graph, whose surgery runs along u_0 u_1.
    """
    params = GPParams(n, k)
    c, l = params.c, params.l
    off = 2 * n
    if n % 2 == 0 and l % 2 == 0:
        # No shift: alternate runs with i even on both interior copies, one u.
        interior = {n + (j + i * k) % n for j in range(c) for i in range(0, l, 2)}
        indices = {0} | interior | {x + off for x in interior}
        return VertexSet.from_indices(4 * n, indices)
    base = [_shift_gp_index(x, n, -(c - 1)) for x in canonical_infecting_set(n, k)]
    indices = set(base) | {x + off for x in base}
    if n % 2 == 0:
        # l odd, c even: drop the shifted copy-B vertex u'_{c-1} (now u'_0).
        indices.discard(off)
    return VertexSet.from_indices(4 * n, indices)


def ggp_hull_bounds(perm: Permutation) -> GGPBounds:
    """Hull-number bounds for GGP(n, sigma) from the odd-cycle count.

    Lower bound ceil((n+1)/2) always; exact values (n+2)/2, (n+1)/2, (n+2)/2
    for 0, 1, 2 odd cycles; upper bound (n + odd)/2 otherwise.
    """
    n = perm.n
    odd = sum(1 for cyc in perm.cycles if len(cyc) % 2 == 1)
    lower = (n + 2) // 2
    exact = {0: (n + 2) // 2, 1: (n + 1) // 2, 2: (n + 2) // 2}.get(odd)
    upper = exact if exact is not None else (n + odd) // 2
    return GGPBounds(lower=lower, upper=upper, exact=exact, odd_cycle_count=odd)


def ggp_path_condition(perm: Permutation) -> Optional[int]:
    """Smallest j such that u_j .. u_{j+k-1} attach to k distinct odd cycles.

    k is the number of odd interior cycles; the window wraps modulo n and j
    is scanned cyclically from 0.  Returns 0 vacuously when k = 0, None when
    no window works.
    """
    n = perm.n
    odd_ids = {ci for ci, cyc in enumerate(perm.cycles) if len(cyc) % 2 == 1}
    k = len(odd_ids)
    if k == 0:
        return 0
    cycle_of = perm.cycle_index
    for j in range(n):
        window = [cycle_of[(j + t) % n] for t in range(k)]
        if set(window) == odd_ids and len(set(window)) == k:
            return j
    return None


def ggp_infecting_set(perm: Permutation, start: int) -> VertexSet:
    """Minimum infecting set of GGP(n, sigma) when the path condition holds
    at ``start``.

    Each odd cycle is rotated so its attach vertex v_p (p on the path) sits
    at position 0 and the odd positions are taken; even cycles contribute
    their odd positions as listed.  Exterior vertices follow the alternating
    pattern of the canonical G(n, k) set on the relabeled path (a single
    vertex when every cycle is even).  The result is validated by closure
    before being returned.
    """
    if ggp_path_condition(perm) != start:
        raise PathConditionUnmet(
            f"path condition does not hold at start index {start}"
        )
    n = perm.n
    cycle_of = perm.cycle_index
    odd_ids = {ci for ci, cyc in enumerate(perm.cycles) if len(cyc) % 2 == 1}
    k = len(odd_ids)
    interior: set[int] = set()
    exterior: set[int] = set()
    if k == 0:
        for cyc in perm.cycles:
            interior.update(cyc[1::2])
        exterior.add(start % n)
    else:
        for t in range(k):
            p = (start + t) % n
            cyc = perm.cycles[cycle_of[p]]
            pos = cyc.index(p)
            rotated = cyc[pos:] + cyc[:pos]
            interior.update(rotated[1::2])
        for ci, cyc in enumerate(perm.cycles):
            if ci not in odd_ids:
                interior.update(cyc[1::2])
        exterior.add((start + k - 1) % n)
        exterior.update((start + j) % n for j in range(0, k, 2))
    result = VertexSet.from_indices(2 * n, exterior | {n + v for v in interior})
    expected_size = (n + 2) // 2
    if len(result) != expected_size or not is_hull_set(build_ggp(perm), result):
        raise ConstructionFailed(
            f"constructed set of size {len(result)} failed validation "
            f"(expected an infecting set of size {expected_size})"
        )
    return result


def bounds_to_json(bounds: GGPBounds, n: int) -> dict:
    return {
        "n": n,
        "odd_cycles": bounds.odd_cycle_count,
        "lower": bounds.lower,
        "upper": bounds.upper,
        "exact": bounds.exact,
    }
