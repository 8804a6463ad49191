"""Verification campaigns: run theorem checks over instance grids.

The CLI's verify subcommand is a thin shell over this module.  Each check
produces one row per instance with an expected value, an observed value and
a pass flag; reports are deterministic apart from the wall-time column
(random sampling is seeded per instance).
"""

from __future__ import annotations

import csv
import io
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .constructions import (
    canonical_infecting_set,
    ggp_hull_bounds,
    ggp_infecting_set,
    ggp_path_condition,
    predicted_diameter_set_gn1,
    predicted_hull_number_gp,
    predicted_hull_surgery,
    predicted_infecting_time,
)
from .decycling import diameter_to_time, forest_profile, is_decycling_set
from .errors import ConstructionFailed, InvalidParams
from .graphs import (
    GPParams,
    Graph,
    Permutation,
    VertexSet,
    build_generalized_petersen,
    build_ggp,
    build_surgery,
)
from .infection import NotInfecting, infecting_time, is_hull_set
from .search import diameter_spectrum_gn1, enumerate_min_hull_sets, min_hull_number

RANDOM_SAMPLE_COUNT = 10_000
_SEED_BASE = 0x9E3779B9

CHECKS_BY_FAMILY = {
    "gp": ("main", "hull-formula", "components", "dan-time"),
    "surgery": ("surgery",),
    "gn1-spectrum": ("full-time",),
    "ggp": ("ggp-bounds", "min-ggp"),
}


@dataclass(frozen=True)
class CampaignConfig:
    """What to verify: family, instance grid, checks and execution knobs."""

    family: str
    n_lo: int
    n_hi: int
    checks: tuple[str, ...]
    k_policy: str | int = "all-valid"
    output_path: Optional[str] = None
    parallelism: int = 1

    def __post_init__(self):
        if self.family not in CHECKS_BY_FAMILY:
            raise InvalidParams(f"unknown family {self.family!r}")
        if not self.checks:
            raise InvalidParams("checks must be nonempty")
        allowed = CHECKS_BY_FAMILY[self.family]
        for check in self.checks:
            if check not in allowed:
                raise InvalidParams(
                    f"check {check!r} does not apply to family {self.family!r} "
                    f"(valid: {', '.join(allowed)})"
                )
        if self.n_lo > self.n_hi:
            raise InvalidParams(f"empty n range {self.n_lo}..{self.n_hi}")
        if self.parallelism < 1:
            raise InvalidParams("parallelism must be at least 1")


@dataclass
class CheckRow:
    theorem: str
    family: str
    n: int
    k_or_perm: str
    expected: str
    observed: str
    passed: bool
    ms: float


def valid_ks(n: int, k_policy: str | int = "all-valid") -> list[int]:
    ks = [k for k in range(1, (n + 1) // 2) if 2 * k < n]
    if k_policy == "all-valid":
        return ks
    return [k_policy] if k_policy in ks else []


def _compositions(total: int, min_part: int = 3) -> list[tuple[int, ...]]:
    """Ordered compositions of ``total`` into parts >= min_part, lexicographic."""
    if total == 0:
        return [()]
    out = []
    for first in range(min_part, total + 1):
        rest = total - first
        if rest == 0 or rest >= min_part:
            out.extend((first,) + tail for tail in _compositions(rest, min_part))
    return out


def ggp_corpus(n: int) -> list[Permutation]:
    """One representative permutation per cycle-type arrangement on n points.

    Contiguous-block permutations for every composition of n into parts
    >= 3, plus the rotations sigma(i) = i + k for 2 <= k < n/2 (interleaved
    cycle layouts); duplicates are dropped by image.
    """
    perms: list[Permutation] = []
    seen = set()
    for parts in _compositions(n):
        cycles = []
        offset = 0
        for p in parts:
            cycles.append(tuple(range(offset, offset + p)))
            offset += p
        perm = Permutation.from_cycles(n, cycles)
        if perm.image not in seen:
            seen.add(perm.image)
            perms.append(perm)
    for k in range(2, (n + 1) // 2):
        if 2 * k >= n:
            break
        perm = Permutation.shift(n, k)
        if perm.image not in seen:
            seen.add(perm.image)
            perms.append(perm)
    return perms


def _check_main(g: Graph, n: int, k: int) -> tuple[str, str, bool]:
    """Hull/decycling agreement: exhaustive up to 16 vertices, sampled above."""
    count = g.vertex_count
    mismatches = 0
    if count <= 16:
        total = 1 << count
        for bits in range(total):
            s = VertexSet(count, bits)
            if is_hull_set(g, s) != is_decycling_set(g, s):
                mismatches += 1
    else:
        total = RANDOM_SAMPLE_COUNT
        rng = random.Random(_SEED_BASE ^ (n << 8) ^ k)
        for _ in range(total):
            s = VertexSet(count, rng.getrandbits(count))
            if is_hull_set(g, s) != is_decycling_set(g, s):
                mismatches += 1
    return "0 mismatches", f"{mismatches} mismatches in {total} sets", mismatches == 0


def _check_hull_formula(g: Graph, n: int, k: int, parallelism: int) -> tuple[str, str, bool]:
    expected = predicted_hull_number_gp(n, k)
    optimum = min_hull_number(g, parallelism=parallelism).optimum
    return str(expected), str(optimum), optimum == expected


def _check_components(g: Graph, n: int, k: int, parallelism: int) -> tuple[str, str, bool]:
    """Component-count law plus the diameter/time law over all minimum sets."""
    optimum = min_hull_number(g, parallelism=parallelism).optimum
    violations = 0
    checked = 0
    for s in enumerate_min_hull_sets(g, optimum):
        checked += 1
        prof = forest_profile(g, s)
        comps, pairs = prof.component_count, prof.removed_adjacent_pairs
        ok = comps in (1, 2)
        if n % 2 == 1:
            ok = ok and comps == 1
        else:
            ok = ok and (comps == 2) == (pairs == 0) and (comps == 1) == (pairs == 1)
        ok = ok and infecting_time(g, s) == diameter_to_time(prof.max_diameter)
        if not ok:
            violations += 1
    return "0 violations", f"{violations} violations in {checked} sets", violations == 0


def _check_dan_time(g: Graph, n: int, k: int) -> tuple[str, str, bool]:
    s = canonical_infecting_set(n, k)
    expected = f"size={predicted_hull_number_gp(n, k)} time={predicted_infecting_time(n, k)}"
    try:
        observed = f"size={len(s)} time={infecting_time(g, s)}"
    except NotInfecting:
        observed = f"size={len(s)} time=not-infecting"
    return expected, observed, observed == expected


def _check_full_time(n: int) -> tuple[str, str, bool]:
    predicted = sorted(predicted_diameter_set_gn1(n))
    spectrum = diameter_spectrum_gn1(n)
    expected = ",".join(map(str, predicted))
    observed = ",".join(map(str, spectrum.diameters))
    return expected, observed, list(spectrum.diameters) == predicted


def _check_surgery(g: Graph, n: int, k: int, parallelism: int) -> tuple[str, str, bool]:
    expected_opt = predicted_hull_surgery(n, k)
    optimum = min_hull_number(g, parallelism=parallelism).optimum
    witness = surgery_witness_ok(g, n, k)
    expected = f"optimum={expected_opt} witness=ok"
    observed = f"optimum={optimum} witness={'ok' if witness else 'bad'}"
    return expected, observed, observed == expected


def surgery_witness_ok(g: Graph, n: int, k: int) -> bool:
    from .constructions import surgery_infecting_set

    s = surgery_infecting_set(n, k)
    return len(s) == n + 1 and is_hull_set(g, s)


def _check_ggp_bounds(perm: Permutation, parallelism: int) -> tuple[str, str, bool]:
    bounds = ggp_hull_bounds(perm)
    optimum = min_hull_number(build_ggp(perm), parallelism=parallelism).optimum
    expected = f"{bounds.lower}<=h<={bounds.upper}"
    if bounds.exact is not None:
        expected += f" h={bounds.exact}"
    ok = bounds.lower <= optimum <= bounds.upper and (
        bounds.exact is None or optimum == bounds.exact
    )
    return expected, f"h={optimum}", ok


def _check_min_ggp(perm: Permutation, parallelism: int) -> Optional[tuple[str, str, bool]]:
    start = ggp_path_condition(perm)
    if start is None:
        return None
    n = perm.n
    expected = f"h={(n + 2) // 2} witness=ok"
    try:
        witness = ggp_infecting_set(perm, start)
        witness_ok = len(witness) == (n + 2) // 2
    except ConstructionFailed:
        witness_ok = False
    optimum = min_hull_number(build_ggp(perm), parallelism=parallelism).optimum
    observed = f"h={optimum} witness={'ok' if witness_ok else 'bad'}"
    return expected, observed, observed == expected


def _timed(row_args: dict, fn: Callable[[], Optional[tuple[str, str, bool]]]) -> Optional[CheckRow]:
    t0 = time.perf_counter()
    outcome = fn()
    ms = (time.perf_counter() - t0) * 1000.0
    if outcome is None:
        return None
    expected, observed, passed = outcome
    return CheckRow(expected=expected, observed=observed, passed=passed, ms=ms, **row_args)


def run_campaign(config: CampaignConfig) -> list[CheckRow]:
    """Execute every configured check over the instance grid, one row each."""
    rows: list[CheckRow] = []
    family = config.family
    par = config.parallelism
    for n in range(config.n_lo, config.n_hi + 1):
        if family in ("gp", "surgery"):
            for k in valid_ks(n, config.k_policy):
                builder = build_generalized_petersen if family == "gp" else build_surgery
                g = builder(GPParams(n, k))
                for check in config.checks:
                    args = {"theorem": check, "family": family, "n": n, "k_or_perm": str(k)}
                    if check == "main":
                        row = _timed(args, lambda: _check_main(g, n, k))
                    elif check == "hull-formula":
                        row = _timed(args, lambda: _check_hull_formula(g, n, k, par))
                    elif check == "components":
                        row = _timed(args, lambda: _check_components(g, n, k, par))
                    elif check == "dan-time":
                        row = _timed(args, lambda: _check_dan_time(g, n, k))
                    else:  # surgery
                        row = _timed(args, lambda: _check_surgery(g, n, k, par))
                    if row is not None:
                        rows.append(row)
        elif family == "gn1-spectrum":
            if n < 3:
                continue
            for check in config.checks:
                args = {"theorem": check, "family": family, "n": n, "k_or_perm": "1"}
                row = _timed(args, lambda: _check_full_time(n))
                if row is not None:
                    rows.append(row)
        else:  # ggp
            for perm in ggp_corpus(n):
                for check in config.checks:
                    args = {
                        "theorem": check,
                        "family": family,
                        "n": n,
                        "k_or_perm": perm.render(),
                    }
                    if check == "ggp-bounds":
                        row = _timed(args, lambda: _check_ggp_bounds(perm, par))
                    else:  # min-ggp
                        row = _timed(args, lambda: _check_min_ggp(perm, par))
                    if row is not None:
                        rows.append(row)
    return rows


def all_passed(rows: list[CheckRow]) -> bool:
    return all(row.passed for row in rows)


def report_to_csv(rows: list[CheckRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["theorem", "family", "n", "k_or_perm", "expected", "observed", "pass", "ms"]
    )
    for row in rows:
        writer.writerow(
            [
                row.theorem,
                row.family,
                row.n,
                row.k_or_perm,
                row.expected,
                row.observed,
                "true" if row.passed else "false",
                f"{row.ms:.1f}",
            ]
        )
    return buf.getvalue()


def report_to_json(rows: list[CheckRow]) -> list[dict]:
    return [
        {
            "theorem": row.theorem,
            "family": row.family,
            "n": row.n,
            "k_or_perm": row.k_or_perm,
            "expected": row.expected,
            "observed": row.observed,
            "pass": row.passed,
            "ms": row.ms,
        }
        for row in rows
    ]
