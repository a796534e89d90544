"""Stage-synchronous two-handed assembly.

Stage i is the previous stage plus every *completed* stable composition of
two stage-(i-1) members.  A composition places translated copies of two
members with disjoint domains so the union is theta-stable; completion then
iterates the tile modification function to quiescence.

Because members are themselves theta-stable, the union is theta-stable
exactly when the seam (total bond strength between the two parts) is at
least theta, so no min-cut is needed on the hot path; ``paranoid`` mode
re-verifies each accepted union with a global min-cut.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .assembly import (
    Assembly,
    is_theta_stable,
    overlaps,
    seam_weight,
    union_cells,
)
from .engine import complete
from .model import DELTA, OPPOSITE, negate, rotation_class


class BudgetExceeded(Exception):
    """Raised when a run outlives its wall-clock budget."""


class MemberCapExceeded(Exception):
    """Raised when a stage would exceed the configured member cap."""

    def __init__(self, stage, count, cap):
        super().__init__(f"stage {stage} would hold {count} members (cap {cap})")
        self.stage = stage


def close_under_rotation(tiles) -> list:
    """All distinct rotations of the given tiles, originals first."""
    seen = set()
    out = []
    for t in tiles:
        for r in rotation_class(t):
            if r not in seen:
                seen.add(r)
                out.append(r)
    return out


@dataclass
class TileSystem:
    tiles: list
    strength: dict
    theta: int
    name: str = ""


def candidate_offsets(a: Assembly, b: Assembly):
    """Offsets of b relative to a that realize at least one bond.

    Every theta-stable union (theta >= 1) has a matched complementary pair
    of exposed active labels across the seam, so this enumeration is
    complete.
    """
    out = set()
    small_is_a = len(a.exposed) <= len(b.exposed)
    src, dst = (a, b) if small_is_a else (b, a)
    for (c, d), positions in src.exposed.items():
        partner = dst.exposed.get((negate(c), OPPOSITE[d]))
        if not partner:
            continue
        dx, dy = DELTA[d]
        for (px, py) in positions:
            for (qx, qy) in partner:
                if small_is_a:
                    out.add((px + dx - qx, py + dy - qy))
                else:
                    out.add((qx - px - dx, qy - py - dy))
    return out


def combine(a: Assembly, b: Assembly, system: TileSystem, paranoid=False):
    """All completed stable compositions of a and b (as Assembly objects)."""
    results = []
    for offset in candidate_offsets(a, b):
        if overlaps(a, b, offset):
            continue
        if seam_weight(a, b, offset, system.strength) < system.theta:
            continue
        cells = union_cells(a, b, offset)
        if paranoid and not is_theta_stable(cells, system.strength, system.theta):
            raise AssertionError(
                "seam test accepted a union the min-cut rejects"
            )
        done, _ = complete(cells)
        results.append(Assembly(done))
    return results


@dataclass
class RunResult:
    stages: list  # stages[i] = list of Assembly new at stage i
    members: dict  # key -> Assembly, all members of the final stage set
    elapsed: float = 0.0
    truncated_by: str = ""  # "", "budget", or "member-cap"
    stage_counts: list = field(default_factory=list)


def run(
    system: TileSystem,
    stages: int,
    paranoid=False,
    max_members=None,
    budget_secs=None,
    on_stage=None,
):
    """Run the staged process for the given number of stages.

    Returns a RunResult whose ``stages[i]`` lists the translation classes
    first produced at stage i (stage 0 = the tile set itself).
    """
    start = time.monotonic()
    initial = [Assembly({(0, 0): t}) for t in system.tiles]
    members = {}
    new = []
    for a in initial:
        if a.key not in members:
            members[a.key] = a
            new.append(a)
    result = RunResult(stages=[new], members=members)
    result.stage_counts.append(len(new))

    for stage in range(1, stages + 1):
        if budget_secs is not None and time.monotonic() - start > budget_secs:
            result.truncated_by = "budget"
            break
        new_keys = {a.key for a in new}
        old = [a for a in members.values() if a.key not in new_keys]
        produced = []
        seen = set(members)
        # Pairs of two old members were exhausted at an earlier stage, so
        # only new x old and unordered pairs within new (self-pairs allowed).
        pairs = [(a, b) for a in new for b in old]
        pairs += [(new[i], new[j]) for i in range(len(new)) for j in range(i, len(new))]
        for a, b in pairs:
            if budget_secs is not None and time.monotonic() - start > budget_secs:
                result.truncated_by = "budget"
                break
            for out in combine(a, b, system, paranoid=paranoid):
                if out.key not in seen:
                    seen.add(out.key)
                    produced.append(out)
        if result.truncated_by:
            break
        for a in produced:
            members[a.key] = a
        new = produced
        result.stages.append(produced)
        result.stage_counts.append(len(produced))
        if on_stage is not None:
            on_stage(stage, produced, members)
        if max_members is not None and len(members) > max_members:
            result.truncated_by = "member-cap"
            break
        if not produced:
            break  # fixed point: later stages add nothing

    result.elapsed = time.monotonic() - start
    return result
