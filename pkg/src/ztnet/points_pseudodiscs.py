"""Disc shrinking toward anchor points and the point/disc counting chains.

A disc shrinks along the straight path center(s) = (1-s) c + s a,
radius(s) = (1-s) r, ending at the anchor point a at s = 1.  Every
intermediate object is a disc, so a family stays a family of pseudo-discs
throughout.  The contained point set decreases along the path; recording it
after every loss event enumerates the realizable subsets, and the sets of
size exactly t form the canonical tuple family.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .errors import InequalityViolated, PreconditionViolated
from .geometry import Disc, Point, point_in_disc
from .hypergraph import BipartiteIntersectionGraph, mask_of
from .rectangles import CanonicalTupleFamily
from .zarankiewicz import find_ktt_witness


@dataclass(frozen=True)
class ShrinkEvent:
    """One loss along a shrink trajectory.

    `remaining` is the contained set right after the event (indices into the
    `pts` argument).  Events are sorted by increasing s and `remaining`
    strictly decreases across loss events; the list ends with a terminator at
    s = 1 whose `remaining` repeats the never-exiting anchor indices and whose
    `lost_point` is the first anchor index (-1 if the anchor is not among the
    points).
    """

    s: float
    lost_point: int
    remaining: frozenset[int]


def _exit_parameter(p: Point, c: Point, r: float, anchor: Point) -> float:
    """Smallest s in [0, 1] with |p - center(s)| = radius(s).

    Quadratic in s: with u = p - c, w = anchor - c,
    (w.w - r^2) s^2 + 2 (r^2 - u.w) s + (u.u - r^2) = 0.
    The leading coefficient is <= 0 and the constant term is <= 0 for a
    contained point, so the smaller root is the unique exit in (0, 1); a
    point already on the boundary exits at s = 0.
    """
    ux, uy = p.x - c.x, p.y - c.y
    wx, wy = anchor.x - c.x, anchor.y - c.y
    r2 = r * r
    alpha = wx * wx + wy * wy - r2
    beta = 2.0 * (r2 - (ux * wx + uy * wy))
    gamma = ux * ux + uy * uy - r2
    if gamma >= 0.0:
        return 0.0
    if alpha == 0.0:
        # anchor on the boundary; beta > 0 for any contained p != anchor
        return min(1.0, -gamma / beta)
    disc = beta * beta - 4.0 * alpha * gamma
    sq = math.sqrt(max(disc, 0.0))
    root1 = (-beta + sq) / (2.0 * alpha)
    root2 = (-beta - sq) / (2.0 * alpha)
    s = min(root1, root2) if min(root1, root2) >= 0.0 else max(root1, root2)
    return min(max(s, 0.0), 1.0)


def shrink_events(d: Disc, anchor: Point, pts: list[Point]) -> list[ShrinkEvent]:
    """Loss events of the contained set along the shrink path toward `anchor`.

    Points equal to the anchor never exit.  Simultaneous exits produce
    consecutive events with equal s, ordered by point index.
    """
    if not point_in_disc(anchor, d):
        raise PreconditionViolated(f"anchor {anchor} lies outside the disc {d}")
    for p in pts:
        if not point_in_disc(p, d):
            raise PreconditionViolated(f"point {p} lies outside the disc {d}")
    anchor_idx = [i for i, p in enumerate(pts) if p.x == anchor.x and p.y == anchor.y]
    exits = []
    for i, p in enumerate(pts):
        if p.x == anchor.x and p.y == anchor.y:
            continue
        exits.append((_exit_parameter(p, d.center, d.radius, anchor), i))
    exits.sort()
    events = []
    remaining = set(range(len(pts)))
    for s, i in exits:
        remaining.discard(i)
        events.append(ShrinkEvent(s=s, lost_point=i, remaining=frozenset(remaining)))
    events.append(
        ShrinkEvent(
            s=1.0,
            lost_point=anchor_idx[0] if anchor_idx else -1,
            remaining=frozenset(anchor_idx),
        )
    )
    return events


def shrink_canonical_tuples(a_pts, b_discs, t: int) -> CanonicalTupleFamily:
    """Point t-subsets realizable as b cap A for some shrunk copy b of a disc.

    For every disc and every contained anchor, walk the loss events and record
    the contained set after each batch of simultaneous losses (plus the
    unshrunk starting set); the recorded sets of size exactly t form the
    family.  Simultaneous losses are one event, so the artificial intermediate
    set between them is not recorded.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    a_pts = list(a_pts)
    encountered: set[frozenset[int]] = set()
    for b in b_discs:
        contained = [i for i, p in enumerate(a_pts) if point_in_disc(p, b)]
        if not contained:
            continue
        start = frozenset(contained)
        encountered.add(start)
        local_pts = [a_pts[i] for i in contained]
        for anchor_local, anchor_global in enumerate(contained):
            events = shrink_events(b, a_pts[anchor_global], local_pts)
            loss_events = events[:-1]
            for _, group in itertools.groupby(loss_events, key=lambda ev: ev.s):
                last = None
                for last in group:
                    pass
                encountered.add(frozenset(contained[v] for v in last.remaining))
    return CanonicalTupleFamily(
        k=t, tuples=frozenset(s for s in encountered if len(s) == t)
    )


def coverage_violations(a_pts, b_discs, t: int) -> list[tuple[int, int]]:
    """(disc, point) pairs violating tuple coverage.

    Whenever a disc contains at least t points, every contained point must lie
    in at least one canonical t-tuple inside that disc: shrinking the disc
    toward the point passes through a contained set of size exactly t.
    """
    fam = shrink_canonical_tuples(a_pts, b_discs, t)
    tuple_masks = [mask_of(tp) for tp in fam.tuples]
    point_masks = {}
    bad = []
    for j, b in enumerate(b_discs):
        contained = [i for i, p in enumerate(a_pts) if point_in_disc(p, b)]
        if len(contained) < t:
            continue
        cm = mask_of(contained)
        inside = [tm for tm in tuple_masks if tm & cm == tm]
        for i in contained:
            bit = point_masks.setdefault(i, 1 << i)
            if not any(tm & bit for tm in inside):
                bad.append((j, i))
    return bad


@dataclass
class PointDiscReport:
    t: int
    family_size: int
    edge_count: int  # sum of d_i
    floor_sum: int  # sum of floor(d_i / t)
    x_sum: int
    x_upper: int  # (t-1) |F|
    degrees: list[int]
    x_counts: list[int]


def counting_inequality_check(
    a_pts, b_discs, t: int, assume_ktt_free: bool = False, budget: Optional[int] = None
) -> PointDiscReport:
    """Assert the exact chain sum floor(d_i/t) <= sum x_i <= (t-1)|F|.

    d_i counts the points inside disc i, x_i the canonical t-tuples inside it.
    The per-disc lower bound floor(d_i/t) <= x_i is checked as well.  The
    upper chain needs the incidence graph to be K_{t,t}-free, which is
    verified unless `assume_ktt_free` is set.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    a_pts = list(a_pts)
    b_discs = list(b_discs)
    if not assume_ktt_free:
        g = BipartiteIntersectionGraph.from_families(a_pts, b_discs)
        witness = find_ktt_witness(g, t, budget)
        if witness is not None:
            raise PreconditionViolated(f"incidence graph contains K_{t},{t}: {witness}")
    fam = shrink_canonical_tuples(a_pts, b_discs, t)
    tuple_masks = [mask_of(tp) for tp in fam.tuples]
    degrees = []
    x_counts = []
    for b in b_discs:
        contained = [i for i, p in enumerate(a_pts) if point_in_disc(p, b)]
        cm = mask_of(contained)
        d = len(contained)
        x = sum(1 for tm in tuple_masks if tm & cm == tm)
        if d // t > x:
            raise InequalityViolated(
                f"disc with {d} points has only {x} canonical tuples inside"
            )
        degrees.append(d)
        x_counts.append(x)
    x_sum = sum(x_counts)
    x_upper = (t - 1) * len(fam.tuples)
    if x_sum > x_upper:
        raise InequalityViolated(f"sum x_i = {x_sum} exceeds (t-1)|F| = {x_upper}")
    return PointDiscReport(
        t=t,
        family_size=len(fam.tuples),
        edge_count=sum(degrees),
        floor_sum=sum(d // t for d in degrees),
        x_sum=x_sum,
        x_upper=x_upper,
        degrees=degrees,
        x_counts=x_counts,
    )
