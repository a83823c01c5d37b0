"""Rectangle-intersection machinery: type census, corner and crossing graphs,
canonical segment tuples, the segment Delaunay graph with its planar drawing,
and the counting-inequality report.

A k-tuple of horizontal segments is canonical when some vertical segment
meets exactly those k among all the segments.  Stab sets are constant on the
open intervals between consecutive endpoint abscissae, and within one
interval the realizable exact stab sets are precisely the runs of consecutive
segments in the y-order of the active set, so a sweep over the interval
decomposition enumerates the family exactly.
"""

from __future__ import annotations

import math
import random
from bisect import insort
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateInput, InequalityViolated, PreconditionViolated
from .geometry import (
    IntersectionType,
    Point,
    Segment,
    check_general_position,
    classify_rect_pair,
    intersects,
    point_in_rect,
    rect_corners,
    rect_horizontal_edges,
    rect_vertical_edges,
)
from .hypergraph import BipartiteIntersectionGraph, Graph, mask_of
from .zarankiewicz import find_ktt_witness


@dataclass(frozen=True)
class IntersectionTypeCounts:
    type1: int  # a strictly inside b
    type2: int  # b strictly inside a
    type3: int  # vertical edge of b crosses horizontal edge of a
    type4: int  # vertical edge of a crosses horizontal edge of b

    @property
    def total(self) -> int:
        return self.type1 + self.type2 + self.type3 + self.type4


@dataclass(frozen=True)
class CanonicalTupleFamily:
    k: int
    tuples: frozenset[frozenset[int]]

    def size(self) -> int:
        return len(self.tuples)


def horizontal_edges_of(rects) -> list[Segment]:
    """Bottom and top edges of each rectangle; rect i owns indices 2i, 2i+1."""
    segs = []
    for r in rects:
        segs.extend(rect_horizontal_edges(r))
    return segs


def vertical_edges_of(rects) -> list[Segment]:
    """Left and right edges of each rectangle; rect j owns indices 2j, 2j+1."""
    segs = []
    for r in rects:
        segs.extend(rect_vertical_edges(r))
    return segs


# ---------------------------------------------------------------------------
# census and incidence graphs


def intersection_type_census(a_rects, b_rects) -> IntersectionTypeCounts:
    """Classify every intersecting (a, b) pair into exactly one of four types.

    The partition identity total == number of intersecting pairs is enforced
    against the plain intersection predicate.
    """
    if not check_general_position(list(a_rects) + list(b_rects)):
        raise DegenerateInput("rectangle families share an edge line")
    counts = {ity: 0 for ity in IntersectionType}
    intersecting = 0
    for a in a_rects:
        for b in b_rects:
            ity = classify_rect_pair(a, b)
            crossing = intersects(a, b)
            if (ity is not None) != crossing:
                raise AssertionError(f"census classification disagrees for {a}, {b}")
            if ity is not None:
                intersecting += 1
                counts[ity] += 1
    result = IntersectionTypeCounts(
        type1=counts[IntersectionType.A_INSIDE_B],
        type2=counts[IntersectionType.B_INSIDE_A],
        type3=counts[IntersectionType.B_VERTICAL_CROSSES_A],
        type4=counts[IntersectionType.A_VERTICAL_CROSSES_B],
    )
    assert result.total == intersecting
    return result


def corner_incidence_graph(a_rects, b_rects) -> BipartiteIntersectionGraph:
    """Bipartite graph: corners of A-rectangles vs B-rectangles, edge = containment.

    Rect i owns corner indices 4i..4i+3.  If the rectangle intersection graph
    is K_{t,t}-free this graph is K_{4t-3,4t-3}-free: 4t-3 corners span at
    least t distinct A-rectangles.
    """
    corners: list[Point] = []
    for r in a_rects:
        corners.extend(rect_corners(r))
    edges = set()
    for i, c in enumerate(corners):
        for j, b in enumerate(b_rects):
            if point_in_rect(c, b):
                edges.add((i, j))
    return BipartiteIntersectionGraph(corners, list(b_rects), edges)


def corner_biclique_check(a_rects, b_rects, t: int, budget: Optional[int] = None):
    """Witness search for K_{4t-3,4t-3} in the corner incidence graph (None = free)."""
    return find_ktt_witness(corner_incidence_graph(a_rects, b_rects), 4 * t - 3, budget)


@dataclass
class CrossingGraph:
    """Bipartite crossing graph: horizontal edges of A vs vertical edges of B."""

    h_segments: list[Segment]
    v_segments: list[Segment]
    edges: set[tuple[int, int]]  # (h index, v index)

    def edge_count(self) -> int:
        return len(self.edges)

    def degrees_v(self) -> list[int]:
        deg = [0] * len(self.v_segments)
        for _, j in self.edges:
            deg[j] += 1
        return deg

    def crossed_by_v(self) -> list[frozenset[int]]:
        """For each vertical vertex, the set of horizontal vertices it crosses."""
        sets = [set() for _ in self.v_segments]
        for i, j in self.edges:
            sets[j].add(i)
        return [frozenset(s) for s in sets]


def crossing_graph(a_rects, b_rects) -> CrossingGraph:
    # every B-rectangle contributes two vertical vertices, so there are
    # exactly 2|B| of them (degree sums below run over all 2|B|)
    hsegs = horizontal_edges_of(a_rects)
    vsegs = vertical_edges_of(b_rects)
    edges = set()
    for j, v in enumerate(vsegs):
        for i, h in enumerate(hsegs):
            if h.lo <= v.fixed <= h.hi and v.lo <= h.fixed <= v.hi:
                edges.add((i, j))
    return CrossingGraph(hsegs, vsegs, edges)


# ---------------------------------------------------------------------------
# canonical tuples by interval sweep


def _interval_runs(hsegs, k: int):
    """Yield (run, witness_x) for every length-k consecutive run of the y-sorted
    active set on each open interval between consecutive endpoint abscissae."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = len(hsegs)
    if n == 0:
        return
    starts: dict[float, list[int]] = {}
    ends: dict[float, list[int]] = {}
    for i, s in enumerate(hsegs):
        starts.setdefault(s.lo, []).append(i)
        ends.setdefault(s.hi, []).append(i)
    abscissae = sorted(set(starts) | set(ends))
    active: list[tuple[float, int]] = []  # (y, index), kept sorted by y
    for xi in range(len(abscissae) - 1):
        x = abscissae[xi]
        for i in ends.get(x, ()):
            active.remove((hsegs[i].fixed, i))
        for i in starts.get(x, ()):
            insort(active, (hsegs[i].fixed, i))
        witness = (x + abscissae[xi + 1]) / 2.0
        for lo in range(len(active) - k + 1):
            yield tuple(idx for _, idx in active[lo : lo + k]), witness


def canonical_segment_tuples(hsegs, k: int) -> CanonicalTupleFamily:
    """All k-subsets realizable as the exact stab set of some vertical segment."""
    tuples = {frozenset(run) for run, _ in _interval_runs(hsegs, k)}
    return CanonicalTupleFamily(k=k, tuples=frozenset(tuples))


def canonical_tuples_with_witness(hsegs, k: int) -> dict[frozenset[int], float]:
    """Canonical k-tuples mapped to one witness abscissa each (first found)."""
    out: dict[frozenset[int], float] = {}
    for run, witness in _interval_runs(hsegs, k):
        out.setdefault(frozenset(run), witness)
    return out


# ---------------------------------------------------------------------------
# segment Delaunay graph and its planar drawing


@dataclass
class SegmentDelaunay:
    """Delaunay graph of the vertical-stab hypergraph of horizontal segments."""

    hsegs: list[Segment]
    graph: Graph
    witness_x: dict[tuple[int, int], float]

    def to_svg(self, width: float = 640.0) -> str:
        return _delaunay_svg(self.hsegs, self.graph, self.witness_x, width)


def segment_delaunay(hsegs) -> SegmentDelaunay:
    """Graph on the segments whose edges are the canonical pairs."""
    witnesses = canonical_tuples_with_witness(hsegs, 2)
    edges = set()
    witness_x = {}
    for pair, x in witnesses.items():
        i, j = sorted(pair)
        edges.add((i, j))
        witness_x[(i, j)] = x
    return SegmentDelaunay(
        hsegs=list(hsegs), graph=Graph(len(hsegs), edges), witness_x=witness_x
    )


def delaunay_drawing_paths(dela: "SegmentDelaunay") -> dict[tuple[int, int], list[tuple[float, float]]]:
    """Data-space polyline per edge: right endpoint of one segment, along it to
    the witness abscissa, down the witness vertical, along the other segment to
    its right endpoint.  Paths are nudged off the segments by a per-edge hair
    (at most a tenth of the smallest y-gap) so overlapping strokes stay
    distinguishable without disturbing the vertical order.

    Paths of vertex-disjoint edges never cross: a crossing would put a third
    active segment strictly inside the witness vertical's span, contradicting
    the exact two-element stab set.
    """
    hsegs = dela.hsegs
    ys = sorted({s.fixed for s in hsegs})
    gaps = [b - a for a, b in zip(ys, ys[1:])]
    eps_draw = (min(gaps) / 10.0) if gaps else 0.01
    paths = {}
    for rank, (i, j) in enumerate(sorted(dela.graph.edges)):
        off = eps_draw * (1 + rank % 7) / 7.0
        xw = dela.witness_x[(i, j)]
        yi, yj = hsegs[i].fixed + off, hsegs[j].fixed + off
        paths[(i, j)] = [
            (hsegs[i].hi, yi),
            (xw, yi),
            (xw, yj),
            (hsegs[j].hi, yj),
        ]
    return paths


def _delaunay_svg(hsegs, graph: Graph, witness_x, width: float) -> str:
    """Planar drawing: vertices at right endpoints, each edge a 3-leg path that
    runs along one segment, jumps over the witness vertical, and follows the
    other segment to its right endpoint."""
    if not hsegs:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="16" height="16"/>'
    xs = [s.lo for s in hsegs] + [s.hi for s in hsegs]
    ys = [s.fixed for s in hsegs]
    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(ys), max(ys)
    span_x = (x_max - x_min) or 1.0
    span_y = (y_max - y_min) or 1.0

    height = width * span_y / span_x
    pad = 0.05 * width

    def tx(x: float) -> float:
        return pad + (x - x_min) / span_x * width

    def ty(y: float) -> float:
        return pad + (y_max - y) / span_y * height

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 2 * pad:.1f}" '
        f'height="{height + 2 * pad:.1f}" '
        f'viewBox="0 0 {width + 2 * pad:.1f} {height + 2 * pad:.1f}">'
    ]
    for s in hsegs:
        parts.append(
            f'<line x1="{tx(s.lo):.3f}" y1="{ty(s.fixed):.3f}" '
            f'x2="{tx(s.hi):.3f}" y2="{ty(s.fixed):.3f}" '
            'stroke="#bbbbbb" stroke-width="1.5"/>'
        )
    dela = SegmentDelaunay(hsegs=list(hsegs), graph=graph, witness_x=witness_x)
    for edge, pts in delaunay_drawing_paths(dela).items():
        coords = " ".join(f"{tx(x):.3f},{ty(y):.3f}" for x, y in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="#33678f" stroke-width="0.8"/>'
        )
    for s in hsegs:
        parts.append(
            f'<circle cx="{tx(s.hi):.3f}" cy="{ty(s.fixed):.3f}" r="2.2" fill="#222222"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


# ---------------------------------------------------------------------------
# hereditary Euler-bound check


@dataclass
class PlanarityReport:
    passed: bool
    violations: int
    samples_checked: int
    worst_ratio: float


def _euler_bound(k: int) -> int:
    if k >= 3:
        return 3 * k - 6
    return (0, 0, 1)[k]


def hereditary_planarity_check(g: Graph, samples: int, seed: int) -> PlanarityReport:
    """Euler bound |E| <= 3|V|-6 on the full graph and random induced subgraphs."""
    rng = random.Random(seed)
    n = g.vertex_count
    if g.edges:
        eu = np.fromiter((e[0] for e in sorted(g.edges)), dtype=np.int64)
        ev = np.fromiter((e[1] for e in sorted(g.edges)), dtype=np.int64)
    else:
        eu = ev = np.zeros(0, dtype=np.int64)
    violations = 0
    worst = 0.0
    checked = 0

    def check(count: int, k: int):
        nonlocal violations, worst, checked
        checked += 1
        bound = _euler_bound(k)
        if bound == 0:
            ratio = 0.0 if count == 0 else math.inf
        else:
            ratio = count / bound
        worst = max(worst, ratio)
        if count > bound:
            violations += 1

    check(len(g.edges), n)
    keep = np.zeros(n, dtype=bool)
    for _ in range(samples):
        size = rng.randint(0, n)
        keep[:] = False
        if size:
            keep[rng.sample(range(n), size)] = True
        count = int((keep[eu] & keep[ev]).sum()) if len(eu) else 0
        check(count, size)
    return PlanarityReport(
        passed=violations == 0,
        violations=violations,
        samples_checked=checked,
        worst_ratio=worst,
    )


# ---------------------------------------------------------------------------
# the counting-inequality report


@dataclass
class RectangleBoundReport:
    t: int
    census: IntersectionTypeCounts
    family_size: int  # |F| at k = 2t-1
    crossing_edges: int  # |E(K)| = sum of d_i
    x_sum: int
    x_upper: int  # (2t-2) |F|
    per_vertex_lower_ok: bool  # d_i - 2t + 2 <= x_i for every vertical vertex
    degrees: list[int]
    x_counts: list[int]


def rectangle_bound_report(
    a_rects, b_rects, t: int, assume_ktt_free: bool = False, budget: Optional[int] = None
) -> RectangleBoundReport:
    """Assemble the census and both counting chains for the crossing graph.

    Upper chain: sum x_i <= (2t-2) |F|, since 2t-1 vertical vertices crossing
    one canonical tuple would span t B-rectangles against t A-rectangles.
    Lower chain: d_i - 2t + 2 <= x_i per vertical vertex, every consecutive
    (2t-1)-run of its crossed segments being canonical.  Violations raise, as
    they signal either a bug or a non-K_{t,t}-free input.
    """
    if t < 2:
        raise ValueError("t must be >= 2")
    a_rects = list(a_rects)
    b_rects = list(b_rects)
    if not check_general_position(a_rects + b_rects):
        raise DegenerateInput("rectangle families share an edge line")
    if not assume_ktt_free:
        g = BipartiteIntersectionGraph.from_families(a_rects, b_rects)
        witness = find_ktt_witness(g, t, budget)
        if witness is not None:
            raise PreconditionViolated(f"input graph contains K_{t},{t}: {witness}")
    census = intersection_type_census(a_rects, b_rects)
    k_graph = crossing_graph(a_rects, b_rects)
    degrees = k_graph.degrees_v()
    fam = canonical_tuples_with_witness(k_graph.h_segments, 2 * t - 1)
    tuple_masks = [mask_of(tp) for tp in fam]
    crossed = k_graph.crossed_by_v()
    x_counts = []
    for cs in crossed:
        cm = mask_of(cs)
        x_counts.append(sum(1 for tm in tuple_masks if tm & cm == tm))
    x_sum = sum(x_counts)
    x_upper = (2 * t - 2) * len(fam)
    if x_sum > x_upper:
        raise InequalityViolated(
            f"sum x_i = {x_sum} exceeds (2t-2)|F| = {x_upper}"
        )
    per_vertex_ok = True
    for d, x in zip(degrees, x_counts):
        if d - 2 * t + 2 > x:
            per_vertex_ok = False
            raise InequalityViolated(
                f"vertical vertex with degree {d} meets only {x} canonical tuples"
            )
    return RectangleBoundReport(
        t=t,
        census=census,
        family_size=len(fam),
        crossing_edges=k_graph.edge_count(),
        x_sum=x_sum,
        x_upper=x_upper,
        per_vertex_lower_ok=per_vertex_ok,
        degrees=degrees,
        x_counts=x_counts,
    )
