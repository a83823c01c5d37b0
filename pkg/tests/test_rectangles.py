import itertools
import random
import xml.etree.ElementTree as ET

import pytest

from ztnet.errors import DegenerateInput, PreconditionViolated
from ztnet.generators import GenParams, generate, prune_to_ktt_free
from ztnet.geometry import AxisRect, Segment
from ztnet.hypergraph import (
    BipartiteIntersectionGraph,
    Graph,
    Hypergraph,
    delaunay_graph,
)
from ztnet.rectangles import (
    canonical_segment_tuples,
    canonical_tuples_with_witness,
    corner_biclique_check,
    corner_incidence_graph,
    crossing_graph,
    hereditary_planarity_check,
    horizontal_edges_of,
    intersection_type_census,
    rectangle_bound_report,
    segment_delaunay,
)


def hseg(y, lo, hi):
    return Segment("horizontal", y, lo, hi)


def rect_families(n, seed, lo=0.05, hi=0.3):
    a = generate("random_rects", n, GenParams(extent_lo=lo, extent_hi=hi, parity=0), 2 * seed)
    b = generate("random_rects", n, GenParams(extent_lo=lo, extent_hi=hi, parity=1), 2 * seed + 1)
    return a, b


class TestCensus:
    def test_examples(self):
        c = intersection_type_census([AxisRect(1, 2, 1, 2)], [AxisRect(0, 3, 0, 3)])
        assert (c.type1, c.type2, c.type3, c.type4) == (1, 0, 0, 0)
        c = intersection_type_census([AxisRect(0, 3, 1, 2)], [AxisRect(1, 2, 0, 3)])
        assert (c.type1, c.type2, c.type3, c.type4) == (0, 0, 1, 0)
        c = intersection_type_census([AxisRect(0, 1, 0, 1)], [AxisRect(5, 6, 5, 6)])
        assert c.total == 0

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateInput):
            intersection_type_census([AxisRect(0, 1, 0, 1)], [AxisRect(1, 2, 4, 5)])

    def test_partition_identity_and_symmetry(self):
        for seed in range(15):
            a, b = rect_families(25, seed)
            g = BipartiteIntersectionGraph.from_families(a, b)
            fwd = intersection_type_census(a, b)
            rev = intersection_type_census(b, a)
            assert fwd.total == len(g.edges) == rev.total
            assert fwd.type1 == rev.type2 and fwd.type2 == rev.type1
            assert fwd.type3 == rev.type4 and fwd.type4 == rev.type3


class TestCornerGraph:
    def test_contained_rect_gives_four_edges(self):
        g = corner_incidence_graph([AxisRect(1, 2, 1, 2)], [AxisRect(0, 3, 0, 3)])
        assert len(g.edges) == 4 and g.m == 4

    def test_cross_pair_gives_none(self):
        g = corner_incidence_graph([AxisRect(0, 3, 1, 2)], [AxisRect(1, 2, 0, 3)])
        assert len(g.edges) == 0

    def test_corner_graph_biclique_free_on_pruned_instance(self):
        a, b = rect_families(40, seed=4)
        g = BipartiteIntersectionGraph.from_families(a, b)
        res = prune_to_ktt_free(g, 2)
        # K_{2,2}-free rectangles force a K_{5,5}-free corner graph (4t-3 = 5)
        assert corner_biclique_check(res.graph.side_a, res.graph.side_b, 2) is None


class TestCrossingGraph:
    def test_cross_pair_contributes_four(self):
        k = crossing_graph([AxisRect(0, 3, 1, 2)], [AxisRect(1, 2, 0, 3)])
        assert k.edge_count() == 4

    def test_nested_pair_contributes_none(self):
        k = crossing_graph([AxisRect(1, 2, 1, 2)], [AxisRect(0, 3, 0, 3)])
        assert k.edge_count() == 0

    def test_type3_bounded_by_4_edges(self):
        for seed in range(10):
            a, b = rect_families(20, seed)
            census = intersection_type_census(a, b)
            k = crossing_graph(a, b)
            assert census.type3 <= 4 * k.edge_count()

    def test_per_pair_edge_counts(self):
        # a type-3 pair contributes 1, 2, or 4 crossing edges
        for seed in range(8):
            a, b = rect_families(12, seed)
            for ra in a:
                for rb in b:
                    k = crossing_graph([ra], [rb])
                    assert k.edge_count() in (0, 1, 2, 4)

    def test_frames_realize_only_crossing_types(self):
        # boundary curves meet exactly when the solid pair is of type 3 or 4
        from ztnet.geometry import Frame, classify_rect_pair, intersects, IntersectionType

        for seed in range(6):
            a, b = rect_families(15, seed)
            for ra in a:
                for rb in b:
                    fa = Frame(ra.x_lo, ra.x_hi, ra.y_lo, ra.y_hi)
                    fb = Frame(rb.x_lo, rb.x_hi, rb.y_lo, rb.y_hi)
                    kind = classify_rect_pair(ra, rb)
                    crossing = kind in (
                        IntersectionType.B_VERTICAL_CROSSES_A,
                        IntersectionType.A_VERTICAL_CROSSES_B,
                    )
                    assert intersects(fa, fb) == crossing


def naive_canonical(hsegs, k):
    """Witness-search oracle over the interval decomposition: a k-subset is
    canonical iff on some open interval all k are active and consecutive in
    the y-order of the active set."""
    xs = sorted({v for s in hsegs for v in (s.lo, s.hi)})
    out = set()
    for x0, x1 in zip(xs, xs[1:]):
        active = sorted(
            (s.fixed, i) for i, s in enumerate(hsegs) if s.lo <= x0 and s.hi >= x1
        )
        order = [i for _, i in active]
        for combo in itertools.combinations(range(len(order)), k):
            if combo[-1] - combo[0] == k - 1:  # consecutive positions
                out.add(frozenset(order[c] for c in combo))
    return out


class TestCanonicalTuples:
    def test_three_stacked(self):
        segs = [hseg(0, 0, 10), hseg(1, 0, 10), hseg(2, 0, 10)]
        fam3 = canonical_segment_tuples(segs, 3)
        assert fam3.tuples == frozenset({frozenset({0, 1, 2})})
        fam2 = canonical_segment_tuples(segs, 2)
        assert fam2.tuples == frozenset({frozenset({0, 1}), frozenset({1, 2})})

    def test_matches_witness_search_oracle(self):
        rng = random.Random(3)
        for trial in range(15):
            n = rng.randint(5, 30)
            segs = []
            for i in range(n):
                lo = rng.uniform(0, 8)
                segs.append(hseg(rng.uniform(0, 10) + i * 1e-6, lo, lo + rng.uniform(0.5, 4)))
            for k in (1, 2, 3):
                fam = canonical_segment_tuples(segs, k)
                assert fam.tuples == frozenset(naive_canonical(segs, k)), (trial, k)

    def test_consecutive_run_property(self):
        segs = horizontal_edges_of(generate("random_rects", 30, None, 12))
        for tup, x in canonical_tuples_with_witness(segs, 3).items():
            active = sorted(
                (s.fixed, i) for i, s in enumerate(segs) if s.lo <= x <= s.hi
            )
            order = [i for _, i in active]
            positions = sorted(order.index(i) for i in tup)
            assert positions[-1] - positions[0] == len(tup) - 1
            assert set(tup) <= set(order)


class TestSegmentDelaunay:
    def test_stacked_and_disjoint(self):
        segs = [hseg(0, 0, 10), hseg(1, 0, 10), hseg(2, 0, 10)]
        assert segment_delaunay(segs).graph.edges == {(0, 1), (1, 2)}
        apart = [hseg(0, 0, 1), hseg(1, 2, 3), hseg(2, 4, 5)]
        assert segment_delaunay(apart).graph.edges == set()

    def test_euler_bound_on_random_segments(self):
        segs = horizontal_edges_of(
            generate("random_rects", 100, GenParams(extent_lo=0.1, extent_hi=0.4), 21)
        )
        dela = segment_delaunay(segs)
        assert len(dela.graph.edges) <= 3 * len(segs) - 6

    def test_equals_delaunay_of_explicit_stab_hypergraph(self):
        segs = horizontal_edges_of(generate("random_rects", 12, None, 33))
        xs = sorted({v for s in segs for v in (s.lo, s.hi)})
        stab_sets = []
        for x0, x1 in zip(xs, xs[1:]):
            active = sorted(
                (s.fixed, i) for i, s in enumerate(segs) if s.lo <= x0 and s.hi >= x1
            )
            order = [i for _, i in active]
            for i in range(len(order)):
                for j in range(i, len(order)):
                    stab_sets.append(frozenset(order[i : j + 1]))
        j_hyper = Hypergraph(len(segs), stab_sets)
        assert segment_delaunay(segs).graph.edges == delaunay_graph(j_hyper).edges

    def test_svg_is_wellformed_and_complete(self):
        segs = horizontal_edges_of(generate("random_rects", 15, None, 2))
        dela = segment_delaunay(segs)
        svg = dela.to_svg()
        root = ET.fromstring(svg)
        local = lambda el: el.tag.rsplit("}", 1)[-1]
        polylines = [el for el in root.iter() if local(el) == "polyline"]
        lines = [el for el in root.iter() if local(el) == "line"]
        assert len(polylines) == len(dela.graph.edges)
        assert len(lines) == len(segs)

    def test_svg_empty_input(self):
        ET.fromstring(segment_delaunay([]).to_svg())

    def test_drawing_is_planar_for_vertex_disjoint_edges(self):
        # the figure argument at desk scale: paths of vertex-disjoint edges
        # never cross (a crossing would force a third segment into the
        # witness vertical's exact stab set)
        from ztnet.rectangles import delaunay_drawing_paths

        def axis_segments(path):
            return list(zip(path, path[1:]))

        def segs_intersect(p, q):
            (x1, y1), (x2, y2) = p
            (x3, y3), (x4, y4) = q
            lo1x, hi1x = sorted((x1, x2))
            lo1y, hi1y = sorted((y1, y2))
            lo2x, hi2x = sorted((x3, x4))
            lo2y, hi2y = sorted((y3, y4))
            return lo1x <= hi2x and lo2x <= hi1x and lo1y <= hi2y and lo2y <= hi1y

        for seed in (3, 14, 28):
            segs = horizontal_edges_of(
                generate("random_rects", 40, GenParams(extent_lo=0.1, extent_hi=0.4), seed)
            )
            dela = segment_delaunay(segs)
            paths = delaunay_drawing_paths(dela)
            edges = sorted(paths)
            for a_idx in range(len(edges)):
                for b_idx in range(a_idx + 1, len(edges)):
                    ea, eb = edges[a_idx], edges[b_idx]
                    if set(ea) & set(eb):
                        continue
                    for sa in axis_segments(paths[ea]):
                        for sb in axis_segments(paths[eb]):
                            assert not segs_intersect(sa, sb), (ea, eb)


class TestPlanarityCheck:
    def test_triangle_passes(self):
        g = Graph(3, {(0, 1), (0, 2), (1, 2)})
        assert hereditary_planarity_check(g, 50, seed=1).passed

    def test_k5_fails(self):
        g = Graph(5, set(itertools.combinations(range(5), 2)))
        rep = hereditary_planarity_check(g, 0, seed=1)
        assert not rep.passed and rep.violations == 1

    def test_sample_count(self):
        g = Graph(4, set())
        rep = hereditary_planarity_check(g, 25, seed=3)
        assert rep.samples_checked == 26  # full graph + samples


class TestBoundReport:
    def test_empty_b(self):
        rep = rectangle_bound_report([AxisRect(0, 1, 0, 1)], [], 2, assume_ktt_free=True)
        assert rep.crossing_edges == 0 and rep.x_sum == 0 and rep.family_size >= 0

    def test_single_cross_pair(self):
        rep = rectangle_bound_report(
            [AxisRect(0, 3, 1, 2)], [AxisRect(1, 2, 0, 3)], 2, assume_ktt_free=True
        )
        assert rep.per_vertex_lower_ok
        assert all(d == 2 for d in rep.degrees)
        assert all(x == 0 for x in rep.x_counts)

    def test_chains_on_pruned_instances(self):
        for seed in range(5):
            a, b = rect_families(40, seed)
            g = BipartiteIntersectionGraph.from_families(a, b)
            res = prune_to_ktt_free(g, 2)
            rep = rectangle_bound_report(res.graph.side_a, res.graph.side_b, 2)
            assert rep.x_sum <= rep.x_upper
            assert rep.per_vertex_lower_ok
            assert rep.crossing_edges == sum(rep.degrees)

    def test_non_free_input_rejected(self):
        a = [AxisRect(0, 10, 1, 2), AxisRect(0.5, 9, 2.5, 3.5)]
        b = [AxisRect(1, 2.25, 0, 5), AxisRect(3, 4, 0.25, 4.75)]
        with pytest.raises(PreconditionViolated):
            rectangle_bound_report(a, b, 2)
