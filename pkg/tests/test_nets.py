import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ztnet.errors import BudgetExceeded, InfeasibleNet, PreconditionViolated
from ztnet.generators import GenParams, generate
from ztnet.hypergraph import BipartiteIntersectionGraph, Hypergraph, primal_hypergraph
from ztnet.nets import (
    TNet,
    as_fraction,
    greedy_cover_t_net,
    heavy_dedup_edges,
    heavy_threshold,
    min_t_net_bruteforce,
    pseudodisc_t_net,
    sampled_epsilon_net,
    stacked_cover_set,
    verify_epsilon_net,
    verify_t_net,
)


def fs(*xs):
    return frozenset(xs)


def disc_hypergraph(n: int, seed: int, radius=(0.05, 0.12)) -> Hypergraph:
    fam_a = generate("random_discs", n, GenParams(radius_lo=radius[0], radius_hi=radius[1]), 2 * seed)
    fam_b = generate("random_discs", n, GenParams(radius_lo=radius[0], radius_hi=radius[1]), 2 * seed + 1)
    return primal_hypergraph(BipartiteIntersectionGraph.from_families(fam_a, fam_b))


@st.composite
def hypergraphs(draw):
    n = draw(st.integers(2, 10))
    n_edges = draw(st.integers(1, 6))
    edges = [
        frozenset(draw(st.sets(st.integers(0, n - 1), max_size=n))) for _ in range(n_edges)
    ]
    return Hypergraph(n, edges)


class TestFractions:
    def test_decimal_floats_are_exact(self):
        assert as_fraction(0.1) == Fraction(1, 10)
        assert as_fraction("0.25") == Fraction(1, 4)
        assert as_fraction(Fraction(3, 7)) == Fraction(3, 7)
        assert heavy_threshold(0.1, 200) == 20
        assert heavy_threshold(Fraction(1, 3), 10) == 4
        assert heavy_threshold(1, 7) == 7

    def test_range_validation(self):
        with pytest.raises(ValueError):
            heavy_threshold(0, 10)
        with pytest.raises(ValueError):
            heavy_threshold(1.5, 10)


class TestVerifiers:
    def test_epsilon_net_examples(self):
        h = Hypergraph(2, [fs(0, 1)])
        assert verify_epsilon_net(h, 0.5, {0}) is None
        assert verify_epsilon_net(h, 0.5, set()) == fs(0, 1)
        h2 = Hypergraph(5, [fs(0, 1), fs(2, 3, 4)])
        assert verify_epsilon_net(h2, 1, set(range(5))) is None

    def test_t_net_examples(self):
        h = Hypergraph(3, [fs(0, 1, 2)])
        good = TNet(2, frozenset({fs(0, 1)}), Fraction(1))
        assert verify_t_net(h, 1, good) is None
        with pytest.raises(ValueError):
            verify_t_net(h, 1, TNet(2, frozenset({fs(0, 4)}), Fraction(1)))
        h4 = Hypergraph(4, [fs(0, 1, 2)])
        miss = TNet(2, frozenset({fs(0, 3)}), Fraction(3, 4))
        assert verify_t_net(h4, 0.75, miss) == fs(0, 1, 2)

    def test_tuple_size_validated(self):
        with pytest.raises(ValueError):
            TNet(2, frozenset({fs(0, 1, 2)}), Fraction(1, 2))


class TestSampledNet:
    def test_forced_and_vacuous(self):
        h = Hypergraph(4, [fs(0, 1, 2, 3)])
        net = sampled_epsilon_net(h, 1, seed=0)
        assert net & fs(0, 1, 2, 3)
        h2 = Hypergraph(10, [fs(0)])
        assert verify_epsilon_net(h2, 0.5, sampled_epsilon_net(h2, 0.5, seed=1)) is None

    def test_verifier_accepts_on_seeded_runs(self):
        h = disc_hypergraph(100, seed=5)
        for seed in range(50):
            net = sampled_epsilon_net(h, 0.2, seed)
            assert verify_epsilon_net(h, 0.2, net) is None

    def test_sampling_path_below_cap(self):
        # at eps=0.9 the initial sample is far below the vertex count
        h = disc_hypergraph(600, seed=9, radius=(0.02, 0.05))
        net = sampled_epsilon_net(h, 0.9, seed=3)
        assert len(net) < 600
        assert verify_epsilon_net(h, 0.9, net) is None

    def test_empty_hypergraph_rejected(self):
        with pytest.raises(PreconditionViolated):
            sampled_epsilon_net(Hypergraph(0, []), 0.5, 0)


class TestStackedCover:
    def test_t1_degenerates_to_epsilon_net(self):
        h = disc_hypergraph(60, seed=2)
        trace = stacked_cover_set(h, 0.5, 1, seed=4)
        assert trace.layer_nets[0] == trace.cover_set
        assert verify_epsilon_net(h, 0.5, trace.cover_set) is None

    def test_forced_depth(self):
        h = Hypergraph(10, [frozenset(range(10))])
        trace = stacked_cover_set(h, 1, 3, seed=0)
        assert len(trace.cover_set & frozenset(range(10))) >= 3

    def test_precondition(self):
        h = Hypergraph(10, [frozenset(range(10))])
        with pytest.raises(PreconditionViolated):
            stacked_cover_set(h, 0.1, 3, seed=0)

    def test_layers_disjoint_and_cover(self):
        h = disc_hypergraph(300, seed=7, radius=(0.03, 0.08))
        trace = stacked_cover_set(h, 0.5, 3, seed=11)
        union = set()
        for layer in trace.layer_nets:
            assert not (union & layer)
            union |= layer
        assert frozenset(union) == trace.cover_set

    def test_exhaustive_depth_on_seeded_instances(self):
        for seed in range(10):
            h = disc_hypergraph(200, seed=seed)
            trace = stacked_cover_set(h, 0.1, 3, seed=seed)
            thr = heavy_threshold(0.1, h.vertex_count)
            for e in h.dedup_view():
                if len(e) >= thr:
                    assert len(e & trace.cover_set) >= 3

    def test_depth_on_abstract_hypergraphs(self):
        # the layering argument never uses geometry
        rng = random.Random(21)
        for _ in range(40):
            t = rng.choice((2, 3))
            n = rng.randint(4 * t, 30)
            edges = [
                frozenset(v for v in range(n) if rng.random() < rng.uniform(0.3, 0.9))
                for _ in range(rng.randint(1, 8))
            ]
            h = Hypergraph(n, edges)
            trace = stacked_cover_set(h, Fraction(1, 2), t, seed=rng.randrange(10**6))
            thr = heavy_threshold(Fraction(1, 2), n)
            for e in h.dedup_view():
                if len(e) >= thr:
                    assert len(e & trace.cover_set) >= t


class TestPseudodiscNet:
    def test_all_light_gives_empty_net(self):
        h = Hypergraph(20, [fs(0, 1)])
        net, _ = pseudodisc_t_net(h, 0.5, 2, seed=0)
        assert net.tuples == frozenset()
        assert verify_t_net(h, 0.5, net) is None

    def test_forced(self):
        h = Hypergraph(4, [fs(0, 1, 2, 3)])
        net, trace = pseudodisc_t_net(h, 1, 2, seed=0)
        assert all(tp <= fs(0, 1, 2, 3) for tp in net.tuples)
        assert verify_t_net(h, 1, net) is None
        assert sorted(trace.removal_order) == [0, 1, 2, 3]
        assert len(trace.per_step_tuple_counts) == len(trace.removal_order)

    def test_sound_on_abstract_hypergraphs(self):
        rng = random.Random(0)
        for _ in range(60):
            n = rng.randint(8, 16)
            edges = [
                frozenset(v for v in range(n) if rng.random() < 0.5)
                for _ in range(rng.randint(2, 7))
            ]
            h = Hypergraph(n, edges)
            t = rng.choice((2, 3))
            if Fraction(1, 2) * n < 2 * t:
                continue
            net, _ = pseudodisc_t_net(h, Fraction(1, 2), t, seed=rng.randrange(999))
            assert verify_t_net(h, Fraction(1, 2), net) is None

    def test_near_oracle_on_tiny_instances(self):
        for seed in range(12):
            h = disc_hypergraph(12, seed=seed, radius=(0.15, 0.4))
            eps = Fraction(1, 2)
            heavy = heavy_dedup_edges(h, eps)
            if not heavy or any(len(e) < 2 for e in heavy):
                continue
            net, _ = pseudodisc_t_net(h, eps, 2, seed=seed)
            oracle = min_t_net_bruteforce(h, eps, 2)
            assert verify_t_net(h, eps, net) is None
            assert net.size() >= oracle.size()
            assert net.size() <= oracle.size() * 10 + 8


class TestGreedy:
    def test_examples(self):
        assert greedy_cover_t_net(Hypergraph(3, [fs(0)]), 1, 2).tuples == frozenset()
        h = Hypergraph(3, [fs(0, 1), fs(0, 1, 2)])
        net = greedy_cover_t_net(h, Fraction(2, 3), 2)
        assert net.tuples == frozenset({fs(0, 1)})

    def test_infeasible(self):
        h = Hypergraph(4, [fs(0)])
        with pytest.raises(InfeasibleNet):
            greedy_cover_t_net(h, Fraction(1, 4), 2)

    def test_classic_approximation_bound(self):
        rng = random.Random(5)
        for _ in range(40):
            edges = [
                frozenset(v for v in range(12) if rng.random() < 0.5)
                for _ in range(rng.randint(2, 6))
            ]
            h = Hypergraph(12, edges)
            t = 2
            heavy = heavy_dedup_edges(h, Fraction(1, 3))
            if not heavy or any(len(e) < t for e in heavy):
                continue
            greedy = greedy_cover_t_net(h, Fraction(1, 3), t)
            oracle = min_t_net_bruteforce(h, Fraction(1, 3), t)
            assert verify_t_net(h, Fraction(1, 3), greedy) is None
            assert oracle.size() <= greedy.size()
            assert greedy.size() <= math.ceil(oracle.size() * (math.log(len(heavy)) + 1))


class TestSizeScaling:
    def test_tuple_count_bounded_across_doubling(self):
        # desk-scale shadow of the O(t^5 / eps) size bound: at fixed eps the
        # tuple count must not keep pace with n as it doubles 128 -> 1024
        eps = Fraction(1, 10)
        for t in (2, 3):
            per_size = []
            for n in (128, 256, 512, 1024):
                sizes = []
                for seed in range(2):
                    h = disc_hypergraph(n, seed=50 + seed, radius=(0.05, 0.13))
                    net, _ = pseudodisc_t_net(h, eps, t, seed)
                    assert verify_t_net(h, eps, net) is None
                    sizes.append(net.size())
                per_size.append(sum(sizes) / len(sizes))
            assert max(per_size) <= 4 * per_size[0] + 8, per_size


class TestBruteforce:
    def test_examples(self):
        assert min_t_net_bruteforce(Hypergraph(3, [fs(0)]), 1, 2).size() == 0
        two = min_t_net_bruteforce(Hypergraph(4, [fs(0, 1), fs(2, 3)]), 0.5, 1)
        assert two.size() == 2
        one = min_t_net_bruteforce(Hypergraph(4, [fs(0, 1, 2), fs(1, 2, 3)]), 0.75, 2)
        assert one.size() == 1 and one.tuples == frozenset({fs(1, 2)})

    def test_budget(self):
        edges = [frozenset({i, j, (i + j) % 9}) for i in range(9) for j in range(i + 1, 9)]
        h = Hypergraph(9, edges)
        with pytest.raises(BudgetExceeded):
            min_t_net_bruteforce(h, Fraction(1, 9), 2, budget=5)

    @settings(max_examples=60, deadline=None)
    @given(hypergraphs(), st.integers(1, 3))
    def test_valid_and_minimal(self, h, t):
        eps = Fraction(1, 2)
        heavy = heavy_dedup_edges(h, eps)
        if any(len(e) < t for e in heavy):
            with pytest.raises(InfeasibleNet):
                min_t_net_bruteforce(h, eps, t)
            return
        net = min_t_net_bruteforce(h, eps, t)
        assert verify_t_net(h, eps, net) is None
        cands = sorted({c for e in heavy for c in itertools.combinations(sorted(e), t)})
        if net.size() and math.comb(len(cands), net.size() - 1) < 3000:
            for combo in itertools.combinations(cands, net.size() - 1):
                smaller = TNet(t, frozenset(frozenset(c) for c in combo), eps)
                assert verify_t_net(h, eps, smaller) is not None
