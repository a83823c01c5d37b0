"""Epsilon-net and epsilon-t-net construction and verification.

An epsilon-net stabs every hyperedge of size >= eps * (vertex count); an
epsilon-t-net is a family of t-subsets such that every such heavy hyperedge
fully contains at least one of them.

Epsilon is handled as an exact fraction throughout.  Float inputs are
converted through their shortest decimal representation, so eps=0.1 means
exactly 1/10 and a hyperedge of size 20 is heavy at eps=0.1, n=200.  All
heavy/light cutoffs across the package go through `heavy_threshold`.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .errors import BudgetExceeded, InfeasibleNet, PreconditionViolated
from .hypergraph import Hypergraph, bits_of, induced_subhypergraph, mask_of

EpsilonLike = Union[Fraction, float, int, str]

DEFAULT_SEARCH_BUDGET = 2**22


def as_fraction(eps: EpsilonLike) -> Fraction:
    """Exact fraction for an epsilon value; floats go via their decimal repr."""
    if isinstance(eps, Fraction):
        return eps
    if isinstance(eps, float):
        return Fraction(repr(eps))
    return Fraction(eps)


def heavy_threshold(eps: EpsilonLike, vertex_count: int) -> int:
    """Smallest integer size counted as heavy: ceil(eps * n), at least 1."""
    e = as_fraction(eps)
    if not 0 < e <= 1:
        raise ValueError(f"epsilon must be in (0, 1], got {e}")
    return max(1, math.ceil(e * vertex_count))


def heavy_dedup_edges(h: Hypergraph, eps: EpsilonLike) -> list[frozenset[int]]:
    """Distinct hyperedges of size >= eps * n, in first-occurrence order."""
    thr = heavy_threshold(eps, h.vertex_count)
    return [e for e in h.dedup_view() if len(e) >= thr]


@dataclass
class TNet:
    """A set of t-subsets of vertex indices, built for a given epsilon."""

    t: int
    tuples: frozenset[frozenset[int]]
    epsilon: Fraction

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("t must be >= 1")
        for tp in self.tuples:
            if len(tp) != self.t:
                raise ValueError(f"net tuple {sorted(tp)} does not have size {self.t}")

    def size(self) -> int:
        return len(self.tuples)


@dataclass
class NetBuildTrace:
    """Intermediate state of the two-stage net construction.

    `cover_set` is the union of the pairwise-disjoint `layer_nets`.  The
    removal fields stay empty until the vertex-removal stage runs; then
    `per_step_tuple_counts[i]` is the number of distinct size-t traces
    containing the vertex removed at step i.
    """

    cover_set: frozenset[int]
    layer_nets: list[frozenset[int]]
    removal_order: list[int] = field(default_factory=list)
    per_step_tuple_counts: list[int] = field(default_factory=list)


# ---------------------------------------------------------------------------
# verification


def verify_epsilon_net(h: Hypergraph, eps: EpsilonLike, s) -> Optional[frozenset[int]]:
    """None if `s` stabs every heavy hyperedge, else one missed heavy hyperedge."""
    s = frozenset(s)
    if s and (min(s) < 0 or max(s) >= h.vertex_count):
        raise ValueError("net contains out-of-range vertex indices")
    thr = heavy_threshold(eps, h.vertex_count)
    s_mask = mask_of(s)
    seen = set()
    for e, em in zip(h.hyperedges, h.edge_masks):
        if len(e) >= thr and em not in seen:
            seen.add(em)
            if em & s_mask == 0:
                return e
    return None


def verify_t_net(h: Hypergraph, eps: EpsilonLike, net: TNet) -> Optional[frozenset[int]]:
    """None if every heavy hyperedge contains some net tuple, else one witness.

    Hyperedges with identical traces share coverage status, so the check runs
    on the dedup view.
    """
    tuple_masks = []
    for tp in net.tuples:
        if min(tp) < 0 or max(tp) >= h.vertex_count:
            raise ValueError(f"net tuple {sorted(tp)} out of vertex range")
        tuple_masks.append(mask_of(tp))
    thr = heavy_threshold(eps, h.vertex_count)
    for e in h.dedup_view():
        if len(e) < thr:
            continue
        em = mask_of(e)
        if not any(tm & em == tm for tm in tuple_masks):
            return e
    return None


# ---------------------------------------------------------------------------
# sampled epsilon-nets and the stacked cover set


def sampled_epsilon_net(h: Hypergraph, eps: EpsilonLike, seed: int) -> frozenset[int]:
    """Verify-and-retry random epsilon-net.

    Sample size starts at ceil((8/eps) ln(4/eps)) + 8, doubles on each
    verification failure, and is capped at the vertex count (the full vertex
    set stabs every nonempty hyperedge).
    """
    e = as_fraction(eps)
    if not 0 < e <= 1:
        raise ValueError(f"epsilon must be in (0, 1], got {e}")
    n = h.vertex_count
    if n == 0:
        raise PreconditionViolated("sampled_epsilon_net needs a nonempty vertex set")
    ef = float(e)
    size = min(n, math.ceil((8.0 / ef) * math.log(4.0 / ef)) + 8)
    rng = random.Random(seed)
    while True:
        if size >= n:
            return frozenset(range(n))
        candidate = frozenset(rng.sample(range(n), size))
        if verify_epsilon_net(h, e, candidate) is None:
            return candidate
        size = min(2 * size, n)


def stacked_cover_set(h: Hypergraph, eps: EpsilonLike, t: int, seed: int) -> NetBuildTrace:
    """Layered cover set: every heavy hyperedge contains >= t of its vertices.

    The first layer is an eps-net of the hypergraph; each later layer is an
    (eps/2)-net of the hypergraph induced on the vertices not yet used.
    Requires eps * n >= 2t, which makes a heavy hyperedge, minus up to t-1
    already-covered vertices, still heavy at eps/2 in every later layer.
    """
    e = as_fraction(eps)
    if t < 1:
        raise ValueError("t must be >= 1")
    n = h.vertex_count
    if e * n < 2 * t:
        raise PreconditionViolated(
            f"stacked cover needs eps*n >= 2t; got {e} * {n} < {2 * t}"
        )
    rng = random.Random(seed)
    remaining = set(range(n))
    layers: list[frozenset[int]] = []
    for i in range(t):
        layer_eps = e if i == 0 else e / 2
        if not remaining:
            layers.append(frozenset())
            continue
        kept = sorted(remaining)
        sub = induced_subhypergraph(h, kept)
        sub_net = sampled_epsilon_net(sub, layer_eps, rng.randrange(2**32))
        layer = frozenset(kept[v] for v in sub_net)
        layers.append(layer)
        remaining -= layer
    cover = frozenset().union(*layers) if layers else frozenset()
    return NetBuildTrace(cover_set=cover, layer_nets=layers)


def pseudodisc_t_net(
    h: Hypergraph, eps: EpsilonLike, t: int, seed: int
) -> tuple[TNet, NetBuildTrace]:
    """Structural epsilon-t-net: stacked cover set, then greedy vertex removal.

    On the heavy hyperedges' traces over the cover set, repeatedly pick the
    vertex contained in the fewest distinct size-exactly-t traces (tie-break:
    lowest index), add every size-t trace containing it to the net, and
    delete it.  Every heavy hyperedge keeps >= t cover vertices until some
    step reduces its trace from size t to t-1, and at that step the trace
    enters the net, so the output is valid regardless of the selection order.
    Light hyperedges need no coverage and contribute no tuples; with no heavy
    hyperedge at all the net is empty.
    """
    e = as_fraction(eps)
    trace = stacked_cover_set(h, e, t, seed)
    remaining = sorted(trace.cover_set)
    remaining_mask = mask_of(remaining)
    thr = heavy_threshold(e, h.vertex_count)
    source_masks = [
        em for edge, em in zip(h.hyperedges, h.edge_masks) if len(edge) >= thr
    ]
    net_tuples: set[frozenset[int]] = set()
    while remaining:
        size_t_traces = set()
        for em in source_masks:
            tm = em & remaining_mask
            if tm and tm.bit_count() == t:
                size_t_traces.add(tm)
        counts = {v: 0 for v in remaining}
        for tm in size_t_traces:
            for v in bits_of(tm):
                counts[v] += 1
        chosen = min(remaining, key=lambda v: (counts[v], v))
        added = [tm for tm in size_t_traces if (tm >> chosen) & 1]
        for tm in added:
            net_tuples.add(frozenset(bits_of(tm)))
        trace.removal_order.append(chosen)
        trace.per_step_tuple_counts.append(len(added))
        remaining.remove(chosen)
        remaining_mask &= ~(1 << chosen)
    net = TNet(t=t, tuples=frozenset(net_tuples), epsilon=e)
    return net, trace


# ---------------------------------------------------------------------------
# greedy cover and the exhaustive minimum oracle


def _candidate_tuples(heavy: list[frozenset[int]], t: int) -> list[tuple[int, ...]]:
    """Sorted distinct t-subsets of the heavy hyperedges, lexicographic order."""
    for e in heavy:
        if len(e) < t:
            raise InfeasibleNet(
                f"heavy hyperedge {sorted(e)} has fewer than t={t} vertices; "
                "no valid net exists"
            )
    seen = set()
    for e in heavy:
        seen.update(itertools.combinations(sorted(e), t))
    return sorted(seen)


def greedy_cover_t_net(h: Hypergraph, eps: EpsilonLike, t: int) -> TNet:
    """Greedy set cover over candidate t-subsets of the heavy hyperedges.

    While some heavy hyperedge is uncovered, add the candidate contained in
    the most uncovered heavy hyperedges (tie-break: lexicographically
    smallest).  A candidate covers an edge iff it is a subset of it.
    """
    e = as_fraction(eps)
    if t < 1:
        raise ValueError("t must be >= 1")
    heavy = heavy_dedup_edges(h, e)
    if not heavy:
        return TNet(t=t, tuples=frozenset(), epsilon=e)
    cands = _candidate_tuples(heavy, t)
    cand_index = {c: k for k, c in enumerate(cands)}
    inc = np.zeros((len(cands), len(heavy)), dtype=bool)
    for j, edge in enumerate(heavy):
        for c in itertools.combinations(sorted(edge), t):
            inc[cand_index[c], j] = True
    uncovered = np.ones(len(heavy), dtype=bool)
    chosen: list[tuple[int, ...]] = []
    while uncovered.any():
        cov = (inc & uncovered[None, :]).sum(axis=1)
        best = int(np.argmax(cov))
        if cov[best] == 0:  # cannot happen: every uncovered edge has candidates
            raise AssertionError("greedy cover stalled")
        chosen.append(cands[best])
        uncovered &= ~inc[best]
    return TNet(t=t, tuples=frozenset(frozenset(c) for c in chosen), epsilon=e)


def min_t_net_bruteforce(
    h: Hypergraph, eps: EpsilonLike, t: int, budget: int = DEFAULT_SEARCH_BUDGET
) -> TNet:
    """Minimum-cardinality valid epsilon-t-net by increasing-size exhaustive search.

    Only candidate tuples (t-subsets of heavy hyperedges) can appear in a
    minimal net.  Raises BudgetExceeded when more than `budget` candidate
    combinations would have to be examined.
    """
    e = as_fraction(eps)
    if t < 1:
        raise ValueError("t must be >= 1")
    heavy = heavy_dedup_edges(h, e)
    if not heavy:
        return TNet(t=t, tuples=frozenset(), epsilon=e)
    cands = _candidate_tuples(heavy, t)
    full = (1 << len(heavy)) - 1
    cover_masks = []
    for c in cands:
        cs = set(c)
        cover_masks.append(mask_of(j for j, edge in enumerate(heavy) if cs <= edge))
    examined = 0
    for k in range(1, len(cands) + 1):
        for combo in itertools.combinations(range(len(cands)), k):
            examined += 1
            if examined > budget:
                raise BudgetExceeded(
                    f"exhausted search budget {budget} at net size {k}"
                )
            acc = 0
            for ci in combo:
                acc |= cover_masks[ci]
            if acc == full:
                return TNet(
                    t=t,
                    tuples=frozenset(frozenset(cands[ci]) for ci in combo),
                    epsilon=e,
                )
    raise AssertionError("unreachable: the full candidate set is always a cover")
