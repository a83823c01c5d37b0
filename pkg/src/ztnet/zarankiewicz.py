"""Biclique detection and the recursive edge-count bound for K_{t,t}-free graphs.

The bound algorithm partitions each side into heavy vertices (degree at least
eps times the opposite side) and light ones, charges every edge with a light
endpoint to the additive term n*floor(eps*m) + m*floor(eps'*n), and recurses
on the heavy-by-heavy subgraph.  The additive term is a valid upper bound for
the light contribution regardless of any freeness or net assumption, so the
final bound dominates |E| unconditionally; nets are built per level to report
the sizes that drive the heavy-set analysis.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import BudgetExceeded, InvalidNet
from .hypergraph import (
    BipartiteIntersectionGraph,
    dual_hypergraph,
    mask_of,
    primal_hypergraph,
)
from .nets import EpsilonLike, TNet, as_fraction, greedy_cover_t_net, verify_t_net

DEFAULT_ENUM_BUDGET = 2**22

BUDGET_ENV_VAR = "ZTNET_BUDGET"


def resolve_budget(explicit: Optional[int] = None) -> int:
    """Explicit budget, else the ZTNET_BUDGET env var, else the default."""
    if explicit is not None:
        return explicit
    env = os.environ.get(BUDGET_ENV_VAR)
    if env is not None:
        return int(env)
    return DEFAULT_ENUM_BUDGET


# ---------------------------------------------------------------------------
# K_{t,t} detection


def find_ktt_witness(
    g: BipartiteIntersectionGraph, t: int, budget: Optional[int] = None
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """First complete t-by-t biclique, or None if the graph is K_{t,t}-free.

    Enumerates t-subsets of the smaller side (ties prefer A) in lexicographic
    order and intersects neighborhoods; the witness partner is the first t
    vertices of the common neighborhood.  Raises BudgetExceeded when the
    enumeration would need more than `budget` subsets.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    m, n = g.m, g.n
    if min(m, n) < t:
        return None
    budget = resolve_budget(budget)
    scan_a = m <= n
    count = m if scan_a else n
    if math.comb(count, t) > budget:
        raise BudgetExceeded(
            f"C({count}, {t}) subsets exceed the enumeration budget {budget}"
        )
    nbrs = g.neighborhoods_of_a() if scan_a else g.neighborhoods_of_b()
    masks = [mask_of(s) for s in nbrs]
    for combo in itertools.combinations(range(count), t):
        common = masks[combo[0]]
        for v in combo[1:]:
            common &= masks[v]
            if not common:
                break
        if common.bit_count() >= t:
            partner = []
            for b in range(common.bit_length()):
                if (common >> b) & 1:
                    partner.append(b)
                    if len(partner) == t:
                        break
            if scan_a:
                return combo, tuple(partner)
            return tuple(partner), combo
    return None


def is_ktt_free(g: BipartiteIntersectionGraph, t: int, budget: Optional[int] = None) -> bool:
    return find_ktt_witness(g, t, budget) is None


# ---------------------------------------------------------------------------
# heavy/light partitioning


@dataclass
class HeavyLightPartition:
    epsilon: Fraction
    epsilon_prime: Fraction
    heavy_a: frozenset[int]
    heavy_b: frozenset[int]
    threshold_a: int  # ceil(eps' * n): minimal heavy degree on side A
    threshold_b: int  # ceil(eps * m): minimal heavy degree on side B


def heavy_light_partition(
    g: BipartiteIntersectionGraph, eps: EpsilonLike, eps_prime: EpsilonLike
) -> HeavyLightPartition:
    """Exact threshold partition: a in A' iff deg(a) >= eps' * n, b in B' iff deg(b) >= eps * m."""
    e = as_fraction(eps)
    ep = as_fraction(eps_prime)
    for val in (e, ep):
        if not 0 < val <= 1:
            raise ValueError(f"epsilon must be in (0, 1], got {val}")
    thr_a = math.ceil(ep * g.n)
    thr_b = math.ceil(e * g.m)
    deg_a = g.degrees_a()
    deg_b = g.degrees_b()
    return HeavyLightPartition(
        epsilon=e,
        epsilon_prime=ep,
        heavy_a=frozenset(v for v in range(g.m) if deg_a[v] >= thr_a),
        heavy_b=frozenset(w for w in range(g.n) if deg_b[w] >= thr_b),
        threshold_a=thr_a,
        threshold_b=thr_b,
    )


@dataclass
class HeavyCountReport:
    side: str
    heavy_count: int
    bound: int
    net_size: int
    passed: bool


def heavy_count_check(
    g: BipartiteIntersectionGraph, t: int, net: TNet, side: str
) -> HeavyCountReport:
    """Check heavy-vertex count <= (t-1) * |net| on the chosen side.

    side "B": `net` must be a valid eps-t-net of the primal hypergraph; the
    heavy vertices are the b in B with deg(b) >= eps * m.  side "A" is the
    mirror statement through the dual hypergraph.  The inequality must hold
    whenever the graph is K_{t,t}-free and the net verifies.
    """
    if side not in ("A", "B"):
        raise ValueError("side must be 'A' or 'B'")
    if side == "B":
        h = primal_hypergraph(g)
        witness = verify_t_net(h, net.epsilon, net)
        if witness is not None:
            raise InvalidNet(f"net misses heavy hyperedge {sorted(witness)}")
        thr = math.ceil(net.epsilon * g.m)
        heavy = sum(1 for d in g.degrees_b() if d >= thr)
    else:
        h = dual_hypergraph(g)
        witness = verify_t_net(h, net.epsilon, net)
        if witness is not None:
            raise InvalidNet(f"net misses heavy hyperedge {sorted(witness)}")
        thr = math.ceil(net.epsilon * g.n)
        heavy = sum(1 for d in g.degrees_a() if d >= thr)
    bound = (t - 1) * net.size()
    return HeavyCountReport(
        side=side, heavy_count=heavy, bound=bound, net_size=net.size(), passed=heavy <= bound
    )


# ---------------------------------------------------------------------------
# the recursive bound algorithm


NetBuilder = Callable[..., TNet]
EpsRule = Callable[[int, int, int], tuple[Fraction, Fraction]]


def greedy_net_builder(h, eps, t, seed) -> TNet:
    return greedy_cover_t_net(h, eps, t)


def pseudodisc_net_builder(h, eps, t, seed) -> TNet:
    from .nets import pseudodisc_t_net

    net, _ = pseudodisc_t_net(h, eps, t, seed)
    return net


NET_BUILDERS: dict[str, NetBuilder] = {
    "greedy": greedy_net_builder,
    "pseudodisc": pseudodisc_net_builder,
}


def degree_cutoff_rule(chat: int = 1) -> EpsRule:
    """Heavy-degree cutoff 2 * chat * t^6 on both sides, clamped to eps <= 1."""

    def rule(m: int, n: int, t: int) -> tuple[Fraction, Fraction]:
        cut = 2 * chat * t**6
        eps = min(Fraction(1), Fraction(cut, m))
        eps_prime = min(Fraction(1), Fraction(cut, n))
        return eps, eps_prime

    return rule


def bounded_vc_rule(d: int, d_star: int, t: int, c1: float = 1.0) -> EpsRule:
    """Epsilon choice c1^(1/d*) (t-1) / m^(1/d*) from the bounded-VC argument.

    c1 is not pinned by any computation here; it defaults to 1 and is exposed
    as a knob.  The produced bound is a report, not a guarantee.
    """

    def rule(m: int, n: int, t_: int) -> tuple[Fraction, Fraction]:
        def eps_for(count: int) -> Fraction:
            raw = (c1 ** (1.0 / d_star)) * (t_ - 1) / (count ** (1.0 / d_star))
            frac = Fraction(repr(raw)).limit_denominator(10**9)
            return min(Fraction(1), max(frac, Fraction(1, max(count, 1))))

        return eps_for(m), eps_for(n)

    return rule


@dataclass
class BoundLevel:
    level: int
    m: int
    n: int
    eps: Optional[Fraction]
    eps_prime: Optional[Fraction]
    s: Optional[int]
    s_prime: Optional[int]
    heavy_a: int
    heavy_b: int
    additive: int  # this level's contribution to the bound
    kind: str  # "recurse" | "base-light" | "base-trivial"


@dataclass
class BoundReport:
    levels: list[BoundLevel]
    bound: int
    actual_edges: int

    @property
    def level_count(self) -> int:
        return len(self.levels)

    CSV_COLUMNS = (
        "level",
        "m",
        "n",
        "eps",
        "eps_prime",
        "s",
        "s_prime",
        "heavy_a",
        "heavy_b",
        "additive",
        "bound",
        "edges",
    )

    def csv_rows(self) -> list[list[str]]:
        rows = []
        for lv in self.levels:
            rows.append(
                [
                    str(lv.level),
                    str(lv.m),
                    str(lv.n),
                    "" if lv.eps is None else str(lv.eps),
                    "" if lv.eps_prime is None else str(lv.eps_prime),
                    "" if lv.s is None else str(lv.s),
                    "" if lv.s_prime is None else str(lv.s_prime),
                    str(lv.heavy_a),
                    str(lv.heavy_b),
                    str(lv.additive),
                    str(self.bound),
                    str(self.actual_edges),
                ]
            )
        return rows


def num_edges_bound(
    g: BipartiteIntersectionGraph,
    t: int,
    net_builder: NetBuilder = greedy_net_builder,
    eps_rule: Optional[EpsRule] = None,
    seed: int = 0,
) -> BoundReport:
    """Recursive upper bound on |E| with per-level net size reporting.

    Per level: choose (eps, eps'), partition into heavy/light, add the light
    contribution n*floor(eps*m) + m*floor(eps'*n), and recurse on the
    heavy-by-heavy subgraph.  Base cases: an empty side contributes 0; a side
    smaller than t, or a heavy product that fails to shrink, contributes the
    trivial m*n (no nets are built there).  On recursing levels and on the
    final heavy-empty level the primal and dual nets are built and verified,
    and their sizes recorded.

    The epsilon choice is free, so a rule output below t/m (resp. t/n) is
    raised to it: below that cutoff a heavy hyperedge could have fewer than t
    vertices and no valid net would exist, while a larger epsilon only grows
    the already-valid additive term.

    The caller is responsible for the K_{t,t}-freeness of `g`; the returned
    bound dominates |E| regardless, but the net-size analysis is only
    meaningful on free graphs.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    rule = eps_rule if eps_rule is not None else degree_cutoff_rule()
    levels: list[BoundLevel] = []
    total = 0
    current = g
    level = 0
    while True:
        m, n = current.m, current.n
        if m == 0 or n == 0:
            break
        if m < t or n < t:
            levels.append(
                BoundLevel(level, m, n, None, None, None, None, 0, 0, m * n, "base-trivial")
            )
            total += m * n
            break
        eps, eps_prime = rule(m, n, t)
        eps = max(eps, Fraction(t, m))
        eps_prime = max(eps_prime, Fraction(t, n))
        part = heavy_light_partition(current, eps, eps_prime)
        na, nb = len(part.heavy_a), len(part.heavy_b)
        if na * nb >= m * n:
            levels.append(
                BoundLevel(
                    level, m, n, eps, eps_prime, None, None, na, nb, m * n, "base-trivial"
                )
            )
            total += m * n
            break
        h = primal_hypergraph(current)
        h_dual = dual_hypergraph(current)
        net = net_builder(h, eps, t, seed * 7919 + 2 * level)
        net_dual = net_builder(h_dual, eps_prime, t, seed * 7919 + 2 * level + 1)
        for hh, ee, nn in ((h, eps, net), (h_dual, eps_prime, net_dual)):
            witness = verify_t_net(hh, ee, nn)
            if witness is not None:
                raise InvalidNet(f"level {level} net misses hyperedge {sorted(witness)}")
        additive = n * math.floor(eps * m) + m * math.floor(eps_prime * n)
        kind = "recurse" if (na and nb) else "base-light"
        levels.append(
            BoundLevel(
                level, m, n, eps, eps_prime, net.size(), net_dual.size(), na, nb, additive, kind
            )
        )
        total += additive
        if not (na and nb):
            break
        current = current.induced(part.heavy_a, part.heavy_b)
        level += 1
    return BoundReport(levels=levels, bound=total, actual_edges=len(g.edges))


# ---------------------------------------------------------------------------
# closed-form recursion of the net-size bound


@dataclass
class RecursiveBoundSpec:
    """Net-size bounds driving the recursion.

    f(m, k) bounds the minimum (k/m)-t-net of the primal hypergraph over all
    instances with |A| = m; f_star(n, l) is the dual statement.  base_rule
    decides when to stop: given (m, n, m_next, n_next) return True to fall
    back to the trivial m*n bound.  The default stops as soon as either
    argument fails to decrease strictly.
    """

    f: Callable[[int, int], float]
    f_star: Callable[[int, int], float]
    base_rule: Optional[Callable[[float, float, float, float], bool]] = None


def recursive_bound(m: int, n: int, t: int, spec: RecursiveBoundSpec, k: int, ell: int):
    """One (k, ell) evaluation of the recursive bound.

    Value: (k-1) n + (ell-1) m + g(m', n') with m' = (t-1) f(m, k) and
    n' = (t-1) f_star(n, ell), where g recurses with the same (k, ell), stops
    per the base rule, and never exceeds the trivial m*n.
    """
    if not (1 <= k <= m - 1):
        raise ValueError(f"need 1 <= k <= m-1, got k={k}, m={m}")
    if not (1 <= ell <= n - 1):
        raise ValueError(f"need 1 <= ell <= n-1, got ell={ell}, n={n}")
    stop = spec.base_rule if spec.base_rule is not None else (
        lambda m_, n_, m2, n2: m2 >= m_ or n2 >= n_
    )

    def g(m_, n_):
        if m_ <= 0 or n_ <= 0:
            return 0
        trivial = m_ * n_
        if k > m_ - 1 or ell > n_ - 1:
            return trivial
        m2 = (t - 1) * spec.f(m_, k)
        n2 = (t - 1) * spec.f_star(n_, ell)
        if stop(m_, n_, m2, n2):
            return trivial
        return min(trivial, (k - 1) * n_ + (ell - 1) * m_ + g(m2, n2))

    return g(m, n)


def recursive_bound_min(m: int, n: int, t: int, spec: RecursiveBoundSpec):
    """Full minimum of the recursive bound over 1 <= k <= m-1, 1 <= ell <= n-1."""
    if m < 2 or n < 2:
        return m * n
    return min(
        recursive_bound(m, n, t, spec, k, ell)
        for k in range(1, m)
        for ell in range(1, n)
    )
