"""Feasibility oracles and sufficient conditions for link-demand vectors.

Network demands are keyed by edge ``(u, v)``; conflict-graph demands are
keyed by conflict vertex id (or, for a primary-model conflict graph, by the
originating edge).  All arithmetic is in :class:`fractions.Fraction`.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Any, Iterator, Sequence, Union

from .graphs import (
    ENUMERATION_NODE_CAP,
    ODD_HOLE_NODE_CAP,
    Graph,
    SizeLimitError,
    maximal_cliques,
    maximal_independent_sets,
    min_odd_hole_length,
    norm_edge,
    triangles,
)
from .interference import ConflictGraph
from .lp import solve_covering_lp

DENSITY_NODE_CAP = 16
SHANNON_THRESHOLD = Fraction(2, 3)
D1_THRESHOLD = Fraction(4, 5)
ZERO = Fraction(0)


def _key(k):
    if isinstance(k, tuple) and len(k) == 2 and all(isinstance(x, int) for x in k):
        return norm_edge(*k)
    return k


class DemandVector(Mapping):
    """Nonnegative exact demands tau(l), optionally carrying the raw flow
    rates f(l) and capacities C(l) with tau = f / C."""

    def __init__(self, values: Mapping | Sequence = (), rates=None, capacities=None):
        items = values.items() if isinstance(values, Mapping) else enumerate(values)
        data = {}
        for k, v in items:
            q = Fraction(v)
            if q < 0:
                raise ValueError(f"demand for {k} is negative: {q}")
            data[_key(k)] = q
        self._data = data
        self.rates = rates
        self.capacities = capacities

    @classmethod
    def from_rates(cls, rates: Mapping, capacities: Mapping) -> "DemandVector":
        tau = {}
        for k, f in rates.items():
            c = Fraction(capacities[k])
            if c <= 0:
                raise ValueError(f"capacity of {k} must be positive")
            tau[k] = Fraction(f) / c
        return cls(tau, dict(rates), dict(capacities))

    def __getitem__(self, key):
        return self._data[_key(key)]

    def __iter__(self) -> Iterator:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def scaled(self, c) -> "DemandVector":
        c = Fraction(c)
        return DemandVector({k: c * v for k, v in self._data.items()})

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in self._data.items())
        return f"DemandVector({{{body}}})"


def uniform_demands(G: Graph, value) -> DemandVector:
    return DemandVector({e: Fraction(value) for e in G.edges})


class MissingDemandError(KeyError):
    pass


def edge_demands(G: Graph, tau: Mapping) -> list[Fraction]:
    """Demands aligned with ``G.edges``."""
    out = []
    for e in G.edges:
        try:
            out.append(Fraction(tau[e]))
        except KeyError:
            raise MissingDemandError(f"no demand for link {e}") from None
    return out


def vertex_demands(cg: Union[ConflictGraph, Graph], tau) -> list[Fraction]:
    """Demands aligned with conflict vertices ``0..n-1``.

    ``tau`` may be a sequence, a mapping keyed by vertex id, or a mapping
    keyed by the vertex labels of ``cg``.
    """
    graph = cg.graph if isinstance(cg, ConflictGraph) else cg
    if not isinstance(tau, Mapping):
        vals = [Fraction(t) for t in tau]
        if len(vals) != graph.n:
            raise MissingDemandError(f"expected {graph.n} demands, got {len(vals)}")
        return vals
    out = []
    for v in graph.nodes:
        if v in tau:
            out.append(Fraction(tau[v]))
        elif isinstance(cg, ConflictGraph) and _key(cg.labels[v]) in tau:
            out.append(Fraction(tau[_key(cg.labels[v])]))
        else:
            raise MissingDemandError(f"no demand for conflict vertex {v}")
    return out


def _graph(cg: Union[ConflictGraph, Graph]) -> Graph:
    return cg.graph if isinstance(cg, ConflictGraph) else cg


@dataclass(frozen=True)
class FeasibilityVerdict:
    accepted: bool
    bound_value: Fraction
    threshold: Fraction
    witness: Any = None


@dataclass
class LpResult:
    value: Fraction
    column_weights: dict[frozenset[int], Fraction]

    def covers(self, demands: Sequence[Fraction]) -> bool:
        """Exact check that the weights form a schedule of length ``value``."""
        got = [ZERO] * len(demands)
        for col, w in self.column_weights.items():
            if w < 0:
                return False
            for v in col:
                got[v] += w
        total = sum(self.column_weights.values(), ZERO)
        return total == self.value and all(g >= t for g, t in zip(got, demands))


# ---------------------------------------------------------------- primary model


def demand_degree(G: Graph, tau: Mapping, v: int) -> Fraction:
    total = ZERO
    for e in G.incident_edges(v):
        try:
            total += Fraction(tau[e])
        except KeyError:
            raise MissingDemandError(f"no demand for link {e}") from None
    return total


def max_demand_degree(G: Graph, tau: Mapping) -> tuple[Fraction, int | None]:
    """Largest per-node demand sum and the lowest node attaining it."""
    best, arg = ZERO, None
    for v in G.nodes:
        deg = demand_degree(G, tau, v)
        if arg is None or deg > best:
            best, arg = deg, v
    return best, arg


def density(
    G: Graph, tau: Mapping, cap: int = DENSITY_NODE_CAP
) -> tuple[Fraction, frozenset[int]]:
    """Odd-set density: max over odd W, |W| >= 3, of 2 tau(E[W]) / (|W| - 1).

    Brute force over all vertex subsets.  Returns the value and a witness W
    (empty when the value is 0).
    """
    if G.n > cap:
        raise SizeLimitError(f"density enumeration capped at {cap} nodes, got {G.n}")
    weights = edge_demands(G, tau)
    if G.n < 3 or not any(weights):
        return ZERO, frozenset()
    scale = lcm(*(w.denominator for w in weights))
    nbr_w: list[list[tuple[int, int]]] = [[] for _ in G.nodes]
    for (u, v), w in zip(G.edges, weights):
        iw = int(w * scale)
        if iw:
            nbr_w[u].append((v, iw))
            nbr_w[v].append((u, iw))

    size = 1 << G.n
    induced = [0] * size
    best_sum: dict[int, int] = {}
    best_mask: dict[int, int] = {}
    for mask in range(1, size):
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        s = induced[rest]
        for u, w in nbr_w[v]:
            if rest >> u & 1:
                s += w
        induced[mask] = s
        k = mask.bit_count()
        if k >= 3 and k & 1 and s > best_sum.get(k, 0):
            best_sum[k] = s
            best_mask[k] = mask
    best, witness = ZERO, 0
    for k in sorted(best_sum):
        val = Fraction(2 * best_sum[k], (k - 1) * scale)
        if val > best:
            best, witness = val, best_mask[k]
    return best, frozenset(i for i in range(G.n) if witness >> i & 1)


def fractional_chromatic_index(G: Graph, tau: Mapping, cap: int = DENSITY_NODE_CAP) -> Fraction:
    """Minimum schedule length under primary interference, computed as
    max(max demand degree, odd-set density) by Edmonds' matching polytope."""
    deg, _ = max_demand_degree(G, tau)
    lam, _ = density(G, tau, cap)
    return max(deg, lam)


def check_shannon_condition(G: Graph, tau: Mapping) -> FeasibilityVerdict:
    deg, node = max_demand_degree(G, tau)
    return FeasibilityVerdict(deg <= SHANNON_THRESHOLD, deg, SHANNON_THRESHOLD, node)


def check_d1_condition(G: Graph, tau: Mapping) -> FeasibilityVerdict:
    """Per-node demand sums and per-triangle demand sums all at most 4/5.

    The witness is the worst node (an int) or the worst triangle (a
    3-tuple), whichever is larger; nodes win ties.
    """
    bound, witness = max_demand_degree(G, tau)
    for tri in triangles(G):
        a, b, c = tri
        s = sum((Fraction(tau[norm_edge(x, y)]) for x, y in ((a, b), (b, c), (a, c))), ZERO)
        if s > bound:
            bound, witness = s, tri
    return FeasibilityVerdict(bound <= D1_THRESHOLD, bound, D1_THRESHOLD, witness)


# --------------------------------------------------------------- any conflict graph


def fractional_chromatic_number_lp(
    cg: Union[ConflictGraph, Graph], tau, cap: int = ENUMERATION_NODE_CAP
) -> LpResult:
    """Weighted fractional chromatic number via the covering LP over
    independent sets.

    Only maximal independent sets are used as columns: any schedule slot
    can be enlarged to a maximal set without breaking coverage, so the
    optimum is unchanged.
    """
    graph = _graph(cg)
    demands = vertex_demands(cg, tau)
    columns = maximal_independent_sets(graph, cap)
    sol = solve_covering_lp(columns, demands)
    weights = {c: w for c, w in zip(columns, sol.weights) if w}
    return LpResult(sol.value, weights)


def clique_bound(
    cg: Union[ConflictGraph, Graph], tau, cap: int = ENUMERATION_NODE_CAP
) -> tuple[Fraction, frozenset[int]]:
    demands = vertex_demands(cg, tau)
    best, witness = ZERO, frozenset()
    for clique in maximal_cliques(_graph(cg), cap):
        s = sum((demands[v] for v in clique), ZERO)
        if s > best:
            best, witness = s, clique
    return best, witness


def imperfection_ratio(cg: ConflictGraph, cap: int = ODD_HOLE_NODE_CAP) -> Fraction:
    """1 without odd holes, else g/(g-1) for the shortest odd hole length g.

    The closed form is only valid for line graphs, so anything other than a
    primary-model conflict graph is refused.
    """
    if not isinstance(cg, ConflictGraph) or cg.model != "primary":
        raise ValueError("imperfection ratio closed form needs a primary-model conflict graph")
    g = min_odd_hole_length(cg.graph, cap)
    return Fraction(1) if g is None else Fraction(g, g - 1)


def row_sums(cg: Union[ConflictGraph, Graph], tau) -> list[Fraction]:
    graph = _graph(cg)
    demands = vertex_demands(cg, tau)
    return [
        demands[v] + sum((demands[w] for w in graph.neighbors(v)), ZERO)
        for v in graph.nodes
    ]


def check_row_constraints(cg: Union[ConflictGraph, Graph], tau, T=1) -> FeasibilityVerdict:
    T = Fraction(T)
    sums = row_sums(cg, tau)
    if not sums:
        return FeasibilityVerdict(True, ZERO, T, None)
    bound = max(sums)
    return FeasibilityVerdict(bound <= T, bound, T, sums.index(bound))


def check_degree_condition(cg: Union[ConflictGraph, Graph], tau) -> FeasibilityVerdict:
    graph = _graph(cg)
    demands = vertex_demands(cg, tau)
    bound, witness = ZERO, None
    for v in graph.nodes:
        val = demands[v] * (graph.degree(v) + 1)
        if witness is None or val > bound:
            bound, witness = val, v
    return FeasibilityVerdict(bound <= 1, bound, Fraction(1), witness)
