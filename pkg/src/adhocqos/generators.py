"""Seeded instance generators.

All randomness comes from a ``random.Random`` built from the caller's seed,
and every random quantity is an exact rational.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .feasibility import DemandVector
from .graphs import Graph, build_graph, cycle_graph, path_graph, star_graph
from .interference import LineNetwork, Transmission, validate_line_network

GAP_GRID = 20  # line-network gaps are multiples of 1/GAP_GRID


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_graph(n: int, p, seed) -> Graph:
    """G(n, p) with an exact rational edge probability."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("edge probability must lie in [0, 1]")
    if n < 1:
        raise ValueError("need at least one node")
    rng = _rng(seed)
    edges = [e for e in combinations(range(n), 2) if rng.randrange(p.denominator) < p.numerator]
    return build_graph(n, edges)


def random_demands(G: Graph, seed, max_den: int = 6, zero_prob: float = 0.15) -> DemandVector:
    """Rationals in [0, 1] with small denominators; some entries are zero."""
    rng = _rng(seed)
    out = {}
    for e in G.edges:
        if rng.random() < zero_prob:
            out[e] = Fraction(0)
        else:
            den = rng.randint(1, max_den)
            out[e] = Fraction(rng.randint(0, den), den)
    return DemandVector(out)


def random_vertex_demands(n: int, seed, max_den: int = 6) -> list[Fraction]:
    rng = _rng(seed)
    out = []
    for _ in range(n):
        den = rng.randint(1, max_den)
        out.append(Fraction(rng.randint(0, den), den))
    return out


def random_line_positions(n: int, seed, r_T=1) -> list[Fraction]:
    """Positions with every three consecutive gaps summing past ``r_T``, so
    each node reaches at most two nodes to its east."""
    rng = _rng(seed)
    r_T = Fraction(r_T)
    step = r_T / GAP_GRID
    gaps: list[Fraction] = []
    for i in range(max(n - 1, 0)):
        g = step * rng.randint(1, GAP_GRID)
        if i >= 2:
            floor = r_T - gaps[-1] - gaps[-2]
            if g <= floor:
                g = floor + step * rng.randint(1, 4)
        gaps.append(g)
    pos = [Fraction(0)]
    for g in gaps:
        pos.append(pos[-1] + g)
    return pos


def random_line_network(
    n: int, seed, r_T=1, keep_prob: float = 0.5, multicast: bool = False
) -> LineNetwork:
    """Line network satisfying the spacing condition, with a random subset
    of the valid eastward transmissions (at least one when any exist).

    With ``multicast`` the candidate set also includes every valid
    two-receiver transmission.
    """
    rng = _rng(seed)
    pos = random_line_positions(n, rng, r_T)
    skeleton = validate_line_network(pos, r_T, [])
    candidates = []
    for i in range(n):
        reach = skeleton.reachable(i)
        candidates.extend(Transmission(i, (j,)) for j in reach)
        if multicast:
            candidates.extend(Transmission(i, pair) for pair in combinations(reach, 2))
    chosen = [t for t in candidates if rng.random() < keep_prob]
    if not chosen and candidates:
        chosen = [rng.choice(candidates)]
    return validate_line_network(pos, r_T, chosen)


def generate(kind: str, n: int, p=Fraction(1, 2), seed=0):
    """Named generator used by the command line."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if kind == "cycle":
        return cycle_graph(n)
    if kind == "path":
        return path_graph(n)
    if kind == "star":
        return star_graph(n)
    if kind == "random-graph":
        return random_graph(n, p, seed)
    if kind == "random-line-network":
        return random_line_network(n, seed)
    raise ValueError(f"unknown generator {kind!r}")
