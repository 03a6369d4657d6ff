"""Conflict graphs under the primary and the protocol interference models.

Line networks place nodes on the x-axis at exact rational positions; node
ids follow the left-to-right order, so a larger id is always further east.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

from .graphs import Edge, EdgeIndexMap, Graph, line_graph

MAX_RECEIVERS = 2


@dataclass(frozen=True, order=True)
class Transmission:
    transmitter: int
    receivers: tuple[int, ...]

    def __post_init__(self) -> None:
        recv = tuple(sorted(set(self.receivers)))
        if not recv:
            raise ValueError("a transmission needs at least one receiver")
        if len(recv) > MAX_RECEIVERS:
            raise ValueError(
                f"transmission from {self.transmitter} has {len(recv)} receivers; "
                f"at most {MAX_RECEIVERS} are supported"
            )
        if self.transmitter in recv:
            raise ValueError(f"node {self.transmitter} cannot receive its own transmission")
        object.__setattr__(self, "receivers", recv)

    @property
    def is_unicast(self) -> bool:
        return len(self.receivers) == 1

    def __str__(self) -> str:
        return f"{self.transmitter} -> {','.join(map(str, self.receivers))}"


def tx(transmitter: int, *receivers: int) -> Transmission:
    return Transmission(transmitter, tuple(receivers))


Label = Union[Edge, Transmission]


@dataclass(frozen=True)
class ConflictGraph:
    """A conflict graph together with what each of its vertices stands for.

    ``model`` is ``"primary"`` (vertices are network links, the graph is a
    line graph) or ``"protocol"`` (vertices are transmissions).
    """

    graph: Graph
    labels: tuple[Label, ...]
    model: str
    edge_map: EdgeIndexMap | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.labels) != self.graph.n:
            raise ValueError("need exactly one label per conflict vertex")

    def vertex_of(self, label: Label) -> int:
        return self.labels.index(label)


def primary_conflict_graph(G: Graph) -> ConflictGraph:
    lg, emap = line_graph(G)
    return ConflictGraph(lg, emap.edges, "primary", emap)


@dataclass(frozen=True)
class LineNetwork:
    positions: tuple[Fraction, ...]
    r_T: Fraction
    transmissions: tuple[Transmission, ...]
    # (i, i+3) pairs with x_{i+3} - x_i <= r_T, i.e. a node reaching three
    # or more nodes to its right
    spacing_violations: tuple[tuple[int, int], ...] = ()

    @property
    def n(self) -> int:
        return len(self.positions)

    @property
    def spacing_ok(self) -> bool:
        return not self.spacing_violations

    def dist(self, a: int, b: int) -> Fraction:
        return abs(self.positions[a] - self.positions[b])

    def reachable(self, i: int) -> list[int]:
        """Nodes east of ``i`` within transmission range."""
        x = self.positions[i]
        return [j for j in range(i + 1, self.n) if self.positions[j] - x <= self.r_T]

    def with_transmissions(self, transmissions: Iterable[Transmission]) -> "LineNetwork":
        return validate_line_network(self.positions, self.r_T, transmissions)


def validate_line_network(
    positions: Sequence, r_T, transmissions: Iterable[Transmission]
) -> LineNetwork:
    """Check a raw line network and return it in canonical form.

    Raises ValueError for non-increasing positions, westward transmissions
    and receivers out of range.  The "at most two reachable nodes to the
    right" spacing condition is only reported, via ``spacing_violations``.
    """
    pos = tuple(Fraction(p) for p in positions)
    r_T = Fraction(r_T)
    if r_T <= 0:
        raise ValueError("transmission radius must be positive")
    for i in range(len(pos) - 1):
        if pos[i + 1] <= pos[i]:
            raise ValueError(f"positions must be strictly increasing (nodes {i}, {i + 1})")
    txs = tuple(transmissions)
    for t in txs:
        for node in (t.transmitter, *t.receivers):
            if not 0 <= node < len(pos):
                raise ValueError(f"transmission {t} names unknown node {node}")
        for j in t.receivers:
            if pos[j] < pos[t.transmitter]:
                raise ValueError(f"transmission {t} is westward")
            if pos[j] - pos[t.transmitter] > r_T:
                raise ValueError(f"receiver {j} of {t} is out of range")
    violations = tuple(
        (i, i + 3) for i in range(len(pos) - 3) if pos[i + 3] - pos[i] <= r_T
    )
    return LineNetwork(pos, r_T, txs, violations)


def conflict_rules(
    net: LineNetwork, t1: Transmission, t2: Transmission, ties_interfere: bool = True
) -> str:
    """Letters of the interference rules (a)-(e) that fire for a pair.

    With ``ties_interfere`` a receiver equidistant from both transmitters
    counts as interfered with (rules d and e use <=); otherwise the strict
    reading is used.
    """
    i1, J1 = t1.transmitter, set(t1.receivers)
    i2, J2 = t2.transmitter, set(t2.receivers)

    def closer(other: int, own: int, j: int) -> bool:
        a, b = net.dist(other, j), net.dist(own, j)
        return a <= b if ties_interfere else a < b

    fired = []
    if i1 == i2:
        fired.append("a")
    if i1 in J2 or i2 in J1:
        fired.append("b")
    if J1 & J2:
        fired.append("c")
    if any(closer(i2, i1, j) for j in J1):
        fired.append("d")
    if any(closer(i1, i2, j) for j in J2):
        fired.append("e")
    return "".join(fired)


def protocol_conflict_graph(net: LineNetwork, ties_interfere: bool = True) -> ConflictGraph:
    txs = net.transmissions
    edges = [
        (p, q)
        for p, q in combinations(range(len(txs)), 2)
        if conflict_rules(net, txs[p], txs[q], ties_interfere)
    ]
    return ConflictGraph(Graph(len(txs), tuple(edges)), txs, "protocol")


def unicast_adjacent(a, b, c, d) -> bool:
    """Interval test for two eastward unicasts A->B and C->D with C not west
    of A: they conflict iff C lies in the closed interval [A, 2B - A]."""
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    if not (a <= b and c <= d):
        raise ValueError("unicasts must be eastward")
    if c < a:
        raise ValueError("second transmitter must not lie west of the first")
    return a <= c <= 2 * b - a


def normalize_to_unicast(
    transmissions: Iterable[Transmission],
) -> tuple[list[Transmission], Counter]:
    """Replace each two-receiver multicast by a unicast to its eastmost
    receiver, then drop duplicates.

    Returns the distinct unicasts in first-seen order and a Counter with how
    many original transmissions collapsed onto each of them.
    """
    counts: Counter = Counter()
    order: list[Transmission] = []
    for t in transmissions:
        # receivers are sorted by id, and ids follow x-order
        u = Transmission(t.transmitter, (t.receivers[-1],))
        if u not in counts:
            order.append(u)
        counts[u] += 1
    return order, counts
