"""Distance-d admission control under primary interference.

Each node v solves the scheduling problem on the subgraph induced by its
radius-d ball and compares the result with ``1/alpha(d)``.  A link is
rejected when some node whose knowledge covers it reports infeasible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .feasibility import demand_degree, fractional_chromatic_index
from .graphs import Edge, Graph, ball, induced_subgraph


def alpha(d: int) -> Fraction:
    """Guarantee factor (2d+3)/(2d+2) of the distance-d algorithm."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    return Fraction(2 * d + 3, 2 * d + 2)


def threshold(d: int) -> Fraction:
    return 1 / alpha(d)


def restrict_demands(G: Graph, tau: Mapping, W) -> tuple[Graph, dict[Edge, Fraction]]:
    sub, relabel = induced_subgraph(G, W)
    back = {new: old for old, new in relabel.items()}
    sub_tau = {(a, b): Fraction(tau[(back[a], back[b])]) for a, b in sub.edges}
    return sub, sub_tau


def local_estimate(G: Graph, tau: Mapping, v: int, d: int) -> Fraction:
    """T*(G_{v,d}, tau) for d >= 1.

    For d = 0 a node only sees its own links, and the estimate is its demand
    degree (compared against 2/3 = 1/alpha(0), the Shannon condition).
    """
    if d == 0:
        return demand_degree(G, tau, v)
    sub, sub_tau = restrict_demands(G, tau, ball(G, v, d))
    return fractional_chromatic_index(sub, sub_tau)


def global_local_bound(G: Graph, tau: Mapping, d: int) -> tuple[Fraction, int | None]:
    """max_v T*(G_{v,d}, tau) and the lowest node attaining it."""
    best, arg = Fraction(0), None
    for v in G.nodes:
        est = local_estimate(G, tau, v, d)
        if arg is None or est > best:
            best, arg = est, v
    return best, arg


def covered_links(G: Graph, v: int, d: int) -> list[Edge]:
    """Links whose demand node v knows: those inside G_{v,d}, plus v's own
    links (which only matters for d = 0)."""
    W = ball(G, v, d)
    return [e for e in G.edges if (e[0] in W and e[1] in W) or v in e]


@dataclass(frozen=True)
class LocalEstimate:
    node: int
    value: Fraction
    feasible: bool


@dataclass
class DecisionReport:
    d: int
    alpha: Fraction
    threshold: Fraction
    estimates: list[LocalEstimate]
    accepted: dict[Edge, bool]
    # infeasible nodes responsible for each rejection
    blamed: dict[Edge, tuple[int, ...]] = field(default_factory=dict)

    @property
    def all_accepted(self) -> bool:
        return all(self.accepted.values())

    def decisions(self) -> dict[Edge, bool]:
        return dict(sorted(self.accepted.items()))


def decide_links(
    G: Graph, d: int, infeasible: set[int]
) -> tuple[dict[Edge, bool], dict[Edge, tuple[int, ...]]]:
    blamed: dict[Edge, list[int]] = {e: [] for e in G.edges}
    for v in sorted(infeasible):
        for e in covered_links(G, v, d):
            blamed[e].append(v)
    accepted = {e: not b for e, b in blamed.items()}
    return accepted, {e: tuple(b) for e, b in blamed.items() if b}


def admission_control_reference(G: Graph, tau: Mapping, d: int) -> DecisionReport:
    """Centralised evaluation of the distributed algorithm's decisions.

    The boundary case estimate == threshold accepts.
    """
    thr = threshold(d)
    estimates = []
    for v in G.nodes:
        est = local_estimate(G, tau, v, d)
        estimates.append(LocalEstimate(v, est, est <= thr))
    infeasible = {e.node for e in estimates if not e.feasible}
    accepted, blamed = decide_links(G, d, infeasible)
    return DecisionReport(d, alpha(d), thr, estimates, accepted, blamed)
