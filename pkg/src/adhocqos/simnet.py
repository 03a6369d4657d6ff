"""Round-synchronous message passing for the distributed admission check.

Messages sent in round r arrive in round r+1.  Every message carries a hop
counter starting at d; a receiver decrements it and forwards on all other
links while it stays positive.  Each node forwards a given origin at most
once, which leaves the delivery set unchanged but keeps traffic linear.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .distalgo import DecisionReport, LocalEstimate, alpha, local_estimate, threshold
from .graphs import Edge, Graph

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Message:
    origin: int
    verdict: str
    counter: int


@dataclass(frozen=True)
class TraceRecord:
    round: int
    sender: int
    receiver: int
    message: Message

    def __str__(self) -> str:
        m = self.message
        return f"{self.round} {self.sender} {self.receiver} {m.origin} {m.verdict} {m.counter}"


@dataclass
class SimTrace:
    records: list[TraceRecord] = field(default_factory=list)
    # node -> origin -> verdict
    inbox: dict[int, dict[int, str]] = field(default_factory=dict)
    rounds: int = 0

    def messages_from(self, origin: int) -> int:
        return sum(1 for r in self.records if r.message.origin == origin)

    def lines(self) -> list[str]:
        return [str(r) for r in self.records]


def flood(G: Graph, verdicts: Mapping[int, str], d: int) -> SimTrace:
    """Flood every ``(origin, verdict)`` pair to distance ``d`` at once."""
    if d < 0:
        raise ValueError("flood radius must be nonnegative")
    trace = SimTrace(inbox={v: {} for v in G.nodes})
    forwarded: set[tuple[int, int]] = set()
    outgoing: list[tuple[int, int, Message]] = []
    for v in sorted(verdicts):
        trace.inbox[v][v] = verdicts[v]
        if d > 0:
            forwarded.add((v, v))
            for w in sorted(G.neighbors(v)):
                outgoing.append((v, w, Message(v, verdicts[v], d)))

    rnd = 0
    while outgoing:
        for sender, receiver, msg in outgoing:
            trace.records.append(TraceRecord(rnd, sender, receiver, msg))
        rnd += 1
        arriving, outgoing = outgoing, []
        for sender, receiver, msg in arriving:
            box = trace.inbox[receiver]
            if msg.origin not in box:
                box[msg.origin] = msg.verdict
            left = msg.counter - 1
            if left > 0 and (receiver, msg.origin) not in forwarded:
                forwarded.add((receiver, msg.origin))
                fwd = Message(msg.origin, msg.verdict, left)
                for w in sorted(G.neighbors(receiver)):
                    if w != sender:
                        outgoing.append((receiver, w, fwd))
    trace.rounds = rnd
    return trace


def run_flood(G: Graph, origin: int, payload: str, d: int) -> tuple[frozenset[int], SimTrace]:
    if not 0 <= origin < G.n:
        raise ValueError(f"node {origin} not in graph")
    trace = flood(G, {origin: payload}, d)
    delivered = frozenset(v for v, box in trace.inbox.items() if origin in box)
    return delivered, trace


def run_distributed(G: Graph, tau: Mapping, d: int) -> tuple[DecisionReport, SimTrace]:
    """Simulate the algorithm: local estimates, verdict flooding, then a
    per-link decision from the two endpoint inboxes."""
    if d < 1:
        raise ValueError("the simulated algorithm needs d >= 1")
    thr = threshold(d)
    estimates = []
    verdicts = {}
    for v in G.nodes:
        est = local_estimate(G, tau, v, d)
        estimates.append(LocalEstimate(v, est, est <= thr))
        verdicts[v] = FEASIBLE if est <= thr else INFEASIBLE
    trace = flood(G, verdicts, d)

    accepted: dict[Edge, bool] = {}
    blamed: dict[Edge, tuple[int, ...]] = {}
    for x, y in G.edges:
        bx, by = trace.inbox[x], trace.inbox[y]
        common = tuple(
            sorted(v for v, verdict in bx.items() if verdict == INFEASIBLE and by.get(v) == INFEASIBLE)
        )
        accepted[(x, y)] = not common
        if common:
            blamed[(x, y)] = common
    report = DecisionReport(d, alpha(d), thr, estimates, accepted, blamed)
    return report, trace
