"""Text formats for graphs, line networks, demands, decision reports and
simulator traces.

Graph::

    # comment
    nodes 5
    0 1
    1 2

Line network (node ids are 0-based, in left-to-right order)::

    rT 1
    pos 0
    pos 3/10
    tx 0 -> 1
    tx 2 -> 3,4

Demands: ``u v p/q`` per network link, or ``vertex p/q`` per conflict vertex.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .distalgo import DecisionReport
from .feasibility import DemandVector
from .graphs import Graph, build_graph
from .interference import LineNetwork, Transmission, validate_line_network


class FormatError(ValueError):
    pass


def fmt_q(q) -> str:
    """Exact rational as ``p/q`` (or ``p`` when integral)."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _content_lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_graph(text: str) -> Graph:
    n = None
    edges = []
    for lineno, parts in _content_lines(text):
        if parts[0] == "nodes":
            if n is not None or len(parts) != 2:
                raise FormatError(f"line {lineno}: bad 'nodes' declaration")
            n = int(parts[1])
        elif len(parts) == 2:
            if n is None:
                raise FormatError(f"line {lineno}: edge before 'nodes' line")
            edges.append((int(parts[0]), int(parts[1])))
        else:
            raise FormatError(f"line {lineno}: expected 'u v'")
    if n is None:
        raise FormatError("missing 'nodes N' line")
    return build_graph(n, edges)


def dump_graph(G: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"nodes {G.n}")
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def parse_line_network(text: str) -> LineNetwork:
    r_T = None
    positions: list[Fraction] = []
    txs: list[Transmission] = []
    for lineno, parts in _content_lines(text):
        key = parts[0]
        try:
            if key == "rT" and len(parts) == 2:
                r_T = Fraction(parts[1])
            elif key == "pos" and len(parts) == 2:
                positions.append(Fraction(parts[1]))
            elif key == "tx":
                body = " ".join(parts[1:])
                src, _, dst = body.partition("->")
                receivers = tuple(int(x) for x in dst.replace(" ", "").split(","))
                txs.append(Transmission(int(src), receivers))
            else:
                raise FormatError(f"line {lineno}: unrecognised entry {key!r}")
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
    if r_T is None:
        raise FormatError("missing 'rT' line")
    return validate_line_network(positions, r_T, txs)


def dump_line_network(net: LineNetwork) -> str:
    lines = [f"rT {fmt_q(net.r_T)}"]
    lines.extend(f"pos {fmt_q(p)}" for p in net.positions)
    lines.extend(f"tx {t}" for t in net.transmissions)
    return "\n".join(lines) + "\n"


def parse_demands(text: str) -> DemandVector:
    values: dict = {}
    for lineno, parts in _content_lines(text):
        try:
            if len(parts) == 3:
                values[(int(parts[0]), int(parts[1]))] = Fraction(parts[2])
            elif len(parts) == 2:
                values[int(parts[0])] = Fraction(parts[1])
            else:
                raise FormatError(f"line {lineno}: expected 'u v p/q' or 'vertex p/q'")
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
    return DemandVector(values)


def dump_demands(tau: Mapping) -> str:
    lines = []
    for key in sorted(tau):
        if isinstance(key, tuple):
            lines.append(f"{key[0]} {key[1]} {fmt_q(tau[key])}")
        else:
            lines.append(f"{key} {fmt_q(tau[key])}")
    return "\n".join(lines) + "\n"


def report_to_dict(report: DecisionReport) -> dict:
    return {
        "d": report.d,
        "alpha": fmt_q(report.alpha),
        "threshold": fmt_q(report.threshold),
        "estimates": [
            {"node": e.node, "value": fmt_q(e.value), "verdict": "feasible" if e.feasible else "infeasible"}
            for e in report.estimates
        ],
        "flows": [
            {
                "link": [u, v],
                "decision": "accept" if ok else "reject",
                "blamed": list(report.blamed.get((u, v), ())),
            }
            for (u, v), ok in report.decisions().items()
        ],
    }


def dump_report(report: DecisionReport) -> str:
    lines = [
        f"d {report.d}",
        f"alpha {fmt_q(report.alpha)}",
        f"threshold {fmt_q(report.threshold)}",
    ]
    for e in report.estimates:
        lines.append(f"node {e.node} {fmt_q(e.value)} {'feasible' if e.feasible else 'infeasible'}")
    for (u, v), ok in report.decisions().items():
        lines.append(f"flow {u} {v} {'accept' if ok else 'reject'}")
    return "\n".join(lines) + "\n"
