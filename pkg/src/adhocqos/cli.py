"""Command line entry point: ``adhocqos {gen,conflict,feas,admit,experiment}``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import distalgo, feasibility as fz
from .experiments import EXPERIMENTS, ExperimentSpec, run_experiment
from .formats import (
    dump_graph,
    dump_line_network,
    dump_report,
    fmt_q,
    parse_demands,
    parse_graph,
    parse_line_network,
    report_to_dict,
)
from .generators import generate
from .graphs import Graph, SizeLimitError, induced_star_number
from .interference import LineNetwork, primary_conflict_graph, protocol_conflict_graph
from .simnet import run_distributed


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _write(text: str, path: str | None) -> None:
    if path and path != "-":
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _verdict(v: fz.FeasibilityVerdict) -> dict:
    witness = v.witness
    if isinstance(witness, (set, frozenset)):
        witness = sorted(witness)
    return {
        "accepted": v.accepted,
        "bound": fmt_q(v.bound_value),
        "threshold": fmt_q(v.threshold),
        "witness": witness,
    }


def cmd_gen(args) -> int:
    obj = generate(args.kind, args.n, Fraction(args.p), args.seed)
    if isinstance(obj, LineNetwork):
        _write(dump_line_network(obj), args.out)
    else:
        _write(dump_graph(obj, [f"{args.kind} n={args.n} seed={args.seed}"]), args.out)
    return 0


def cmd_conflict(args) -> int:
    if args.graph:
        cg = primary_conflict_graph(parse_graph(_read(args.graph)))
        labels = [f"vertex {i}: link {u} {v}" for i, (u, v) in enumerate(cg.labels)]
    else:
        net = parse_line_network(_read(args.line))
        cg = protocol_conflict_graph(net, ties_interfere=not args.strict_ties)
        labels = [f"vertex {i}: tx {t}" for i, t in enumerate(cg.labels)]
    _write(dump_graph(cg.graph, [f"{cg.model} conflict graph", *labels]), args.out)
    return 0


def _feas_primary(G: Graph, tau, d: int) -> dict:
    deg, deg_node = fz.max_demand_degree(G, tau)
    lam, W = fz.density(G, tau)
    cg = primary_conflict_graph(G)
    lp = fz.fractional_chromatic_number_lp(cg, tau)
    clique, K = fz.clique_bound(cg, tau)
    local, local_node = distalgo.global_local_bound(G, tau, d)
    out = {
        "model": "primary",
        "max_demand_degree": {"value": fmt_q(deg), "node": deg_node},
        "density": {"value": fmt_q(lam), "witness": sorted(W)},
        "T_star": fmt_q(max(deg, lam)),
        "lp_value": fmt_q(lp.value),
        "feasible": max(deg, lam) <= 1,
        "clique_bound": {"value": fmt_q(clique), "witness": [list(cg.labels[v]) for v in sorted(K)]},
        "shannon": _verdict(fz.check_shannon_condition(G, tau)),
        "d1": _verdict(fz.check_d1_condition(G, tau)),
        "row_constraints": _verdict(fz.check_row_constraints(cg, tau)),
        "degree_condition": _verdict(fz.check_degree_condition(cg, tau)),
        "distance_d": {
            "d": d,
            "alpha": fmt_q(distalgo.alpha(d)),
            "T_d_star": fmt_q(local),
            "argmax_node": local_node,
            "accepted": local <= distalgo.threshold(d),
        },
    }
    try:
        out["imperfection_ratio"] = fmt_q(fz.imperfection_ratio(cg))
    except SizeLimitError:
        out["imperfection_ratio"] = None
    return out


def _feas_protocol(net: LineNetwork, tau) -> dict:
    cg = protocol_conflict_graph(net)
    lp = fz.fractional_chromatic_number_lp(cg, tau)
    clique, K = fz.clique_bound(cg, tau)
    star = induced_star_number(cg.graph)
    return {
        "model": "protocol",
        "lp_value": fmt_q(lp.value),
        "feasible": lp.value <= 1,
        "clique_bound": {"value": fmt_q(clique), "witness": sorted(K)},
        "row_constraints": _verdict(fz.check_row_constraints(cg, tau)),
        "degree_condition": _verdict(fz.check_degree_condition(cg, tau)),
        "sigma": star.size,
        "spacing_ok": net.spacing_ok,
    }


def cmd_feas(args) -> int:
    tau = parse_demands(_read(args.demands))
    if args.graph:
        out = _feas_primary(parse_graph(_read(args.graph)), tau, args.d)
    else:
        out = _feas_protocol(parse_line_network(_read(args.line)), tau)
    _write(json.dumps(out, indent=2) + "\n", args.out)
    return 0


def cmd_admit(args) -> int:
    G = parse_graph(_read(args.graph))
    tau = parse_demands(_read(args.demands))
    if args.mode == "simulate":
        report, trace = run_distributed(G, tau, args.d)
        if args.trace:
            Path(args.trace).write_text("\n".join(trace.lines()) + "\n")
    else:
        report = distalgo.admission_control_reference(G, tau, args.d)
    if args.json:
        _write(json.dumps(report_to_dict(report), indent=2) + "\n", args.out)
    else:
        _write(dump_report(report), args.out)
    return 0


def cmd_experiment(args) -> int:
    spec = ExperimentSpec(args.name, seed=args.seed, count=args.count)
    report = run_experiment(spec)
    _write(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n", args.out)
    if args.out and args.out != "-":
        print(report.table())
    else:
        print(report.table(), file=sys.stderr)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adhocqos", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("kind", choices=["cycle", "path", "star", "random-graph", "random-line-network"])
    p.add_argument("n", type=int)
    p.add_argument("--p", default="1/2", help="edge probability for random-graph (rational)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("conflict", help="print a conflict graph")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="network graph file (primary interference)")
    src.add_argument("--line", help="line network file (protocol interference)")
    p.add_argument("--strict-ties", action="store_true",
                   help="equidistant receivers do not count as interfered with")
    p.add_argument("--out")
    p.set_defaults(func=cmd_conflict)

    p = sub.add_parser("feas", help="exact value and every sufficient condition")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph")
    src.add_argument("--line")
    p.add_argument("--demands", required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_feas)

    p = sub.add_parser("admit", help="run distance-d admission control")
    p.add_argument("--graph", required=True)
    p.add_argument("--demands", required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--mode", choices=["reference", "simulate"], default="reference")
    p.add_argument("--trace", help="write the simulator trace here (simulate mode)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_admit)

    p = sub.add_parser("experiment", help="run a named experiment")
    p.add_argument("name", choices=sorted(EXPERIMENTS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int)
    p.add_argument("--out", help="JSON report path (default stdout)")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"adhocqos: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
