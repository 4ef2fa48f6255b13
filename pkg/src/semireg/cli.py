"""Command-line interface.

Exit codes: 0 success, 1 unreadable or malformed input, 2 precondition
failure (including budget exhaustion), 3 invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .actions import local_action, quotient_graph
from .alternets import alternet_digraph, alternet_partition, is_loosely_attached
from .errors import BoundExceeded, InvariantViolation, PreconditionError
from .finder import find_semiregular_8valent
from .graphs import Digraph, Graph, corpus_pair, is_arc_transitive
from .oracle import brute_force_semiregular, verify_certificate
from .permcore import DEFAULT_BUDGET, format_cycles, minimal_normal_subgroup

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INVARIANT = 0, 1, 2, 3


class CommandError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors, not precondition failures
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise CommandError(f"--{name} is required for '{args.command}'")


def _load_graph(path, kind=Graph):
    g = io.read_graph(path)
    if not isinstance(g, kind):
        raise io.FormatError(f"{path}: expected a {kind.__name__.lower()} file")
    return g


def cmd_find(args) -> int:
    _need(args, "graph", "group")
    graph, G = _load_graph(args.graph), io.read_group(args.group)
    cert = find_semiregular_8valent(graph, G, budget=args.budget)
    if args.json:
        _emit(args, io.format_certificate(cert))
    else:
        _emit(args, f"element: {format_cycles(cert.element)}\norder: {cert.order}\n"
                    f"cycle_length: {cert.cycle_length}\n"
                    f"branch_trace: {' > '.join(cert.branch_trace)}\nverified: {str(cert.verified).lower()}\n")
    return EXIT_OK


def cmd_gen(args) -> int:
    graph, G = corpus_pair(args.family)
    if not is_arc_transitive(graph, G):
        raise InvariantViolation("generated group is not arc-transitive", {"family": args.family})
    if args.out:
        Path(args.out + ".g").write_text(io.format_graph(graph))
        Path(args.out + ".json").write_text(io.format_group(G))
        print(f"wrote {args.out}.g ({graph.n} vertices, valency {graph.valency}) "
              f"and {args.out}.json (order {G.order()})")
    elif args.json:
        sys.stdout.write(_dump({"format": 1, "graph": io.format_graph(graph),
                                "group": io.group_to_dict(G)}))
    else:
        sys.stdout.write(io.format_graph(graph) + io.format_group(G))
    return EXIT_OK


def cmd_oracle(args) -> int:
    _need(args, "group")
    report = brute_force_semiregular(io.read_group(args.group), args.budget)
    if args.json:
        _emit(args, _dump(report.to_dict()))
    else:
        found = "none" if report.found is None else format_cycles(report.found)
        _emit(args, f"found: {found}\nelements_scanned: {report.elements_scanned}\n"
                    f"exhausted: {str(report.exhausted).lower()}\n"
                    f"budget_exceeded: {str(report.budget_exceeded).lower()}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    _need(args, "cert", "group")
    if (args.graph is None) == (args.digraph is None):
        raise CommandError("give exactly one of --graph and --digraph")
    cert = io.read_certificate(args.cert)
    target = _load_graph(args.graph) if args.graph else _load_graph(args.digraph, Digraph)
    res = verify_certificate(cert, target, io.read_group(args.group))
    if args.json:
        _emit(args, _dump({"format": 1, "verified": res.ok, "reason": res.reason}))
    else:
        _emit(args, f"verified: {str(res.ok).lower()}\nreason: {res.reason}\n")
    return EXIT_OK if res.ok else EXIT_PRECONDITION


def cmd_alternets(args) -> int:
    _need(args, "digraph")
    dg = _load_graph(args.digraph, Digraph)
    P = alternet_partition(dg)
    flags = P.degenerate_flags()
    data = {"format": 1, "classes": [[list(a) for a in c] for c in P.classes],
            "degenerate": flags}
    if not any(flags):
        alg, _ = alternet_digraph(P)
        data["loosely_attached"] = is_loosely_attached(P)
        data["alternet_digraph"] = io.format_graph(alg)
    if args.json:
        _emit(args, _dump(data))
    else:
        lines = [f"alternets: {len(P)}"]
        for i, (c, d) in enumerate(zip(P.classes, flags)):
            arcs = " ".join(f"{u}->{v}" for u, v in c)
            lines.append(f"  [{i}]{' degenerate' if d else ''} {arcs}")
        if "loosely_attached" in data:
            lines.append(f"loosely_attached: {str(data['loosely_attached']).lower()}")
            lines.append(data["alternet_digraph"].rstrip("\n"))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_quotient(args) -> int:
    _need(args, "graph", "group")
    graph, G = _load_graph(args.graph), io.read_group(args.group)
    N = io.read_group(args.normal) if args.normal else minimal_normal_subgroup(G, args.budget)
    qd = quotient_graph(graph, N, G)
    data = {"format": 1, "normal_order": N.order(),
            "orbits": [list(b) for b in qd.orbit_partition.blocks],
            "quotient": io.format_graph(qd.quotient),
            "quotient_valency": qd.quotient.valency,
            "kernel_order": qd.kernel.order(),
            "induced_group": io.group_to_dict(qd.induced_group)}
    if args.json:
        _emit(args, _dump(data))
    else:
        _emit(args, f"|N| = {N.order()}, {len(qd.orbit_partition)} orbits, "
                    f"quotient valency {qd.quotient.valency}, |K| = {qd.kernel.order()}\n"
                    + data["quotient"])
    return EXIT_OK


def cmd_local_action(args) -> int:
    _need(args, "graph", "group")
    graph, G = _load_graph(args.graph), io.read_group(args.group)
    if not 0 <= args.vertex < graph.n:
        raise CommandError(f"vertex {args.vertex} out of range")
    L = local_action(graph, G, args.vertex)
    data = {"format": 1, "vertex": args.vertex, "neighbours": list(graph.adj[args.vertex]),
            "order": L.order(), "transitive": L.is_transitive(),
            "group": io.group_to_dict(L)}
    if args.json:
        _emit(args, _dump(data))
    else:
        _emit(args, f"vertex {args.vertex}: neighbours {list(graph.adj[args.vertex])}, "
                    f"|L| = {L.order()}, transitive: {str(L.is_transitive()).lower()}\n"
                    + io.format_group(L))
    return EXIT_OK


COMMANDS = {
    "find": cmd_find, "gen": cmd_gen, "oracle": cmd_oracle, "verify": cmd_verify,
    "alternets": cmd_alternets, "quotient": cmd_quotient, "local-action": cmd_local_action,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="semireg",
                     description="Semiregular automorphisms of arc-transitive graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "gen":
            p.add_argument("family", help="paley:q, complete:n, blowup:ck,m[,sym], circulant:n,o1,o2,...")
        p.add_argument("--graph")
        p.add_argument("--group")
        p.add_argument("--digraph")
        p.add_argument("--cert")
        p.add_argument("--normal", help="group file for the normal subgroup (quotient)")
        p.add_argument("--vertex", type=int, default=0)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.add_argument("--json", action="store_true")
        p.add_argument("--out")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (io.FormatError, OSError, CommandError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (PreconditionError, BoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
