"""Text formats: graph files, group JSON and certificate JSON."""
from __future__ import annotations

import json
from pathlib import Path

from .certificate import Certificate
from .graphs import Digraph, Graph
from .permcore import PermGroup, format_cycles, parse_cycles

FORMAT_VERSION = 1


class FormatError(ValueError):
    pass


# -- graphs --------------------------------------------------------------------

def format_graph(g: Graph | Digraph) -> str:
    if isinstance(g, Digraph):
        head, pairs = "digraph", g.arcs
    else:
        head, pairs = "graph", g.edges()
    lines = [f"{head} {g.n} {len(pairs)}"] + [f"{u} {v}" for u, v in pairs]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph | Digraph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 3 or lines[0][0] not in ("graph", "digraph"):
        raise FormatError("first line must be 'graph n m' or 'digraph n m'")
    kind = lines[0][0]
    try:
        n, m = int(lines[0][1]), int(lines[0][2])
        pairs = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError as exc:
        raise FormatError(f"malformed graph file: {exc}") from None
    if len(pairs) != m:
        raise FormatError(f"header announces {m} lines, found {len(pairs)}")
    if any(not (0 <= x < n) for p in pairs for x in p):
        raise FormatError("vertex out of range")
    return Digraph(n, pairs) if kind == "digraph" else Graph(n, pairs)


# -- groups --------------------------------------------------------------------

def group_to_dict(G: PermGroup) -> dict:
    return {"format": FORMAT_VERSION, "degree": G.degree,
            "generators": [format_cycles(g) for g in G.generators]}


def format_group(G: PermGroup) -> str:
    return json.dumps(group_to_dict(G), indent=2) + "\n"


def parse_group(text: str) -> PermGroup:
    try:
        data = json.loads(text)
        if data.get("format", FORMAT_VERSION) != FORMAT_VERSION:
            raise FormatError(f"unsupported format {data['format']}")
        n = int(data["degree"])
        gens = [parse_cycles(s, n) for s in data["generators"]]
    except FormatError:
        raise
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise FormatError(f"malformed group file: {exc}") from None
    return PermGroup(n, gens)


# -- certificates --------------------------------------------------------------

def format_certificate(cert: Certificate) -> str:
    return cert.to_json() + "\n"


def parse_certificate(text: str) -> Certificate:
    try:
        return Certificate.from_json(text)
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise FormatError(f"malformed certificate: {exc}") from None


def read_graph(path) -> Graph | Digraph:
    return parse_graph(Path(path).read_text())


def read_group(path) -> PermGroup:
    return parse_group(Path(path).read_text())


def read_certificate(path) -> Certificate:
    return parse_certificate(Path(path).read_text())
