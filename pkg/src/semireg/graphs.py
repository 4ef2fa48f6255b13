"""Graphs, digraphs, the arc-transitive corpus and arc-transitivity checks."""
from __future__ import annotations

import itertools
import math
import re
from collections import deque

from .errors import (BoundExceeded, DegreeMismatch, NotAutomorphisms,
                     PreconditionError)
from .permcore import PermGroup, Permutation, is_prime, prime_factors


class OrbitContainsBothDirections(PreconditionError):
    pass


class Graph:
    """Finite simple undirected graph on 0..n-1."""

    __slots__ = ("n", "adj", "_adjsets")

    def __init__(self, n: int, edges):
        if n < 1:
            raise PreconditionError("a graph needs at least one vertex")
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge {(u, v)} out of range")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self._adjsets = tuple(frozenset(s) for s in nbrs)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def valency(self) -> int | None:
        """Common valency of a regular graph, None otherwise."""
        ds = {len(a) for a in self.adj}
        return ds.pop() if len(ds) == 1 else None

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u]]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def is_connected(self) -> bool:
        return len(_reach(self.adj, 0)) == self.n

    def is_automorphism(self, g: Permutation) -> bool:
        if g.degree != self.n:
            return False
        img = g.images
        return all(self.has_edge(img[u], img[v]) for u, v in self.edges())

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


class Digraph:
    """A binary relation on 0..n-1."""

    __slots__ = ("n", "arcs", "out", "inn", "_arcset")

    def __init__(self, n: int, arcs):
        if n < 1:
            raise PreconditionError("a digraph needs at least one vertex")
        arcs = sorted(set((int(u), int(v)) for u, v in arcs))
        out = [[] for _ in range(n)]
        inn = [[] for _ in range(n)]
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"arc {(u, v)} out of range")
            out[u].append(v)
            inn[v].append(u)
        self.n = n
        self.arcs: tuple[tuple[int, int], ...] = tuple(arcs)
        self._arcset = frozenset(arcs)
        self.out = tuple(tuple(sorted(x)) for x in out)
        self.inn = tuple(tuple(sorted(x)) for x in inn)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arcset

    @property
    def out_valence(self) -> int | None:
        ds = {len(a) for a in self.out}
        return ds.pop() if len(ds) == 1 else None

    def is_asymmetric(self) -> bool:
        return all(u != v and (v, u) not in self._arcset for u, v in self.arcs)

    def underlying_graph(self) -> Graph:
        return Graph(self.n, self.arcs)

    def is_connected(self) -> bool:
        both = [set(o) | set(i) for o, i in zip(self.out, self.inn)]
        return len(_reach(both, 0)) == self.n

    def is_strongly_connected(self) -> bool:
        return len(_reach(self.out, 0)) == self.n and len(_reach(self.inn, 0)) == self.n

    def is_automorphism(self, g: Permutation) -> bool:
        if g.degree != self.n:
            return False
        img = g.images
        return all((img[u], img[v]) in self._arcset for u, v in self.arcs)

    def __eq__(self, other):
        return isinstance(other, Digraph) and self.n == other.n and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={len(self.arcs)})"


def _reach(adj, start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


# -- constructors -------------------------------------------------------------

def circulant(n: int, offsets) -> Graph:
    offs = {s % n for s in offsets}
    if not offs or 0 in offs:
        raise PreconditionError(f"offsets must be non-empty and avoid 0 mod {n}")
    if any((-s) % n not in offs for s in offs):
        raise PreconditionError("offsets must be closed under negation")
    return Graph(n, [(i, (i + s) % n) for i in range(n) for s in offs])


def cycle_graph(n: int) -> Graph:
    return circulant(n, {1, n - 1})


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def quadratic_residues(q: int) -> set[int]:
    return {x * x % q for x in range(1, q)}


def paley(q: int) -> Graph:
    if not is_prime(q) or q % 4 != 1:
        raise PreconditionError(f"Paley graphs here need a prime q = 1 mod 4, got {q}")
    return circulant(q, quadratic_residues(q))


def lexicographic_blowup(base: Graph, m: int) -> Graph:
    """Vertex (u, i) is numbered u*m + i; (u,i) ~ (v,j) iff u ~ v."""
    if m < 1:
        raise PreconditionError("blowup factor must be positive")
    edges = [(u * m + i, v * m + j) for u, v in base.edges() for i in range(m) for j in range(m)]
    return Graph(base.n * m, edges)


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def oriented_blowup(k: int, m: int) -> Digraph:
    """Directed k-cycle with every vertex replaced by m independent copies."""
    return Digraph(k * m, [(u * m + i, ((u + 1) % k) * m + j)
                           for u in range(k) for i in range(m) for j in range(m)])



def line_digraph(dg: Digraph) -> Digraph:
    """Vertices are the arcs of ``dg`` (in ``dg.arcs`` order); (a, b) -> (b, c)."""
    index = {a: i for i, a in enumerate(dg.arcs)}
    return Digraph(len(dg.arcs), [(index[(a, b)], index[(b, c)])
                                  for a, b in dg.arcs for c in dg.out[b]])


def arc_action(G: PermGroup, dg: Digraph) -> PermGroup:
    """The action of ``G`` on the arcs of ``dg``, numbered as in ``line_digraph``."""
    check_preserves(dg, G)
    index = {a: i for i, a in enumerate(dg.arcs)}
    return PermGroup(len(dg.arcs), [Permutation([index[(g.images[u], g.images[v])]
                                                 for u, v in dg.arcs]) for g in G.generators])

# -- companion groups ---------------------------------------------------------

def _primitive_root(q: int) -> int:
    fs = prime_factors(q - 1)
    for g in range(2, q):
        if all(pow(g, (q - 1) // f, q) != 1 for f in fs):
            return g
    raise PreconditionError(f"no primitive root mod {q}")


def affine_square_group(q: int) -> PermGroup:
    """x -> x+1 and x -> s*x with s a generator of the non-zero squares."""
    s = _primitive_root(q) ** 2 % q
    return PermGroup(q, [Permutation([(x + 1) % q for x in range(q)]),
                         Permutation([s * x % q for x in range(q)])])


def circulant_multiplier_group(n: int, offsets) -> PermGroup:
    """Translations plus every unit multiplier preserving the offset set."""
    offs = {s % n for s in offsets}
    gens = [Permutation([(x + 1) % n for x in range(n)])]
    for a in range(2, n):
        if math.gcd(a, n) == 1 and {a * s % n for s in offs} == offs:
            gens.append(Permutation([a * x % n for x in range(n)]))
    return PermGroup(n, gens)


def blowup_group(k: int, m: int, fiber: str = "cyclic") -> PermGroup:
    """Arc-transitive group of C_k[mK_1]: fiber permutations, one base
    rotation, one base reflection.

    ``fiber="cyclic"`` uses an m-cycle on each fiber; ``"symmetric"`` adds a
    transposition per fiber, giving the full automorphism group when k >= 4.
    """
    n = k * m
    gens = []
    for u in range(k):
        img = list(range(n))
        for i in range(m):
            img[u * m + i] = u * m + (i + 1) % m
        gens.append(Permutation(img))
        if fiber == "symmetric" and m > 2:
            img = list(range(n))
            img[u * m], img[u * m + 1] = u * m + 1, u * m
            gens.append(Permutation(img))
        elif fiber not in ("cyclic", "symmetric"):
            raise PreconditionError(f"unknown fiber group {fiber!r}")
    gens.append(Permutation([((x // m + 1) % k) * m + x % m for x in range(n)]))
    gens.append(Permutation([((-(x // m)) % k) * m + x % m for x in range(n)]))
    return PermGroup(n, gens)



def simplex_graph(q: int) -> tuple[Graph, PermGroup]:
    """A 4-valent bipartite graph whose group has a 2-transitive local action.

    Vertices are (v, s) with v in Z_q^3 and s in {0, 1}, numbered
    s * q^3 + index(v); (v, 0) ~ (v + c, 1) for c in {0, e1, e2, e3}. The
    group is generated by a translation, the swap (v, s) -> (-v, 1 - s) and
    two affine maps permuting {0, e1, e2, e3} as S_4, so the vertex
    stabilizer acts as S_4 on the neighbourhood and the group is solvable.
    """
    if q < 2:
        raise PreconditionError("q must be at least 2")
    pts = list(itertools.product(range(q), repeat=3))
    index = {v: i for i, v in enumerate(pts)}
    m = len(pts)

    def add(a, b):
        return tuple((x + y) % q for x, y in zip(a, b))

    simplex = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    edges = [(index[v], m + index[add(v, c)]) for v in pts for c in simplex]

    def perm(f):
        img = [0] * (2 * m)
        for s in (0, 1):
            for v in pts:
                w, t = f(v, s)
                img[s * m + index[v]] = t * m + index[w]
        return Permutation(img)

    def affine(M, c):
        def lin(v):
            return tuple(sum(M[r][k] * v[k] for k in range(3)) % q for r in range(3))
        return perm(lambda v, s: (lin(v), 0) if s == 0 else (add(lin(v), c), 1))

    gens = [
        perm(lambda v, s: (add(v, (1, 0, 0)), s)),
        perm(lambda v, s: (tuple((-x) % q for x in v), 1 - s)),
        affine([[0, 1, 0], [1, 0, 0], [0, 0, 1]], (0, 0, 0)),      # swaps e1, e2
        affine([[-1, -1, -1], [1, 0, 0], [0, 1, 0]], (1, 0, 0)),   # 0 -> e1 -> e2 -> e3 -> 0
    ]
    return Graph(2 * m, edges), PermGroup(2 * m, gens)

_BLOWUP_RE = re.compile(r"^c(\d+)[x,](\d+)(?:,(cyc|cyclic|sym|symmetric))?$")


def parse_family(spec: str) -> tuple[str, tuple]:
    """``paley:17``, ``complete:9``, ``blowup:c3x4`` (or ``c3,4[,sym]``),
    ``circulant:13,1,5,8,12``."""
    family, _, params = spec.partition(":")
    try:
        if family == "paley":
            return family, (int(params),)
        if family == "complete":
            return family, (int(params),)
        if family == "blowup":
            m = _BLOWUP_RE.match(params)
            if not m:
                raise PreconditionError(params)
            fiber = "symmetric" if (m.group(3) or "cyc").startswith("sym") else "cyclic"
            return family, (int(m.group(1)), int(m.group(2)), fiber)
        if family == "circulant":
            nums = [int(x) for x in params.split(",")]
            return family, (nums[0], tuple(nums[1:]))
    except ValueError:
        raise PreconditionError(f"invalid parameters for {family}: {params!r}") from None
    raise PreconditionError(f"unknown family {family!r}")


def corpus_graph(family: str, params) -> Graph:
    if family == "paley":
        return paley(*params)
    if family == "complete":
        return complete_graph(*params)
    if family == "blowup":
        k, m = params[:2]
        return lexicographic_blowup(cycle_graph(k), m)
    if family == "circulant":
        n, offs = params
        return circulant(n, offs)
    raise PreconditionError(f"unknown family {family!r}")


def standard_group(family: str, params) -> PermGroup:
    if family == "paley":
        (q,) = params
        paley(q)
        return affine_square_group(q)
    if family == "complete":
        return PermGroup.symmetric(params[0])
    if family == "blowup":
        return blowup_group(*params)
    if family == "circulant":
        return circulant_multiplier_group(*params)
    raise PreconditionError(f"unknown family {family!r}")


def corpus_pair(spec: str) -> tuple[Graph, PermGroup]:
    family, params = parse_family(spec)
    return corpus_graph(family, params), standard_group(family, params)


# -- arc-transitivity and orientation -----------------------------------------

def arc_orbit(G: PermGroup, seed: tuple[int, int]) -> set[tuple[int, int]]:
    seen = {seed}
    queue = [seed]
    for u, v in queue:
        for g in G.generators:
            a = (g.images[u], g.images[v])
            if a not in seen:
                seen.add(a)
                queue.append(a)
    return seen


def check_preserves(graph, G: PermGroup) -> None:
    if G.degree != graph.n:
        raise DegreeMismatch(f"group degree {G.degree} != vertex count {graph.n}")
    for g in G.generators:
        if not graph.is_automorphism(g):
            raise NotAutomorphisms(f"{g} is not an automorphism")


def is_arc_transitive(graph: Graph, G: PermGroup) -> bool:
    if G.degree != graph.n:
        raise DegreeMismatch(f"group degree {G.degree} != vertex count {graph.n}")
    if not all(graph.is_automorphism(g) for g in G.generators):
        return False
    k = graph.valency
    if not k:
        return False
    return len(arc_orbit(G, (0, graph.adj[0][0]))) == graph.n * k


def is_digraph_arc_transitive(dg: Digraph, G: PermGroup) -> bool:
    if G.degree != dg.n:
        raise DegreeMismatch(f"group degree {G.degree} != vertex count {dg.n}")
    if not dg.arcs or not all(dg.is_automorphism(g) for g in G.generators):
        return False
    return len(arc_orbit(G, dg.arcs[0])) == len(dg.arcs)


def orient_by_arc_orbit(graph: Graph, G: PermGroup, seed_arc) -> Digraph:
    u, v = seed_arc
    if not graph.has_edge(u, v):
        raise PreconditionError(f"{seed_arc} is not an arc")
    orbit = arc_orbit(G, (u, v))
    if any((y, x) in orbit for x, y in orbit):
        raise OrbitContainsBothDirections(f"the orbit of {seed_arc} contains reversed arcs")
    if len(orbit) != graph.num_edges:
        raise PreconditionError("the arc orbit does not cover every edge")
    return Digraph(graph.n, orbit)


# -- tiny automorphism groups -------------------------------------------------

def _find_automorphism(graph: Graph, fixed: int, src: int, dst: int) -> Permutation | None:
    """An automorphism fixing 0..fixed-1 and mapping src to dst, by
    backtracking with degree and adjacency pruning."""
    n = graph.n
    # prescribed vertices first, then breadth-first so adjacency prunes early
    order = list(range(fixed)) + [src]
    seen = set(order)
    head = 0
    while len(order) < n:
        if head == len(order):
            x = min(set(range(n)) - seen)
            seen.add(x)
            order.append(x)
        for y in graph.adj[order[head]]:
            if y not in seen:
                seen.add(y)
                order.append(y)
        head += 1
    image = [-1] * n
    used = [False] * n
    for i in range(fixed):
        image[i] = i
        used[i] = True
    if used[dst] or graph.degree(src) != graph.degree(dst):
        return None

    def consistent(v, w, depth):
        for u in order[:depth]:
            if graph.has_edge(u, v) != graph.has_edge(image[u], w):
                return False
        return True

    def search(depth):
        if depth == n:
            return True
        v = order[depth]
        cands = [dst] if v == src else [w for w in range(n) if not used[w]]
        for w in cands:
            if graph.degree(w) != graph.degree(v) or not consistent(v, w, depth):
                continue
            image[v] = w
            used[w] = True
            if search(depth + 1):
                return True
            image[v] = -1
            used[w] = False
        return False

    if not consistent(src, dst, fixed):
        return None
    if search(fixed):
        return Permutation(image)
    return None


def tiny_automorphism_group(graph: Graph, bound: int = 16) -> PermGroup:
    """Full automorphism group of a small graph (convenience only)."""
    n = graph.n
    if n > bound:
        raise BoundExceeded(f"{n} vertices exceeds the tiny-graph bound {bound}")
    gens: list[Permutation] = []
    for level in range(n):
        stab = [g for g in gens if all(g.images[i] == i for i in range(level))]
        orbit = PermGroup(n, stab).orbit(level) if stab else {level}
        for y in range(level + 1, n):
            if y in orbit:
                continue
            g = _find_automorphism(graph, level, level, y)
            if g is not None:
                gens.append(g)
                stab.append(g)
                orbit = PermGroup(n, stab).orbit(level)
    return PermGroup(n, gens)
