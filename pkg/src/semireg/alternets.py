"""Alternets of digraphs, the digraph of alternets, and the orientation of
an arc-transitive graph over a cyclic quotient."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .actions import QuotientData
from .errors import InvariantViolation, PreconditionError
from .graphs import (Digraph, Graph, check_preserves, is_arc_transitive,
                     is_digraph_arc_transitive)
from .permcore import ActionHomomorphism, PermGroup, Permutation


class EmptyDigraph(PreconditionError):
    pass


class DegenerateAlternet(PreconditionError):
    pass


class ClassesNotUniform(PreconditionError):
    pass


class QuotientNotCycle(PreconditionError):
    pass


class IntraOrbitEdge(PreconditionError):
    pass


@dataclass(frozen=True)
class AlternetPartition:
    digraph: Digraph
    classes: tuple[tuple[tuple[int, int], ...], ...]
    sources: tuple[frozenset, ...]
    sinks: tuple[frozenset, ...]
    class_of: dict = field(repr=False)

    def __len__(self):
        return len(self.classes)

    def source_class(self, v: int) -> int:
        """Class holding the out-arcs of ``v`` (-1 if it has none)."""
        out = self.digraph.out[v]
        return self.class_of[(v, out[0])] if out else -1

    def sink_class(self, v: int) -> int:
        inn = self.digraph.inn[v]
        return self.class_of[(inn[0], v)] if inn else -1

    def degenerate_flags(self) -> list[bool]:
        return [is_degenerate(c) for c in self.classes]


def alternet_partition(dg: Digraph) -> AlternetPartition:
    """Classes of the transitive closure of "shares a tail or a head"."""
    if not dg.arcs:
        raise EmptyDigraph("digraph has no arcs")
    index = {a: i for i, a in enumerate(dg.arcs)}
    parent = list(range(len(dg.arcs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for v in range(dg.n):
        outs = [index[(v, w)] for w in dg.out[v]]
        ins = [index[(u, v)] for u in dg.inn[v]]
        for group in (outs, ins):
            for a in group[1:]:
                union(group[0], a)
    # roots are the least arc index in each class, so classes come out ordered
    buckets: dict[int, list] = {}
    for i, a in enumerate(dg.arcs):
        buckets.setdefault(find(i), []).append(a)
    classes = tuple(tuple(buckets[r]) for r in sorted(buckets))
    class_of = {a: ci for ci, c in enumerate(classes) for a in c}
    sources = tuple(frozenset(u for u, _ in c) for c in classes)
    sinks = tuple(frozenset(v for _, v in c) for c in classes)
    return AlternetPartition(dg, classes, sources, sinks, class_of)


def is_degenerate(arcs) -> bool:
    """Some head of the class is also a tail of the class."""
    if not arcs:
        raise PreconditionError("empty alternet")
    tails = {u for u, _ in arcs}
    return any(v in tails for _, v in arcs)


def is_complete_bipartite(arcs) -> bool:
    if is_degenerate(arcs):
        raise DegenerateAlternet("complete-bipartite test needs a non-degenerate alternet")
    tails = {u for u, _ in arcs}
    heads = {v for _, v in arcs}
    return len(set(arcs)) == len(tails) * len(heads)


def _require_nondegenerate(P: AlternetPartition) -> None:
    for i, c in enumerate(P.classes):
        if is_degenerate(c):
            raise DegenerateAlternet(f"alternet {i} is degenerate")


def is_loosely_attached(P: AlternetPartition) -> bool:
    """Every sink set meets every source set in at most one vertex.

    A vertex is a sink of exactly one alternet and a source of exactly one,
    so it suffices to count the (sink class, source class) pairs.
    """
    _require_nondegenerate(P)
    pairs = Counter((P.sink_class(v), P.source_class(v)) for v in range(P.digraph.n)
                    if P.digraph.inn[v] and P.digraph.out[v])
    return all(c <= 1 for c in pairs.values())


def alternet_digraph(P: AlternetPartition) -> tuple[Digraph, tuple[int, ...]]:
    """The digraph of alternets and the vertex -> source-class map."""
    _require_nondegenerate(P)
    dg = P.digraph
    arcs = {(P.sink_class(v), P.source_class(v)) for v in range(dg.n)
            if dg.inn[v] and dg.out[v]}
    return Digraph(len(P), arcs), tuple(P.source_class(v) for v in range(dg.n))


def induced_group_on_alternets(G: PermGroup, P: AlternetPartition,
                               assert_faithful: bool = False) -> ActionHomomorphism:
    """Action of G on alternets; ``.image_group`` is the induced group and
    ``.preimage`` pulls elements back."""
    check_preserves(P.digraph, G)
    first = [c[0] for c in P.classes]

    def image(g: Permutation) -> Permutation:
        img = g.images
        return Permutation([P.class_of[(img[u], img[v])] for u, v in first])

    hom = ActionHomomorphism(G, image, len(P))
    if assert_faithful and not hom.is_faithful():
        raise InvariantViolation("action on alternets is not faithful",
                                 {"|G|": G.order(), "|image|": hom.image_group.order()})
    return hom


def duplicate_class_semiregular(dg: Digraph) -> Permutation:
    """Cycle each class of vertices sharing in- and out-neighbourhoods.

    Members of a class are interchangeable, so the result is an
    automorphism; with classes of equal size c it is semiregular of order c.
    """
    classes: dict[tuple, list[int]] = {}
    for v in range(dg.n):
        classes.setdefault((dg.inn[v], dg.out[v]), []).append(v)
    sizes = {len(c) for c in classes.values()}
    if len(sizes) != 1 or sizes.pop() < 2:
        raise ClassesNotUniform(f"twin class sizes {sorted(len(c) for c in classes.values())}")
    img = list(range(dg.n))
    for members in classes.values():
        for a, b in zip(members, members[1:] + members[:1]):
            img[a] = b
    return Permutation(img)


def _index_two_kernel(G: PermGroup, sign) -> PermGroup:
    """Kernel of a homomorphism G -> {+1, -1} given on generators."""
    neg = [g for g in G.generators if sign(g) < 0]
    if not neg:
        return G
    t = neg[0]
    ti = t.inverse()
    gens = []
    for s in G.generators:
        if sign(s) > 0:
            gens += [s, t * s * ti]
        else:
            gens += [s * ti, t * s]
    return PermGroup(G.degree, gens)


def derive_orientation(graph: Graph, G: PermGroup, qd: QuotientData) -> tuple[Digraph, PermGroup]:
    """Orient ``graph`` along a cyclic quotient; return the digraph and the
    orientation-preserving subgroup of ``G``.

    ``qd`` must be the quotient computed with context group ``G``. The cycle
    is traversed so that quotient vertex 0 points to its smaller neighbour.
    """
    Q = qd.quotient
    if Q.n < 3 or Q.valency != 2 or not Q.is_connected():
        raise QuotientNotCycle(f"quotient with {Q.n} vertices is not a cycle")
    bo = qd.orbit_map
    for u, v in graph.edges():
        if bo[u] == bo[v]:
            raise IntraOrbitEdge(f"edge {(u, v)} lies inside one orbit")
    succ = [0] * Q.n
    prev, cur = 0, Q.adj[0][0]
    succ[0] = cur
    while cur != 0:
        a, b = Q.adj[cur]
        nxt = b if a == prev else a
        succ[cur] = nxt
        prev, cur = cur, nxt
    arcs = [(u, v) if succ[bo[u]] == bo[v] else (v, u) for u, v in graph.edges()]
    dg = Digraph(graph.n, arcs)

    def sign(g: Permutation) -> int:
        q = qd.projection(g).images
        return 1 if succ[q[0]] == q[succ[0]] else -1

    Gplus = _index_two_kernel(G, sign)
    state = {"|G|": G.order(), "|G+|": Gplus.order(), "quotient": Q.n}
    k = graph.valency
    arc_transitive = is_arc_transitive(graph, G)
    if arc_transitive and G.order() != 2 * Gplus.order():
        raise InvariantViolation("no orientation-reversing element in an arc-transitive group", state)
    if not dg.is_asymmetric() or not k or dg.out_valence != k // 2:
        raise InvariantViolation("orientation is not an asymmetric out-regular digraph", state)
    if arc_transitive and not is_digraph_arc_transitive(dg, Gplus):
        raise InvariantViolation("orientation-preserving subgroup is not arc-transitive", state)
    return dg, Gplus
