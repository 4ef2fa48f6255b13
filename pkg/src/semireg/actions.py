"""Quotient graphs, kernels on orbit partitions and local actions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import InvariantViolation, NotInvariant, PreconditionError
from .graphs import Graph, check_preserves, is_arc_transitive
from .permcore import (BlockAction, Partition, PermGroup, Permutation,
                       is_semiregular_group, local_restriction)


@dataclass(frozen=True)
class QuotientData:
    quotient: Graph
    orbit_partition: Partition
    orbit_map: tuple[int, ...]
    induced_group: PermGroup
    kernel: PermGroup
    projection: Callable[[Permutation], Permutation] = field(repr=False)
    lift: Callable[[Permutation], Permutation | None] = field(repr=False)


def quotient_graph(graph: Graph, N: PermGroup, G: PermGroup | None = None,
                   check_theory: bool = True) -> QuotientData:
    """Quotient of ``graph`` by the orbits of ``N``, with the action of the
    context group ``G`` (default ``N``) on those orbits.

    Quotient vertices are the orbits ordered by their least element.
    """
    G = N if G is None else G
    check_preserves(graph, N)
    check_preserves(graph, G)
    part = N.orbit_partition()
    bo = part.block_of
    edges = {(min(bo[u], bo[v]), max(bo[u], bo[v])) for u, v in graph.edges() if bo[u] != bo[v]}
    quotient = Graph(len(part), edges)
    try:
        action = BlockAction(G, part)
    except NotInvariant:
        raise NotInvariant("N-orbits are not blocks of G; is N normal in G?") from None
    K = action.kernel()
    qd = QuotientData(quotient, part, bo, action.image_group, K, action.image, action.preimage)
    if check_theory:
        state = {"orbits": len(part), "|N|": N.order(), "|G|": G.order()}
        if graph.is_connected() and not quotient.is_connected():
            raise InvariantViolation("quotient of a connected graph is disconnected", state)
        if not N.is_subgroup_of(K):
            raise InvariantViolation("kernel does not contain N", state)
        k = graph.valency
        if len(part) >= 3 and k and is_arc_transitive(graph, G):
            qk = quotient.valency
            if not qk or qk < 2 or k % qk:
                raise InvariantViolation("quotient valency does not divide the valency",
                                         {**state, "valency": k, "quotient valency": qk})
    return qd


def local_action(graph: Graph, G: PermGroup, v: int, arc_transitive: bool = False) -> PermGroup:
    """The group induced by the stabilizer of ``v`` on its neighbourhood,
    with neighbours relabelled 0..k-1 in increasing order."""
    check_preserves(graph, G)
    L = local_restriction(G, v, graph.adj[v])
    if arc_transitive and not L.is_transitive():
        raise InvariantViolation("local action of an arc-transitive group is intransitive",
                                 {"vertex": v, "|G|": G.order()})
    return L


def check_same_valency_semiregular(graph: Graph, N: PermGroup, qd: QuotientData) -> bool:
    """If the quotient keeps the valency, the kernel is N and N is
    semiregular; report whether that case applies."""
    if len(qd.orbit_partition) < 3:
        raise PreconditionError("N must have at least three orbits")
    if qd.quotient.valency != graph.valency:
        return False
    K = qd.kernel
    if not (K.order() == N.order() and N.is_subgroup_of(K) and is_semiregular_group(N)):
        raise InvariantViolation("same-valency quotient but kernel differs from N or N fixes points",
                                 {"|K|": K.order(), "|N|": N.order()})
    return True
