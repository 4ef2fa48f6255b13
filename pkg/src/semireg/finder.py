"""Semiregular-element constructors and the recursive searches built on them.

Every public function returns a :class:`Certificate` whose element has been
re-checked (non-identity, uniform cycles, membership, and automorphism of
the graph when one is given) before ``verified`` is set.
"""
from __future__ import annotations

from math import gcd

from .actions import quotient_graph, local_action
from .alternets import (ClassesNotUniform, alternet_digraph, alternet_partition,
                        derive_orientation, duplicate_class_semiregular,
                        induced_group_on_alternets, is_complete_bipartite,
                        is_degenerate, is_loosely_attached)
from .certificate import Certificate
from .errors import (BoundExceeded, InvariantViolation, NotSolvable, NotTransitive,
                     PreconditionError, TrivialGroup)
from .graphs import (Digraph, Graph, check_preserves, is_arc_transitive,
                     is_digraph_arc_transitive)
from .oracle import brute_force_semiregular, check_element
from .permcore import (DEFAULT_BUDGET, BlockAction, Degree8Class, Partition, PermGroup,
                       Permutation, center, classify_transitive_degree8,
                       element_of_order_p, is_pi_number, is_prime, is_quasiprimitive,
                       is_semiregular_group, is_solvable, minimal_normal_subgroup,
                       prime_factors, prime_power_base, sylow_subgroup)

__all__ = [
    "Certificate", "DegreeNotPrimePower", "TooManyOrbits", "NotNormal", "NotAbelian",
    "NotCoprime", "ImageNotSemiregular", "NotFaithful", "OracleBoundExceeded",
    "semiregular_prime_power_degree", "semiregular_abelian_normal",
    "lift_semiregular_coprime", "prime_filter_semiregular",
    "find_semiregular_4valent_solvable", "find_semiregular_digraph4",
    "find_semiregular_8valent",
]


class DegreeNotPrimePower(PreconditionError):
    pass


class TooManyOrbits(PreconditionError):
    pass


class NotNormal(PreconditionError):
    pass


class NotAbelian(PreconditionError):
    pass


class NotCoprime(PreconditionError):
    pass


class ImageNotSemiregular(PreconditionError):
    pass


class NotFaithful(PreconditionError):
    pass


class OracleBoundExceeded(BoundExceeded):
    pass


def _certify(G: PermGroup, element: Permutation, trace, graph=None) -> Certificate:
    res = check_element(element, G, graph)
    if not res:
        raise InvariantViolation("constructed element failed verification",
                                 {"reason": res.reason, "element": element,
                                  "|G|": G.order(), "trace": list(trace)})
    length = element.cycle_lengths()[0]
    return Certificate(element, element.order(), length, tuple(trace), True)


def _is_two_power(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _require_transitive(G: PermGroup) -> None:
    if not G.is_transitive():
        raise NotTransitive(f"group of degree {G.degree} is not transitive")


# -- building blocks -----------------------------------------------------------

def semiregular_prime_power_degree(G: PermGroup, trace=(),
                                   budget: int = DEFAULT_BUDGET) -> Certificate:
    """A non-identity central element of a Sylow p-subgroup, for degree p^k."""
    p = prime_power_base(G.degree)
    if p is None:
        raise DegreeNotPrimePower(f"degree {G.degree} is not a prime power")
    _require_transitive(G)
    S = sylow_subgroup(G, p, budget)
    state = {"degree": G.degree, "p": p, "|G|": G.order(), "|S|": S.order()}
    if not S.is_transitive():
        raise InvariantViolation("Sylow subgroup of a prime-power degree group is intransitive", state)
    z = center(S, budget).first_nonidentity()
    if z is None:
        raise InvariantViolation("p-group with trivial centre", state)
    if not z.is_semiregular():
        raise InvariantViolation("central element of a transitive p-group fixes points",
                                 {**state, "z": z})
    return _certify(G, z, [*trace, "PrimePowerDegree"])


def semiregular_abelian_normal(G: PermGroup, N: PermGroup, trace=()) -> Certificate:
    """Non-identity semiregular element of an abelian normal subgroup with
    at most two orbits."""
    _require_transitive(G)
    if N.order() == 1:
        raise TrivialGroup("N is trivial")
    if not N.is_abelian():
        raise NotAbelian("N is not abelian")
    if not N.is_normal_in(G):
        raise NotNormal("N is not a normal subgroup of G")
    orbits = N.orbits()
    if len(orbits) > 2:
        raise TooManyOrbits(f"N has {len(orbits)} orbits")
    if is_semiregular_group(N):
        x = N.first_nonidentity()
    else:
        for v in range(G.degree):
            n = N.stabilizer(v).first_nonidentity()
            if n is not None:
                break
        inside = set(N.orbit(v))
        u = min(x for x in range(G.degree) if x not in inside)
        g = G.transversal_element(v, u)
        x = n * n.conjugate(g)
        if x.is_identity() or not x.is_semiregular():
            raise InvariantViolation("n * n^g is not a non-identity semiregular element",
                                     {"n": n, "g": g, "x": x, "orbits": orbits})
    return _certify(G, x, [*trace, "AbelianNormal"])


def lift_semiregular_coprime(G: PermGroup, K: PermGroup, g: Permutation, P: Partition,
                             trace=()) -> Certificate:
    """Lift ``g``, semiregular modulo K on the blocks ``P``, to a semiregular
    power of ``g`` of the same order as its image."""
    action = BlockAction(G, P)
    kernel = action.kernel()
    if kernel.order() != K.order() or not K.is_subgroup_of(kernel):
        raise NotFaithful("K is not the kernel of the action on the blocks")
    img = action.image(g)
    if img.is_identity() or not img.is_semiregular():
        raise ImageNotSemiregular(f"image {img} is not a non-identity semiregular permutation")
    m = img.order()
    if gcd(m, K.order()) != 1:
        raise NotCoprime(f"gcd({m}, |K| = {K.order()}) != 1")
    k = g ** m
    h = g ** k.order()
    state = {"g": g, "m": m, "k": k, "h": h}
    if not K.contains(k):
        raise InvariantViolation("g^m is not in K", state)
    if h.order() != m or not h.is_semiregular():
        raise InvariantViolation("lifted element is not semiregular of order m", state)
    return _certify(G, h, [*trace, "CoprimeLift"])


def prime_filter_semiregular(G: PermGroup, exclude=(), trace=(),
                             budget: int = DEFAULT_BUDGET) -> Certificate | None:
    """An element of prime order p where p divides |G| but not |G_v|.

    Such an element lies in no point stabilizer, so it is semiregular.
    """
    _require_transitive(G)
    stab = G.order() // G.degree
    for p in prime_factors(G.order()):
        if p in exclude or stab % p == 0:
            continue
        x = element_of_order_p(G, p, budget)
        if not x.is_semiregular():
            raise InvariantViolation("order-p element with p coprime to |G_v| fixes a point",
                                     {"p": p, "x": x})
        return _certify(G, x, [*trace, f"PrimeFilter({p})"])
    return None


# -- 4-valent solvable graphs --------------------------------------------------

def find_semiregular_4valent_solvable(graph: Graph, G: PermGroup, p: int, trace=(),
                                      budget: int = DEFAULT_BUDGET) -> Certificate:
    """Semiregular element of order exactly ``p`` for a solvable
    arc-transitive group of a connected 4-valent graph."""
    if not is_prime(p) or p == 2:
        raise PreconditionError(f"p = {p} is not an odd prime")
    if graph.valency != 4:
        raise PreconditionError(f"valency {graph.valency} != 4")
    if not graph.is_connected():
        raise PreconditionError("graph is disconnected")
    if graph.n % p:
        raise PreconditionError(f"{p} does not divide |V| = {graph.n}")
    if not is_arc_transitive(graph, G):
        raise PreconditionError("group is not arc-transitive")
    if not is_solvable(G):
        raise NotSolvable("group is not solvable")
    cert = _four_valent(graph, G, p, list(trace), budget)
    if cert.order != p:
        raise InvariantViolation("element order differs from p", {"p": p, "order": cert.order})
    return cert


def _four_valent(graph: Graph, G: PermGroup, p: int, trace: list, budget: int) -> Certificate:
    stab = G.order() // graph.n
    state = {"|V|": graph.n, "|G|": G.order(), "p": p, "trace": trace}
    if _is_two_power(stab):
        x = element_of_order_p(G, p, budget)
        if not x.is_semiregular():
            raise InvariantViolation("order-p element fixes a point with a 2-group stabilizer", state)
        return _certify(G, x, [*trace, "TwoGroupStabilizer"], graph)
    L = local_action(graph, G, 0, arc_transitive=True)
    if len(L.stabilizer(0).orbit(1)) != 3:
        raise InvariantViolation("local action is not 2-transitive", {**state, "|L|": L.order()})
    N = minimal_normal_subgroup(G, budget)
    q = prime_factors(N.order())[0]
    if len(N.orbits()) <= 2:
        if q != p:
            raise InvariantViolation("minimal normal subgroup with <= 2 orbits has order prime to p",
                                     {**state, "q": q})
        cert = semiregular_abelian_normal(G, N, trace)
        return _certify(G, cert.element, cert.branch_trace, graph)
    qd = quotient_graph(graph, N, G)
    if qd.quotient.valency != 4 or qd.kernel.order() != N.order() or not is_semiregular_group(N):
        raise InvariantViolation("4-valent quotient does not keep valency with kernel N",
                                 {**state, "quotient valency": qd.quotient.valency,
                                  "|K|": qd.kernel.order(), "|N|": N.order()})
    if q == p:
        return _certify(G, N.first_nonidentity(), [*trace, "SemiregularMinimalNormal"], graph)
    sub = _four_valent(qd.quotient, qd.induced_group, p, [*trace, "QuotientRecursion"], budget)
    g = qd.lift(sub.element)
    cert = lift_semiregular_coprime(G, qd.kernel, g, qd.orbit_partition, sub.branch_trace)
    return _certify(G, cert.element, cert.branch_trace, graph)


# -- out-valence 4 digraphs ----------------------------------------------------

def _check_digraph(dg: Digraph, G: PermGroup, err) -> None:
    if dg.out_valence != 4:
        raise err(f"out-valence {dg.out_valence} != 4")
    if not dg.is_asymmetric():
        raise err("digraph is not asymmetric")
    if not dg.is_connected():
        raise err("digraph is disconnected")
    check_preserves(dg, G)
    if not is_digraph_arc_transitive(dg, G):
        raise err("group is not arc-transitive on the digraph")


def find_semiregular_digraph4(dg: Digraph, G: PermGroup, depth: int = 0, trace=(),
                              budget: int = DEFAULT_BUDGET) -> Certificate:
    """Semiregular automorphism of a connected asymmetric arc-transitive
    digraph of out-valence 4, recursing through the digraph of alternets."""
    # hypotheses of recursive calls are consequences of the top-level ones
    _check_digraph(dg, G, PreconditionError if depth == 0 else
                   (lambda msg: InvariantViolation(msg, {"depth": depth})))
    if not dg.is_strongly_connected():
        raise InvariantViolation("vertex-transitive digraph is not strongly connected",
                                 {"depth": depth})
    trace = [*trace, f"DigraphRecursion({depth})"]
    state = {"depth": depth, "|V|": dg.n, "|G|": G.order(), "trace": trace}

    cert = prime_filter_semiregular(G, trace=trace, budget=budget)
    if cert is not None:
        return _certify(G, cert.element, cert.branch_trace, dg)
    if _is_two_power(G.order() // dg.n):
        if not _is_two_power(dg.n):
            raise InvariantViolation("2-group stabilizer but |V| is not a power of 2", state)
        cert = semiregular_prime_power_degree(G, trace, budget)
        return _certify(G, cert.element, cert.branch_trace, dg)
    if not is_solvable(G):
        raise InvariantViolation("group is not solvable", state)
    N = minimal_normal_subgroup(G, budget)
    if is_semiregular_group(N):
        return _certify(G, N.first_nonidentity(), [*trace, "SemiregularMinimalNormal"], dg)

    P = alternet_partition(dg)
    for i, c in enumerate(P.classes):
        if is_degenerate(c) or not is_complete_bipartite(c):
            raise InvariantViolation("alternet is degenerate or not complete bipartite",
                                     {**state, "alternet": i, "arcs": c})
    if not is_loosely_attached(P):
        try:
            x = duplicate_class_semiregular(dg)
        except ClassesNotUniform as exc:
            raise InvariantViolation(str(exc), state) from None
        if G.contains(x):
            return _certify(G, x, [*trace, "NotLooselyAttached"], dg)
        return _oracle(G, [*trace, "NotLooselyAttached", "OracleFallback"], budget, dg)

    quotient, _ = alternet_digraph(P)
    if quotient.n * 4 != dg.n:
        raise InvariantViolation("digraph of alternets does not shrink by a factor of 4",
                                 {**state, "alternets": quotient.n})
    hom = induced_group_on_alternets(G, P, assert_faithful=True)
    sub = find_semiregular_digraph4(quotient, hom.image_group, depth + 1, trace, budget)
    x = hom.preimage(sub.element)
    if not x.is_semiregular():
        raise InvariantViolation("pulled-back element is not semiregular",
                                 {**state, "element": x})
    return _certify(G, x, sub.branch_trace, dg)


def _oracle(G: PermGroup, trace, budget: int, graph=None) -> Certificate:
    report = brute_force_semiregular(G, budget)
    if report.found is None:
        if report.budget_exceeded:
            raise OracleBoundExceeded(f"no semiregular element in the first {budget} elements")
        raise InvariantViolation("group has no semiregular element",
                                 {"|G|": G.order(), "trace": list(trace)})
    return _certify(G, report.found, trace, graph)


# -- 8-valent graphs -----------------------------------------------------------

def find_semiregular_8valent(graph: Graph, G: PermGroup,
                             budget: int = DEFAULT_BUDGET) -> Certificate:
    """Non-identity semiregular automorphism in ``G`` for a connected
    8-valent graph on which ``G`` acts arc-transitively."""
    if not graph.is_connected():
        raise PreconditionError("graph is disconnected")
    if graph.valency != 8:
        raise PreconditionError(f"valency {graph.valency} ≠ 8")
    check_preserves(graph, G)
    if not is_arc_transitive(graph, G):
        raise PreconditionError("group is not arc-transitive on the graph")
    n = graph.n
    trace: list[str] = []

    if _is_two_power(n):
        cert = semiregular_prime_power_degree(G, trace, budget)
        return _certify(G, cert.element, cert.branch_trace, graph)

    L = local_action(graph, G, 0, arc_transitive=True)
    if is_quasiprimitive(L, budget):
        return _oracle(G, ["QuasiprimitiveOracle"], budget, graph)

    state = {"|V|": n, "|G|": G.order(), "|L|": L.order()}
    if classify_transitive_degree8(L) is not Degree8Class.IMPRIMITIVE_TWO_THREE:
        raise InvariantViolation("primitive local action is not quasiprimitive", state)
    if not is_pi_number(G.order() // n, (2, 3)):
        raise InvariantViolation("vertex stabilizer is not a {2,3}-group", state)
    if not is_solvable(G):
        # a {2,3}-group is solvable, so some other prime divides |G| but not |G_v|
        cert = prime_filter_semiregular(G, exclude=(2, 3), budget=budget)
        if cert is None:
            raise InvariantViolation("non-solvable group without a filter prime", state)
        return _certify(G, cert.element, cert.branch_trace, graph)

    N = minimal_normal_subgroup(G, budget)
    if len(N.orbits()) <= 2:
        cert = semiregular_abelian_normal(G, N, trace)
        return _certify(G, cert.element, cert.branch_trace, graph)
    if is_semiregular_group(N):
        return _certify(G, N.first_nonidentity(), ["SemiregularMinimalNormal"], graph)

    state["|N|"] = N.order()
    if not _is_two_power(N.order()):
        raise InvariantViolation("non-semiregular minimal normal subgroup is not a 2-group", state)
    qd = quotient_graph(graph, N, G)
    K = qd.kernel
    Q = qd.quotient
    state.update({"|K|": K.order(), "quotient": Q.n, "quotient valency": Q.valency})
    if Q.valency == 4:
        if not _is_two_power(K.order()):
            raise InvariantViolation("kernel on the quotient is not a 2-group", state)
        if _is_two_power(Q.n):
            raise InvariantViolation("quotient of a non-2-power graph has 2-power order", state)
        p = next(r for r in prime_factors(Q.n) if r != 2)
        sub = find_semiregular_4valent_solvable(Q, qd.induced_group, p,
                                                ["QuotientRecursion"], budget)
        g = qd.lift(sub.element)
        cert = lift_semiregular_coprime(G, K, g, qd.orbit_partition, sub.branch_trace)
        return _certify(G, cert.element, cert.branch_trace, graph)
    if Q.valency == 2:
        dg, Gplus = derive_orientation(graph, G, qd)
        cert = find_semiregular_digraph4(dg, Gplus, 0, trace, budget)
        return _certify(G, cert.element, cert.branch_trace, graph)
    # only reachable for a proper subgroup of the automorphism group; the
    # reduction has nothing to recurse on, so search directly
    return _oracle(G, ["OracleFallback"], budget, graph)
