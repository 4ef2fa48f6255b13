"""Structural algorithms on permutation groups."""
from __future__ import annotations

import enum
import math

from ..errors import (BoundExceeded, InvariantViolation, NoSuchElement,
                      NotInvariant, NotSolvable, NotTransitive, TrivialGroup,
                      WrongDegree)
from .bsgs import BSGS
from .group import DEFAULT_BUDGET, Partition, PermGroup
from .perm import Permutation


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def prime_power_base(n: int) -> int | None:
    """The prime ``p`` with ``n == p**k`` (k >= 1), else None."""
    fs = prime_factors(n)
    return fs[0] if len(fs) == 1 else None


def is_pi_number(n: int, primes) -> bool:
    return all(p in primes for p in prime_factors(n))


# -- closures -----------------------------------------------------------------

def normal_closure(G: PermGroup, seeds) -> PermGroup:
    """Smallest normal subgroup of ``G`` containing ``seeds``."""
    chain = BSGS(G.degree, [])
    gens = [s for s in seeds if chain.extend(s)]
    i = 0
    while i < len(gens):
        h = gens[i]
        i += 1
        for g in G.generators:
            c = h.conjugate(g)
            if chain.extend(c):
                gens.append(c)
    return PermGroup(G.degree, gens, _bsgs=chain)


def commutator_subgroup(G: PermGroup) -> PermGroup:
    gens = G.generators
    comms = [a.commutator(b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(G, comms)


def derived_series(G: PermGroup) -> list[PermGroup]:
    series = [G]
    while True:
        D = commutator_subgroup(series[-1])
        if D.order() == series[-1].order():
            return series
        series.append(D)


def is_solvable(G: PermGroup) -> bool:
    return derived_series(G)[-1].is_trivial()


# -- centre -------------------------------------------------------------------

def _centralizer_of_transitive(G: PermGroup) -> list[Permutation]:
    """Elements of Sym(n) commuting with a transitive G.

    Such an element is fixed by its image of 0, and that image must be
    a fixed point of the stabilizer of 0.
    """
    n = G.degree
    chain = G.bsgs_with_base([0])
    trans = chain.trans[0]
    stab_gens = chain.tail(1).strong_generators()
    out = []
    for x in range(n):
        if any(s.images[x] != x for s in stab_gens):
            continue
        img = [0] * n
        for y, u in trans.items():
            img[y] = u.images[x]
        if sorted(img) != list(range(n)):
            continue
        c = Permutation(img)
        if all(c * g == g * c for g in G.generators):
            out.append(c)
    return out


def center(G: PermGroup, budget: int = DEFAULT_BUDGET) -> PermGroup:
    if G.is_trivial():
        return G
    if G.is_transitive():
        cands = _centralizer_of_transitive(G)
        return PermGroup(G.degree, [c for c in cands if G.contains(c)])
    zs = [g for g in G.elements(budget)
          if all(g * h == h * g for h in G.generators)]
    return PermGroup(G.degree, zs)


# -- elements of prime order and Sylow subgroups ------------------------------

def element_of_order_p(G: PermGroup, p: int, budget: int = DEFAULT_BUDGET) -> Permutation:
    """Element of order exactly p: the first generator, then the first
    element in enumeration order, whose order is divisible by p, powered
    down. Past ``scan`` elements the first element of a Sylow p-subgroup is
    used instead, since p-elements can be rare early in the enumeration."""
    if G.order() % p:
        raise NoSuchElement(f"{p} does not divide |G| = {G.order()}")
    for g in G.generators:
        o = g.order()
        if o % p == 0:
            return g ** (o // p)
    scan = min(budget, _ORDER_P_SCAN)
    for count, g in enumerate(G.elements()):
        if count >= scan:
            break
        o = g.order()
        if o % p == 0:
            return g ** (o // p)
    x = sylow_subgroup(G, p, budget).first_nonidentity()
    o = x.order()
    return x ** (o // p)


_ORDER_P_SCAN = 10_000


def _wreath_sylow_sym(n: int, p: int) -> list[Permutation]:
    """Generators of a Sylow p-subgroup of Sym(n): iterated wreath products
    on consecutive chunks given by the base-p digits of n."""
    gens = []
    start = 0
    digits = []
    m = n
    while m:
        digits.append(m % p)
        m //= p
    chunks = []
    for e in range(len(digits) - 1, -1, -1):
        for _ in range(digits[e]):
            chunks.append(e)
    for e in chunks:
        size = p ** e
        for j in range(1, e + 1):
            span, step = p ** j, p ** (j - 1)
            img = list(range(n))
            for x in range(span):
                img[start + x] = start + (x + step) % span
            gens.append(Permutation(img))
        start += size
    return gens


def _even_part(gens: list[Permutation]) -> list[Permutation]:
    """Schreier generators of the even-permutation subgroup."""
    odd = [g for g in gens if not g.is_even()]
    if not odd:
        return list(gens)
    t = odd[0]
    ti = t.inverse()
    out = []
    for s in gens:
        if s.is_even():
            out += [s, t * s * ti]
        else:
            out += [s * ti, t * s]
    return [g for g in out if not g.is_identity()]


def _normalizer_ascent(G: PermGroup, p: int, target: int, budget: int) -> PermGroup:
    if G.order() > budget:
        raise BoundExceeded(f"Sylow search over |G| = {G.order()} exceeds budget {budget}")
    P = PermGroup.trivial(G.degree)
    members = {P.identity}
    while len(members) < target:
        found = None
        for g in G.elements():
            if g in members:
                continue
            if any(x.conjugate(g) not in members for x in P.generators):
                continue
            r, h = 1, g
            while h not in members:
                h = h * g
                r += 1
            if r % p == 0:
                found = g ** (r // p)
                break
        if found is None:
            raise InvariantViolation("normalizer ascent stalled", {"p": p, "|P|": len(members)})
        P = PermGroup(G.degree, P.generators + (found,))
        members = set(P.elements())
    return P


def sylow_subgroup(G: PermGroup, p: int, budget: int = DEFAULT_BUDGET) -> PermGroup:
    order = G.order()
    target = p_part(order, p)
    if target == 1:
        return PermGroup.trivial(G.degree)
    if target == order:
        return G
    # a point in an orbit of length prime to p has a stabilizer of full p-part
    for o in G.orbits():
        if len(o) > 1 and len(o) % p:
            return sylow_subgroup(G.stabilizer(o[0]), p, budget)
    moved = [o for o in G.orbits() if len(o) > 1]
    if not G.is_transitive():
        # direct product of its orbit restrictions: Sylow orbit by orbit
        parts = [G.restrict(o) for o in moved]
        if math.prod(H.order() for H in parts) == order:
            gens = []
            for o, H in zip(moved, parts):
                for s in sylow_subgroup(H, p, budget).generators:
                    img = list(range(G.degree))
                    for i, x in enumerate(o):
                        img[x] = o[s.images[i]]
                    gens.append(Permutation(img))
            return PermGroup(G.degree, gens)
        return _normalizer_ascent(G, p, target, budget)
    n = G.degree
    if order in (math.factorial(n), math.factorial(n) // 2):
        gens = _wreath_sylow_sym(n, p)
        if order != math.factorial(n):
            gens = _even_part(gens)
        S = PermGroup(n, gens)
        if S.order() != target or not S.is_subgroup_of(G):
            raise InvariantViolation("explicit Sylow construction failed", {"n": n, "p": p})
        return S
    return _normalizer_ascent(G, p, target, budget)


# -- blocks -------------------------------------------------------------------

def _block_system_from_seed(G: PermGroup, a: int, b: int) -> list[int]:
    parent = list(range(G.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(b)] = find(a)
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        for g in G.generators:
            rx, ry = find(g.images[x]), find(g.images[y])
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
                queue.append((rx, ry))
    return [find(x) for x in range(G.degree)]


def minimal_blocks(G: PermGroup) -> Partition | None:
    """A minimal non-trivial block system, or None when G is primitive."""
    if not G.is_transitive():
        raise NotTransitive("block systems are defined for transitive groups")
    n = G.degree
    best = None
    for x in range(1, n):
        roots = _block_system_from_seed(G, 0, x)
        size = roots.count(roots[0])
        if size < n and (best is None or size < best[0]):
            best = (size, roots)
    if best is None:
        return None
    groups: dict[int, list[int]] = {}
    for x, r in enumerate(best[1]):
        groups.setdefault(r, []).append(x)
    return Partition.from_blocks(n, groups.values())


def is_primitive(G: PermGroup) -> bool:
    return minimal_blocks(G) is None


class Degree8Class(enum.Enum):
    PRIMITIVE = "Primitive"
    IMPRIMITIVE_TWO_THREE = "ImprimitiveTwoThree"


def classify_transitive_degree8(G: PermGroup) -> Degree8Class:
    if G.degree != 8:
        raise WrongDegree(f"degree {G.degree} != 8")
    blocks = minimal_blocks(G)
    if blocks is None:
        return Degree8Class.PRIMITIVE
    if not is_pi_number(G.order(), (2, 3)):
        raise InvariantViolation(
            "imprimitive transitive group of degree 8 is not a {2,3}-group",
            {"order": G.order(), "generators": [str(g) for g in G.generators]},
        )
    return Degree8Class.IMPRIMITIVE_TWO_THREE


# -- normal structure ---------------------------------------------------------

def _torsion_subgroup(A: PermGroup, q: int, budget: int) -> PermGroup:
    gens = []
    chain = BSGS(A.degree, [])
    for a in A.elements(budget):
        if not a.is_identity() and (a ** q).is_identity() and chain.extend(a):
            gens.append(a)
    return PermGroup(A.degree, gens, _bsgs=chain)


class _FqModule:
    """An elementary abelian q-group as a vector space over F_q, with G
    acting by conjugation."""

    def __init__(self, B: PermGroup, G: PermGroup, q: int, budget: int):
        self.q = q
        self.basis = []
        span = BSGS(B.degree, [])
        for b in B.generators:
            if span.extend(b):
                self.basis.append(b)
        self.dim = len(self.basis)
        if q ** self.dim > budget:
            raise BoundExceeded(f"module of size {q}^{self.dim} exceeds budget {budget}")
        # discrete log table: element -> coordinate vector
        self.identity = B.identity
        self.coords = {B.identity: (0,) * self.dim}
        for i, b in enumerate(self.basis):
            powers = [b ** c for c in range(1, q)]
            new = {}
            for x, v in self.coords.items():
                for c, bp in enumerate(powers, 1):
                    new[x * bp] = v[:i] + (c,) + v[i + 1:]
            self.coords.update(new)
        self.mats = [[self.coords[b.conjugate(g)] for b in self.basis] for g in G.generators]

    def act(self, mat, v):
        q, out = self.q, [0] * self.dim
        for c, col in zip(v, mat):
            if c:
                for j, x in enumerate(col):
                    out[j] = (out[j] + c * x) % q
        return tuple(out)

    def _reduce(self, echelon, v):
        q = self.q
        v = list(v)
        for p, b in echelon:
            c = v[p]
            if c:
                v = [(x - c * y) % q for x, y in zip(v, b)]
        return v

    def spin(self, v) -> list[tuple]:
        """Basis of the smallest invariant subspace containing ``v``."""
        q = self.q
        echelon: list[tuple[int, list]] = []
        queue = [tuple(v)]
        while queue:
            w = self._reduce(echelon, queue.pop())
            p = next((i for i, x in enumerate(w) if x), None)
            if p is None:
                continue
            inv = pow(w[p], q - 2, q)
            w = [x * inv % q for x in w]
            echelon.append((p, w))
            echelon.sort(key=lambda t: t[0])
            new = tuple(w)
            queue.extend(self.act(m, new) for m in self.mats)
        return [tuple(b) for _, b in echelon]

    def element(self, v) -> Permutation:
        g = self.identity
        for c, b in zip(v, self.basis):
            if c:
                g = g * b ** c
        return g


def minimal_normal_subgroup(G: PermGroup, budget: int = DEFAULT_BUDGET) -> PermGroup:
    """An elementary abelian minimal normal subgroup of a solvable group.

    Takes the last non-trivial derived term A, its q-torsion B for the
    smallest prime q dividing |A|, and views B as an F_q[G]-module. Vectors
    are spun in the enumeration order of the current submodule; the first
    that spins to a proper submodule replaces it, until every vector spins
    to the whole submodule.
    """
    if G.is_trivial():
        raise TrivialGroup("the trivial group has no minimal normal subgroup")
    series = derived_series(G)
    if not series[-1].is_trivial():
        raise NotSolvable(f"derived series stops at order {series[-1].order()}")
    A = series[-2]
    q = prime_factors(A.order())[0]
    B = _torsion_subgroup(A, q, budget)
    module = _FqModule(B, G, q, budget)
    M = B
    dim = module.dim
    while True:
        for b in M.elements():
            if b.is_identity():
                continue
            sub = module.spin(module.coords[b])
            if len(sub) < dim:
                dim = len(sub)
                M = PermGroup(G.degree, [module.element(v) for v in sub])
                break
        else:
            return M


def conjugacy_class(G: PermGroup, g: Permutation) -> set[Permutation]:
    seen = {g}
    queue = [g]
    for x in queue:
        for s in G.generators:
            y = x.conjugate(s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def is_quasiprimitive(G: PermGroup, budget: int = DEFAULT_BUDGET) -> bool:
    """Every non-trivial normal subgroup is transitive.

    Each such subgroup contains the normal closure of one of its elements, so
    checking one normal closure per conjugacy class suffices.
    """
    if not G.is_transitive():
        raise NotTransitive("quasiprimitivity is tested on transitive groups")
    if G.order() > budget:
        raise BoundExceeded(f"|G| = {G.order()} exceeds budget {budget}")
    covered = set()
    for g in G.elements():
        if g.is_identity() or g in covered:
            continue
        if not normal_closure(G, [g]).is_transitive():
            return False
        covered |= conjugacy_class(G, g)
    return True


# -- actions on partitions ----------------------------------------------------

class ActionHomomorphism:
    """The homomorphism from G to the permutations ``image_fn`` assigns.

    Internally G acts on its points plus the image points, with the image
    points first in the base; their pointwise stabilizer is the kernel and
    the transversals give preimages.
    """

    def __init__(self, G: PermGroup, image_fn, image_degree: int):
        self.group = G
        self.image = image_fn
        n, m = G.degree, image_degree
        self._n, self._m = n, m
        imgs = [image_fn(g) for g in G.generators]
        ext = [Permutation(g.images + tuple(n + x for x in q.images))
               for g, q in zip(G.generators, imgs)]
        # the extended action is faithful, so its order is |G|
        self._chain = BSGS.with_known_order(n + m, ext, G.order(), base_prefix=range(n, n + m))
        self.image_group = PermGroup(m, imgs)

    def preimage(self, q: Permutation) -> Permutation | None:
        n = self._n
        e = self._chain.element_with_base_images([n + q.images[i] for i in range(self._m)])
        return None if e is None else Permutation(e.images[:n])

    def kernel(self) -> PermGroup:
        tail = self._chain.tail(self._m)
        n = self._n
        return PermGroup(n, [Permutation(s.images[:n]) for s in tail.strong_generators()])

    def is_faithful(self) -> bool:
        return self.image_group.order() == self.group.order()


class BlockAction(ActionHomomorphism):
    """The action of G on the blocks of an invariant partition."""

    def __init__(self, G: PermGroup, partition: Partition):
        if partition.degree != G.degree:
            raise NotInvariant("partition degree differs from group degree")
        for g in G.generators:
            if not partition.is_invariant_under(g):
                raise NotInvariant(f"{g} does not preserve the partition")
        self.partition = partition
        super().__init__(G, partition.block_image, len(partition))


def kernel_on_partition(G: PermGroup, P: Partition) -> PermGroup:
    return BlockAction(G, P).kernel()


def induced_action_on_partition(G: PermGroup, P: Partition):
    """Return the group induced on blocks and the element map."""
    act = BlockAction(G, P)
    return act.image_group, act.image


def local_restriction(G: PermGroup, fixed: int, domain) -> PermGroup:
    """Group induced on ``domain`` by the stabilizer of ``fixed``."""
    H = G.stabilizer(fixed)
    dom = set(domain)
    for h in H.generators:
        if any(h.images[x] not in dom for x in dom):
            raise NotInvariant(f"stabilizer of {fixed} does not preserve the domain")
    return H.restrict(dom)
