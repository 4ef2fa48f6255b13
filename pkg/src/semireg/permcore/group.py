from __future__ import annotations

import threading
from dataclasses import dataclass, field

from ..errors import BoundExceeded, DegreeMismatch
from .bsgs import BSGS
from .perm import Permutation

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class Partition:
    degree: int
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...] = field(repr=False, compare=False)

    @classmethod
    def from_blocks(cls, degree: int, blocks) -> "Partition":
        """Normalise: each block sorted, blocks ordered by minimum element."""
        blocks = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0] if b else -1)
        block_of = [-1] * degree
        for i, b in enumerate(blocks):
            if not b:
                raise ValueError("empty block")
            for x in b:
                if not 0 <= x < degree or block_of[x] != -1:
                    raise ValueError("blocks overlap or fall outside the domain")
                block_of[x] = i
        if -1 in block_of:
            raise ValueError("blocks do not cover the domain")
        return cls(degree, tuple(blocks), tuple(block_of))

    def __len__(self):
        return len(self.blocks)

    def is_invariant_under(self, g: Permutation) -> bool:
        bo = self.block_of
        for b in self.blocks:
            target = bo[g.images[b[0]]]
            if any(bo[g.images[x]] != target for x in b):
                return False
        return True

    def block_image(self, g: Permutation) -> Permutation:
        bo = self.block_of
        return Permutation([bo[g.images[b[0]]] for b in self.blocks])


class PermGroup:
    """A permutation group given by generators.

    The stabilizer chain is built on first use and cached; building it is
    guarded by a lock so a shared group may be queried from several threads.
    """

    def __init__(self, degree: int, generators=(), *, _bsgs: BSGS | None = None):
        if degree < 1:
            raise ValueError("degree must be positive")
        gens = []
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a group of degree {degree}")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self._bsgs = _bsgs
        self._lock = threading.Lock()
        self._order = None

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, ())

    @classmethod
    def symmetric(cls, degree: int) -> "PermGroup":
        if degree == 1:
            return cls.trivial(1)
        return cls(degree, [Permutation.from_cycles(degree, [(0, 1)]),
                            Permutation.from_cycles(degree, [tuple(range(degree))])])

    @classmethod
    def alternating(cls, degree: int) -> "PermGroup":
        if degree < 3:
            return cls.trivial(degree)
        gens = [Permutation.from_cycles(degree, [(i, i + 1, i + 2)]) for i in range(degree - 2)]
        return cls(degree, gens)

    @classmethod
    def cyclic(cls, degree: int) -> "PermGroup":
        return cls(degree, [Permutation.from_cycles(degree, [tuple(range(degree))])]) if degree > 1 else cls.trivial(1)

    @property
    def bsgs(self) -> BSGS:
        if self._bsgs is None:
            with self._lock:
                if self._bsgs is None:
                    self._bsgs = BSGS(self.degree, self.generators)
        return self._bsgs

    def bsgs_with_base(self, prefix) -> BSGS:
        return BSGS.with_known_order(self.degree, self.generators, self.order(), base_prefix=prefix)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def order(self) -> int:
        if self._order is None:
            self._order = self.bsgs.order()
        return self._order

    def __len__(self):
        return self.order()

    def is_trivial(self) -> bool:
        return not self.generators

    def contains(self, g: Permutation) -> bool:
        return self.bsgs.contains(g)

    __contains__ = contains

    def elements(self, budget: int | None = None):
        """Enumerate in lexicographic base-image order.

        With a ``budget``, raise BoundExceeded before yielding anything when
        the group is larger than the budget.
        """
        if budget is not None and self.order() > budget:
            raise BoundExceeded(f"|G| = {self.order()} exceeds budget {budget}")
        return self.bsgs.elements()

    def first_nonidentity(self, predicate=None) -> Permutation | None:
        for g in self.elements():
            if g.is_identity():
                continue
            if predicate is None or predicate(g):
                return g
        return None

    def orbit(self, point: int) -> frozenset[int]:
        return frozenset(self.orbit_list(point))

    def orbit_list(self, point: int) -> list[int]:
        if not 0 <= point < self.degree:
            raise IndexError(point)
        seen = {point}
        out = [point]
        for x in out:
            for g in self.generators:
                y = g.images[x]
                if y not in seen:
                    seen.add(y)
                    out.append(y)
        return out

    def orbits(self) -> list[tuple[int, ...]]:
        done = [False] * self.degree
        out = []
        for p in range(self.degree):
            if not done[p]:
                o = self.orbit_list(p)
                for x in o:
                    done[x] = True
                out.append(tuple(sorted(o)))
        return out

    def orbit_partition(self) -> Partition:
        return Partition.from_blocks(self.degree, self.orbits())

    def is_transitive(self) -> bool:
        return len(self.orbit_list(0)) == self.degree

    def transversal_element(self, src: int, dst: int) -> Permutation | None:
        """Some element mapping ``src`` to ``dst`` (deterministic)."""
        b = self.bsgs_with_base([src])
        return b.trans[0].get(dst)

    def stabilizer(self, point: int) -> "PermGroup":
        b = self.bsgs_with_base([point])
        tail = b.tail(1)
        return PermGroup(self.degree, tail.strong_generators(), _bsgs=tail)

    def pointwise_stabilizer(self, points) -> "PermGroup":
        pts = list(dict.fromkeys(points))
        b = self.bsgs_with_base(pts)
        tail = b.tail(len(pts))
        return PermGroup(self.degree, tail.strong_generators(), _bsgs=tail)

    def subgroup(self, generators) -> "PermGroup":
        return PermGroup(self.degree, generators)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: "PermGroup") -> bool:
        return self.order() == other.order() and self.is_subgroup_of(other)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def is_normal_in(self, G: "PermGroup") -> bool:
        return all(self.contains(h.conjugate(g)) for h in self.generators for g in G.generators)

    def restrict(self, domain) -> "PermGroup":
        domain = sorted(domain)
        return PermGroup(len(domain), [g.restrict(domain) for g in self.generators])

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"PermGroup(degree={self.degree}, <{gens}>)"


def orbit(G: PermGroup, point: int) -> frozenset[int]:
    return G.orbit(point)


def orbit_partition(G: PermGroup) -> Partition:
    return G.orbit_partition()


def group_order(G: PermGroup) -> int:
    return G.order()


def stabilizer(G: PermGroup, point: int) -> PermGroup:
    return G.stabilizer(point)


def is_semiregular_group(G: PermGroup) -> bool:
    """Every point stabilizer is trivial, i.e. each orbit has size |G|."""
    n = G.order()
    return all(len(o) == n for o in G.orbits())
