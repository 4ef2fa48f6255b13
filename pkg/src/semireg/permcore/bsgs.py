"""Deterministic Schreier-Sims.

A ``BSGS`` holds, per level ``i``, the base point ``base[i]``, the strong
generators fixing ``base[:i]`` pointwise and a transversal dict mapping each
point ``x`` of the basic orbit to an element sending ``base[i]`` to ``x``.
"""
from __future__ import annotations

import random

from .perm import Permutation


class BSGS:
    def __init__(self, degree: int, generators, base_prefix=()):
        self.degree = degree
        self.base: list[int] = []
        self.strong: list[list[Permutation]] = []
        self.trans: list[dict[int, Permutation]] = []
        self.trans_inv: list[dict[int, Permutation]] = []
        self._checked: list[set] = []
        self._identity = Permutation.identity(degree)
        for b in base_prefix:
            if b not in self.base:
                self._new_level(b)
        gens = []
        for g in generators:
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self._schreier_sims(gens)

    @classmethod
    def with_known_order(cls, degree: int, generators, order: int, base_prefix=(),
                         seed: int = 0) -> "BSGS":
        """Randomized Schreier-Sims for a group whose order is known.

        Random elements (product replacement, seeded, so runs repeat
        exactly) are sifted in until the chain reaches ``order``; no
        Schreier generators are checked, which is much cheaper on large
        degrees.
        """
        chain = cls(degree, [], base_prefix)
        gens = [g for g in generators if not g.is_identity()]
        for g in gens:
            chain._absorb(g)
        if not gens:
            return chain
        rng = random.Random(seed)
        slots = (gens * (10 // len(gens) + 1))[:max(10, len(gens))]
        acc = chain._identity
        for step in range(10**7):
            if chain.order() >= order:
                break
            i, j = rng.sample(range(len(slots)), 2) if len(slots) > 1 else (0, 0)
            slots[i] = slots[i] * slots[j] if rng.random() < 0.5 else slots[i] * slots[j].inverse()
            acc = acc * slots[i]
            if step >= 20:
                chain._absorb(acc)
        if chain.order() != order:
            raise ValueError(f"generators give order {chain.order()}, expected {order}")
        return chain

    def _absorb(self, g: Permutation) -> None:
        res, j = self.sift(g)
        if not res.is_identity():
            self._add_strong(res, 0, j)

    @classmethod
    def _from_levels(cls, degree, base, strong, trans, trans_inv):
        obj = object.__new__(cls)
        obj.degree = degree
        obj.base = list(base)
        obj.strong = [list(s) for s in strong]
        obj.trans = [dict(t) for t in trans]
        obj.trans_inv = [dict(t) for t in trans_inv]
        obj._checked = [set() for _ in base]
        obj._identity = Permutation.identity(degree)
        return obj

    def tail(self, start: int) -> "BSGS":
        """BSGS of the pointwise stabilizer of ``base[:start]``."""
        return BSGS._from_levels(
            self.degree, self.base[start:], self.strong[start:],
            self.trans[start:], self.trans_inv[start:],
        )

    def _new_level(self, point: int) -> None:
        self.base.append(point)
        self.strong.append([])
        self.trans.append({point: self._identity})
        self.trans_inv.append({point: self._identity})
        self._checked.append(set())

    def _extend_orbit(self, level: int) -> None:
        trans, tinv, gens = self.trans[level], self.trans_inv[level], self.strong[level]
        queue = list(trans)
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            ux = trans[x]
            for s in gens:
                y = s.images[x]
                if y not in trans:
                    u = ux * s
                    trans[y] = u
                    tinv[y] = u.inverse()
                    queue.append(y)

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Strip ``g`` through the chain; return residue and failing level."""
        for level in range(start, len(self.base)):
            x = g.images[self.base[level]]
            inv = self.trans_inv[level].get(x)
            if inv is None:
                return g, level
            g = g * inv
        return g, len(self.base)

    def _first_moved(self, g: Permutation) -> int:
        for i, x in enumerate(g.images):
            if i != x:
                return i
        raise AssertionError("identity has no moved point")

    def _add_strong(self, g: Permutation, first: int, last: int) -> None:
        if last == len(self.base):
            self._new_level(self._first_moved(g))
        for level in range(first, last + 1):
            self.strong[level].append(g)
            self._extend_orbit(level)

    def _schreier_sims(self, gens) -> None:
        for g in gens:
            if all(g.images[b] == b for b in self.base):
                self._new_level(self._first_moved(g))
        for level in range(len(self.base)):
            fixes = self.base[:level]
            self.strong[level] = [g for g in gens if all(g.images[b] == b for b in fixes)]
            self._extend_orbit(level)
        level = len(self.base) - 1
        while level >= 0:
            jumped = self._check_level(level)
            if jumped is None:
                level -= 1
            else:
                level = jumped

    def _check_level(self, level: int):
        trans, tinv, checked = self.trans[level], self.trans_inv[level], self._checked[level]
        for x in list(trans):
            ux = trans[x]
            for si, s in enumerate(self.strong[level]):
                if (x, si) in checked:
                    continue
                checked.add((x, si))
                y = s.images[x]
                h = ux * s * tinv[y]
                if h.is_identity():
                    continue
                res, j = self.sift(h, level + 1)
                if res.is_identity():
                    continue
                self._add_strong(res, level + 1, j)
                return j
        return None

    def extend(self, g: Permutation) -> bool:
        """Add ``g`` to the group; return False if it was already a member."""
        res, j = self.sift(g)
        if res.is_identity():
            return False
        self._add_strong(res, 0, min(j, len(self.base)))
        level = min(j, len(self.base) - 1)
        while level >= 0:
            jumped = self._check_level(level)
            level = level - 1 if jumped is None else jumped
        return True

    def order(self) -> int:
        out = 1
        for t in self.trans:
            out *= len(t)
        return out

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        res, _ = self.sift(g)
        return res.is_identity()

    def strong_generators(self) -> list[Permutation]:
        seen = []
        for gens in self.strong:
            for g in gens:
                if g not in seen:
                    seen.append(g)
        return seen

    def elements(self):
        """All elements, in lexicographic order of base images."""
        k = len(self.base)
        if k == 0:
            yield self._identity
            return
        base, trans = self.base, self.trans

        def walk(level, t):
            orbit = sorted(trans[level], key=t.images.__getitem__)
            if level == k - 1:
                for y in orbit:
                    yield trans[level][y] * t
                return
            for y in orbit:
                yield from walk(level + 1, trans[level][y] * t)

        yield from walk(0, self._identity)

    def element_with_base_images(self, images) -> Permutation | None:
        """Element whose image of ``base[i]`` is ``images[i]`` for the given
        prefix of levels, or None if no such element exists."""
        # g = u_m * ... * u_1, accumulated as t
        t = self._identity
        for level, target in enumerate(images):
            # need y with t(y) = target, i.e. y = t^-1(target)
            y = t.inverse().images[target]
            u = self.trans[level].get(y)
            if u is None:
                return None
            t = u * t
        return t
