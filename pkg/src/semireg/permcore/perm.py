"""Permutations of {0, ..., n-1} stored as image tuples.

Products act left to right: ``a * b`` applies ``a`` first, then ``b``.
"""
from __future__ import annotations

import math
import re
from functools import lru_cache, reduce

from ..errors import DegreeMismatch


@lru_cache(maxsize=64)
def _identity_images(n: int) -> tuple:
    return tuple(range(n))


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        if not images:
            raise ValueError("degree must be positive")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _raw(cls, images: tuple) -> "Permutation":
        # trusted constructor for internal products
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles) -> "Permutation":
        """Build from 0-indexed cycles, e.g. ``[(0, 1, 2), (3, 4)]``."""
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            cyc = [int(x) for x in cyc]
            for x in cyc:
                if not 0 <= x < degree or x in seen:
                    raise ValueError(f"bad cycle {cyc} for degree {degree}")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.images < other.images

    def __mul__(self, other: "Permutation") -> "Permutation":
        b = other.images
        if len(b) != len(self.images):
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree} differ")
        return Permutation._raw(tuple(map(b.__getitem__, self.images)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation._raw(tuple(inv))

    def __invert__(self):
        return self.inverse()

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation._raw(tuple(range(len(self.images))))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, g: "Permutation") -> "Permutation":
        """Return ``g^-1 * self * g`` (maps g(x) to g(self(x)))."""
        img = [0] * len(self.images)
        gi = g.images
        for i, x in enumerate(self.images):
            img[gi[i]] = gi[x]
        return Permutation._raw(tuple(img))

    def commutator(self, other: "Permutation") -> "Permutation":
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return self.images == _identity_images(len(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_lengths(self) -> list[int]:
        return [len(c) for c in self.cycles(include_fixed=True)]

    def order(self) -> int:
        return reduce(math.lcm, self.cycle_lengths(), 1)

    def is_semiregular(self) -> bool:
        return len(set(self.cycle_lengths())) == 1

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def restrict(self, domain) -> "Permutation":
        """Action on an invariant ``domain``, relabelled by sorted order."""
        domain = sorted(domain)
        index = {x: i for i, x in enumerate(domain)}
        try:
            return Permutation([index[self.images[x]] for x in domain])
        except KeyError:
            raise ValueError("domain is not invariant") from None

    def extend(self, degree: int) -> "Permutation":
        return Permutation(self.images + tuple(range(len(self.images), degree)))

    def __repr__(self):
        return f"Permutation({format_cycles(self, one_indexed=False)}, degree={self.degree})"

    def __str__(self):
        return format_cycles(self, one_indexed=False)


def is_semiregular_element(p: Permutation) -> bool:
    """True iff all cycles, fixed points included, have equal length."""
    return p.is_semiregular()


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply ``a`` then ``b``."""
    return a * b


def format_cycles(p: Permutation, one_indexed: bool = True) -> str:
    """Disjoint-cycle string; 1-indexed comma form is the file format."""
    cyc = p.cycles()
    if not cyc:
        return "()"
    if one_indexed:
        return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cyc)
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cyc)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int, one_indexed: bool = True) -> Permutation:
    text = text.strip()
    if not text:
        raise ValueError("empty permutation string")
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"could not parse permutation {text!r}")
        pos = m.end()
        body = m.group(1).strip()
        if not body:
            continue
        pts = [int(x) for x in re.split(r"[,\s]+", body) if x]
        if one_indexed:
            pts = [x - 1 for x in pts]
        cycles.append(pts)
    if text[pos:].strip():
        raise ValueError(f"could not parse permutation {text!r}")
    return Permutation.from_cycles(degree, cycles)
