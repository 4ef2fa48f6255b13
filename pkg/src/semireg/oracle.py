"""Brute-force ground truth: exhaustive semiregular search and certificate
verification. Nothing here calls into the finder."""
from __future__ import annotations

from dataclasses import dataclass

from .certificate import Certificate
from .errors import BoundExceeded
from .permcore import DEFAULT_BUDGET, PermGroup, Permutation, format_cycles


@dataclass(frozen=True)
class SearchReport:
    found: Permutation | None
    elements_scanned: int
    budget: int
    exhausted: bool

    @property
    def budget_exceeded(self) -> bool:
        return self.found is None and not self.exhausted

    def to_dict(self) -> dict:
        return {
            "format": 1,
            "found": None if self.found is None else format_cycles(self.found),
            "degree": None if self.found is None else self.found.degree,
            "elements_scanned": self.elements_scanned,
            "budget": self.budget,
            "exhausted": self.exhausted,
            "budget_exceeded": self.budget_exceeded,
        }


def _cycle_lengths(images) -> list[int]:
    # deliberately independent of Permutation.cycles
    n = len(images)
    seen = bytearray(n)
    out = []
    for i in range(n):
        if not seen[i]:
            length, j = 0, i
            while not seen[j]:
                seen[j] = 1
                j = images[j]
                length += 1
            out.append(length)
    return out


def _is_fpf_semiregular(images) -> bool:
    lengths = _cycle_lengths(images)
    return lengths[0] > 1 and all(x == lengths[0] for x in lengths)


def brute_force_semiregular(G: PermGroup, budget: int = DEFAULT_BUDGET) -> SearchReport:
    """First non-identity semiregular element in base-image order."""
    scanned = 0
    for g in G.elements():
        if scanned >= budget:
            return SearchReport(None, scanned, budget, False)
        scanned += 1
        if _is_fpf_semiregular(g.images):
            return SearchReport(g, scanned, budget, False)
    return SearchReport(None, scanned, budget, True)


def all_semiregular(G: PermGroup, budget: int = DEFAULT_BUDGET) -> list[Permutation]:
    if G.order() > budget:
        raise BoundExceeded(f"|G| = {G.order()} exceeds budget {budget}")
    return [g for g in G.elements() if _is_fpf_semiregular(g.images)]


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: str = "ok"

    def __bool__(self):
        return self.ok


def check_element(element: Permutation, G: PermGroup, graph=None) -> VerifyResult:
    if element.degree != G.degree or (graph is not None and element.degree != graph.n):
        return VerifyResult(False, "DegreeMismatch")
    lengths = _cycle_lengths(element.images)
    if lengths[0] == 1 and all(x == 1 for x in lengths):
        return VerifyResult(False, "NonIdentity")
    if any(x != lengths[0] for x in lengths):
        return VerifyResult(False, "NotSemiregular")
    # fresh chain so a stale cache cannot vouch for the element
    if not PermGroup(G.degree, G.generators).contains(element):
        return VerifyResult(False, "NotMember")
    if graph is not None and not graph.is_automorphism(element):
        return VerifyResult(False, "NotAutomorphism")
    return VerifyResult(True)


def verify_certificate(cert: Certificate, graph, G: PermGroup) -> VerifyResult:
    """Re-check a certificate against a graph (or digraph) and group."""
    res = check_element(cert.element, G, graph)
    if not res:
        return res
    lengths = _cycle_lengths(cert.element.images)
    if cert.cycle_length != lengths[0]:
        return VerifyResult(False, "CycleLengthMismatch")
    if cert.order != lengths[0]:
        # a semiregular element's order is its common cycle length
        return VerifyResult(False, "OrderMismatch")
    return VerifyResult(True)
