"""Semiregular automorphisms of arc-transitive graphs, with certificates."""
from .certificate import Certificate
from .errors import (BoundExceeded, InvariantViolation, NoSuchElement, PreconditionError,
                     SemiregError)
from .finder import (find_semiregular_4valent_solvable, find_semiregular_8valent,
                     find_semiregular_digraph4, lift_semiregular_coprime,
                     prime_filter_semiregular, semiregular_abelian_normal,
                     semiregular_prime_power_degree)
from .graphs import Digraph, Graph, corpus_pair
from .oracle import SearchReport, all_semiregular, brute_force_semiregular, verify_certificate
from .permcore import Partition, PermGroup, Permutation

__all__ = [
    "Certificate", "BoundExceeded", "InvariantViolation", "NoSuchElement",
    "PreconditionError", "SemiregError", "find_semiregular_4valent_solvable",
    "find_semiregular_8valent", "find_semiregular_digraph4", "lift_semiregular_coprime",
    "prime_filter_semiregular", "semiregular_abelian_normal",
    "semiregular_prime_power_degree", "Digraph", "Graph", "corpus_pair", "SearchReport",
    "all_semiregular", "brute_force_semiregular", "verify_certificate", "Partition",
    "PermGroup", "Permutation",
]
