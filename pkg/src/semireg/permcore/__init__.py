"""Permutation-group engine."""
from .algorithms import (ActionHomomorphism, BlockAction, Degree8Class, center, classify_transitive_degree8,
                         commutator_subgroup, conjugacy_class, derived_series,
                         element_of_order_p, induced_action_on_partition, is_pi_number,
                         is_prime, is_primitive, is_quasiprimitive, is_solvable,
                         kernel_on_partition, local_restriction, minimal_blocks,
                         minimal_normal_subgroup, normal_closure, p_part, prime_factors,
                         prime_power_base, sylow_subgroup)
from .group import (DEFAULT_BUDGET, Partition, PermGroup, group_order, is_semiregular_group,
                    orbit, orbit_partition, stabilizer)
from .perm import Permutation, compose, format_cycles, is_semiregular_element, parse_cycles

__all__ = [
    "ActionHomomorphism", "BlockAction", "DEFAULT_BUDGET", "Degree8Class", "Partition", "PermGroup", "Permutation",
    "center", "classify_transitive_degree8", "commutator_subgroup", "compose",
    "conjugacy_class", "derived_series", "element_of_order_p", "format_cycles",
    "group_order", "induced_action_on_partition", "is_pi_number", "is_prime", "is_primitive",
    "is_quasiprimitive", "is_semiregular_element", "is_semiregular_group", "is_solvable",
    "kernel_on_partition", "local_restriction", "minimal_blocks", "minimal_normal_subgroup",
    "normal_closure", "orbit", "orbit_partition", "p_part", "parse_cycles", "prime_factors",
    "prime_power_base", "stabilizer", "sylow_subgroup",
]
