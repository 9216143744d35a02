"""Finite p-groups given by consistent power-commutator presentations."""

from .iso import Isomorphism, extend_homomorphism, is_isomorphic_bruteforce
from .presentation import (
    Collector,
    ConsistencyReport,
    Element,
    PcPresentation,
    consistency_test_words,
    is_prime,
)
from .quotient import QuotientMap, Relabeling, quotient_presentation, relabel
from .subgroups import (
    Subgroup,
    abelian_invariants,
    agemo,
    burnside_basis,
    center,
    closure,
    commutator_subgroup,
    exponent,
    frattini,
    from_element_set,
    gamma,
    generator_rank,
    intersection,
    is_abelian_subgroup,
    is_normal,
    jennings_dims,
    jennings_series,
    lower_central_series,
    nilpotency_class,
    normal_closure,
    power_subgroup,
    subgroup_closure,
    subgroup_frattini,
    subgroup_power_p,
    subgroup_product,
    trivial_subgroup,
    verbal_subgroups,
    whole_group,
)
from .table import GroupTable
from .checks import consistency_check, verify_power_commutator_identity
