"""Factorizations of interval exchange maps into restricted rotations,
interval swaps and commutators, each returned with its certificate."""

from .certificates import Commutator, Factor, Factorization, factor_iet, factor_kind, product
from .elementary import (
    adjacent_transpositions,
    conjugator_for_disjoint_swaps,
    cycle_swaps,
    default_rotation,
    default_swap,
    disjoint_rotations_to_swaps,
    finite_order_to_swaps,
    invariant_partition,
    rotation_step_reduce,
    rotations_factorization,
    rotations_for_description,
    small_swap_from_nontrivial,
    small_swap_threshold,
    swap_as_commutator,
)
from .kernel import (
    Rebase,
    balanced_rotations_factorization,
    balanced_to_swaps,
    is_balanced,
    rational_rank,
    rebase_nonneg_integer,
    rotation_commutator_to_swaps,
    rotation_pair_to_swaps,
    rotation_reduce_small,
    type_counts,
    zero_saf_to_commutators,
    zero_saf_to_swaps,
)
from .simplicity import (
    Conjugation,
    SimplicityWitness,
    SmallSwap,
    conjugate_same_type_small,
    refine_swap,
    simplicity_bound,
    simplicity_witness,
    small_swap,
)
