"""Exact Kazhdan-Lusztig data and hom-filtration layers for finite Coxeter groups.

The package computes canonical-basis polynomials of finite Coxeter systems
by two independent algorithms, handles parabolic coset bookkeeping and the
dot-action block combinatorics of rational weights, and feeds the resulting
h-polynomials through a v-adic Smith-valuation engine that models the
graded filtration they induce.  Everything is exact: integer Laurent
polynomials, rational weights, no floating point anywhere.
"""

from .andersen import (
    AndersenReport,
    BlockDescriptor,
    andersen_layers,
    block_from_weight,
    cross_check,
    full_block_table,
)
from .characters import (
    StandardCharacter,
    TiltingCharacter,
    branch_multiplicities,
    bs_character,
    decompose_kl,
    nabla_hom_rank,
    reconstruct,
    tilting_character,
)
from .coxeter import (
    CoxeterSystem,
    Element,
    Weight,
    bruhat_leq,
    build_system,
    dot_action,
    enumerate_elements,
    integral_root_data,
    isotropy_groups,
    longest_element,
    subsystem_presentation,
)
from .errors import (
    DescentError,
    DomainError,
    InfiniteTypeError,
    InsufficientTruncationError,
    NegativeCoefficientError,
    NotDominantError,
    OwnerMismatchError,
    ParityError,
    RankDeficientError,
    UnsupportedSystemError,
)
from .filtration import (
    GradedSequenceModel,
    PSeries,
    PSeriesMatrix,
    default_truncation,
    gysin_model,
    pairing_layer_dims,
    smith_valuations,
)
from .hecke import (
    ClassicalKLTable,
    HeckeElement,
    KLTable,
    bar_involution,
    h_polynomial,
    kl_basis,
    kl_polynomial_recursive,
    mu,
    r_polynomials,
    std_mult_gen,
)
from .laurent import LaurentPoly, P_to_h, bar_dual, h_to_P
from .parabolic import Coset, CosetTable, coset_decomposition, coset_of, poincare_poly

__version__ = "0.1.0"

__all__ = [
    "AndersenReport",
    "BlockDescriptor",
    "ClassicalKLTable",
    "Coset",
    "CosetTable",
    "CoxeterSystem",
    "DescentError",
    "DomainError",
    "Element",
    "GradedSequenceModel",
    "HeckeElement",
    "InfiniteTypeError",
    "InsufficientTruncationError",
    "KLTable",
    "LaurentPoly",
    "NegativeCoefficientError",
    "NotDominantError",
    "OwnerMismatchError",
    "P_to_h",
    "ParityError",
    "PSeries",
    "PSeriesMatrix",
    "RankDeficientError",
    "StandardCharacter",
    "TiltingCharacter",
    "UnsupportedSystemError",
    "Weight",
    "andersen_layers",
    "bar_dual",
    "bar_involution",
    "block_from_weight",
    "branch_multiplicities",
    "bruhat_leq",
    "bs_character",
    "build_system",
    "coset_decomposition",
    "coset_of",
    "cross_check",
    "decompose_kl",
    "default_truncation",
    "dot_action",
    "enumerate_elements",
    "full_block_table",
    "gysin_model",
    "h_polynomial",
    "h_to_P",
    "integral_root_data",
    "isotropy_groups",
    "kl_basis",
    "kl_polynomial_recursive",
    "longest_element",
    "mu",
    "nabla_hom_rank",
    "pairing_layer_dims",
    "poincare_poly",
    "r_polynomials",
    "reconstruct",
    "smith_valuations",
    "std_mult_gen",
    "subsystem_presentation",
    "tilting_character",
]
