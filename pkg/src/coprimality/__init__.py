"""Coprime-pair densities with certified error bounds, residue-rectangle
witnesses, shift-invariance certificates, and a cylinder-set measure model."""

from .counting import (
    COPRIME_DENSITY,
    COPRIME_DENSITY_DECIMAL,
    DensityReport,
    count_coprime_brute,
    count_coprime_mobius,
    density,
    density_table,
)
from .crt import (
    CongruenceSystem,
    ShiftWitnessReport,
    crt_solve,
    shift_witness,
    verify_shift_witness,
)
from .errors import (
    BruteForceCapError,
    NonCoprimeModuliError,
    NormalizationLimitError,
    TableTooSmallError,
    UnsolvableCongruenceError,
)
from .measure import (
    CylinderSet,
    SetExpression,
    complement,
    contains,
    cylinder_measure,
    euler_product,
    intersect,
    measure,
    normalize,
    sample_coprime_estimate,
)
from .residue import (
    RectWitness,
    ResidueBoundReport,
    ResidueRect,
    construct_coprime_in_rect,
    lemma_shift_witness,
    r_count,
    rect_coprime_search,
    rect_nonempty_criterion,
    residue_upper_bound,
)
from .sieve import (
    MobiusTable,
    PrimeTable,
    build_mobius_table,
    build_prime_table,
    gcd,
    prime_factors,
)

__version__ = "0.1.0"

__all__ = [
    "COPRIME_DENSITY",
    "COPRIME_DENSITY_DECIMAL",
    "BruteForceCapError",
    "CongruenceSystem",
    "CylinderSet",
    "DensityReport",
    "MobiusTable",
    "NonCoprimeModuliError",
    "NormalizationLimitError",
    "PrimeTable",
    "RectWitness",
    "ResidueBoundReport",
    "ResidueRect",
    "SetExpression",
    "ShiftWitnessReport",
    "TableTooSmallError",
    "UnsolvableCongruenceError",
    "build_mobius_table",
    "build_prime_table",
    "complement",
    "construct_coprime_in_rect",
    "contains",
    "count_coprime_brute",
    "count_coprime_mobius",
    "crt_solve",
    "cylinder_measure",
    "density",
    "density_table",
    "euler_product",
    "gcd",
    "intersect",
    "lemma_shift_witness",
    "measure",
    "normalize",
    "prime_factors",
    "r_count",
    "rect_coprime_search",
    "rect_nonempty_criterion",
    "residue_upper_bound",
    "sample_coprime_estimate",
    "shift_witness",
    "verify_shift_witness",
]
