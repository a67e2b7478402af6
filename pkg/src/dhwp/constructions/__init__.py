"""Construction stack: doubling, gadget factorizations, blow-up assemblies.

The public entry point is :func:`dhwp.constructions.solve.solve`, which
dispatches an instance through necessary-condition checks, the catalogue,
and the even/odd recursive constructions, falling back to exact search.
Every construction verifies its output before returning it.
"""

from .doubling import double_factorization
from .undirected import (
    kirkman_resolution,
    kotzig_one_factorization,
    walecki_hamilton,
)
from .gadgets import (
    blowup_cycle_factorization,
    gamma_factorization,
    pair_blowup_k2_factors,
)
from .equipartite import equipartite_cycle_factorization
from .feasibility import FeasibilityReport, check_necessary
from .assemble import composite_16_8_16, even_hwp, odd_hwp
from .solve import SolveResult, solve

__all__ = [
    "double_factorization",
    "kirkman_resolution",
    "kotzig_one_factorization",
    "walecki_hamilton",
    "blowup_cycle_factorization",
    "gamma_factorization",
    "pair_blowup_k2_factors",
    "equipartite_cycle_factorization",
    "FeasibilityReport",
    "check_necessary",
    "composite_16_8_16",
    "even_hwp",
    "odd_hwp",
    "SolveResult",
    "solve",
]
