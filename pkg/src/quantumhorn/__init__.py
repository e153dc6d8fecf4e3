"""Exact quantum Schubert calculus on Grassmannians and the eigenvalue
inequalities for products of special-unitary matrices.

The package computes classical and quantum Gromov-Witten numbers (two
independent engines), their generalized versions over generic bundles,
Witten weights and moduli dimensions, polyrigidity, and certifies which of
the resulting inequalities are irredundant with an exact rational LP.
"""

__version__ = "0.1.0"

from quantumhorn.schubert import (
    GwProblem,
    SchubertIndex,
    codim,
    degree_from_cycles,
    delta,
    grassmann_dual,
    index_to_partition,
    is_normalised,
    lambda_I,
    normalize_weights,
    partition_to_index,
    scale_index,
    scale_situation,
    shift_S,
)
from quantumhorn.gw import (
    DimensionMismatch,
    classical_intersection,
    f_of_N,
    fusion_oracle,
    generalized_gw,
    gw_dual,
    gw_invariant,
    horn_nonvanishing,
    lr_coefficient,
    transform_shift,
    transform_twist,
)

__all__ = [
    "__version__",
    "DimensionMismatch",
    "GwProblem",
    "SchubertIndex",
    "classical_intersection",
    "codim",
    "degree_from_cycles",
    "delta",
    "f_of_N",
    "fusion_oracle",
    "generalized_gw",
    "grassmann_dual",
    "gw_dual",
    "gw_invariant",
    "horn_nonvanishing",
    "index_to_partition",
    "is_normalised",
    "lambda_I",
    "lr_coefficient",
    "normalize_weights",
    "partition_to_index",
    "scale_index",
    "scale_situation",
    "shift_S",
    "transform_shift",
    "transform_twist",
]
