"""Evaluation codes C(d) of square-free degree-d monomials on the torus (F_q^*)^s.

Closed forms for the minimum distance, the next-to-minimal weight and the
number of codewords attaining them, together with the family enumerators,
recognizers and brute-force oracles that check them.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import DomainError, ParameterError, ResourceError, UnsupportedOrderError, UnsupportedRegimeError
from .families import (
    MinWordParams,
    NtmWordParams,
    complement_min_params,
    complement_ntm_params,
    enumerate_min_params,
    enumerate_ntm_params,
    expand_min,
    expand_ntm,
    recognize_min,
    recognize_ntm,
)
from .field import FieldSpec, make_field, units
from .formulas import (
    CodeParams,
    Regime,
    du_chain_check,
    du_closed,
    min_distance,
    min_regime,
    min_word_count,
    ntm_regime,
    ntm_weight,
    ntm_word_count,
)
from .groebner import (
    FootprintCheck,
    GenPoly,
    buchberger,
    divide,
    footprint,
    footprint_size,
    footprint_weight_check,
    genpoly_text,
    is_groebner_basis,
    torus_ideal_generators,
    weight_lower_bound,
)
from .oracles import (
    WeightDistribution,
    du_bruteforce,
    exhaustive_spectrum,
    linear_factor_search,
    naive_spectrum,
    sample_codewords,
)
from .polynomial import (
    Permutation,
    SqFreePoly,
    complement,
    expand_product,
    hypersimplex_basis,
    leading_coefficient,
    leading_monomial,
    parse_poly,
    permute,
    to_text,
)
from .torus import (
    Codeword,
    TorusPointSet,
    enumerate_torus,
    equivalence_transform,
    evaluate,
    generator_matrix,
    matrix_rank,
    point_permutation,
)

__all__ = [name for name in dir() if not name.startswith("_") and name != "annotations"]
