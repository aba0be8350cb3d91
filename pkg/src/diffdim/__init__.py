"""Exact analysis of linear PDE systems through operator-module staircases.

The package computes dimension polynomials, differential type, typical
dimension, codimension and rank of systems of linear PDEs over Q(x1..xm),
constructs primitive elements for rank-zero systems, and evaluates the
known bounds on the typical dimension for every analyzed instance.
"""

from .bounds import BoundReport, OrderProfileTooSmall, bound_report
from .families import Be1Params, be1_expected, be1_system, be1_typical_dimension, expected_characteristic_chain
from .lattice import ExponentSet, count_excluded, dimension_polynomial, exponent_set, minimize
from .modgb import (
    GroebnerBasis,
    ModuleElement,
    Ranking,
    SystemAnalysis,
    analyze,
    groebner,
    hilbert_value,
    module_element,
    order_profile,
)
from .numpoly import NotIntegerValued, NumericalPolynomial, binomial_polynomial, from_dense
from .orealg import DiffOperator, OperatorRing, apply_derivation, field_arith, op_apply, op_multiply
from .primelem import (
    NotZeroRank,
    PrimitiveElementResult,
    ProlongedSystem,
    RetriesExhausted,
    annihilator_generators,
    primitive_element,
    prolong,
    select_independent_subsystem,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
