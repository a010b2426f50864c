"""Exact discrepancy analysis of the van der Corput sequence and its symmetrisation."""
from .discrepancy import (
    DiscrepancyProfile,
    build_profile,
    combine,
    evaluate,
    l2_closed_form,
    lp_norm,
    lp_norm_exact,
    sup_norm,
)
from .dyadic import Dyadic, Rational, abs_reflect_sum, ceil_log2, nearest_int_distance, radical_inverse
from .haar import (
    CoefficientTable,
    HaarIndex,
    coefficient_bound_report,
    haar_eval,
    mu,
    mu_oracle,
    mu_table,
    parseval_l2,
    square_function_norm,
    theorem_chain_bound,
)
from .sequences import KINDS, PointSet, prefix, reflected_prefix, sym_prefix, vdc_prefix

__version__ = "0.1.0"
