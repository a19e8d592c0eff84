"""Exact special values of twisted multivariable zeta functions.

The main entry points are :func:`z_value_at_negative` (values at negative
integer tuples), :func:`theorem4_value` (the same values from a finite double
sum) and :func:`zp_r_eval` (the p-adic interpolating function).
"""

from .combinatorics import binomial, factorial, multi_binomial, stirling2, stirling2_explicit
from .cyclotomic import (
    CyclotomicNumber,
    cyclo_add,
    cyclo_inv,
    cyclo_mul,
    cyclo_neg,
    embed_complex,
    embed_order,
    zeta,
)
from .errors import (
    ContractError,
    HypothesisViolation,
    PoleError,
    PrecisionError,
    UnsupportedEmbeddingError,
)
from .oracle import residue_demo, taylor_zeta_oracle, truncated_z_sum
from .padic import PAdicScalar, angle_bracket, padic_embed_cyclo, teichmuller
from .padic_interp import (
    PAdicContext,
    PAdicSpec,
    check_padic_hypotheses,
    theorem4_value,
    z_ell_r,
    zp_r_eval,
)
from .parsing import parse_mu, parse_polynomial, parse_spec_document
from .poly import Polynomial, degree_in_var, expand_product, find_constant_partial
from .zeta_eval import (
    ZetaSpec,
    check_hypotheses,
    reduce_tail,
    verify_exchange,
    z_value_at_negative,
    zeta_mu_neg,
)

__version__ = "0.1.0"
