"""Carlitz-form permutations of GF(2^n): construction, brute-force uniformity
oracles, and closed-form classification of [0, 1, beta, x]."""

from .carlitz import (
    CarlitzChain, Convergents, PoleData, as_permutation, bracket_eval, convergents,
    cycle_to_chain, eval_chain, inverse_chain, linearize, make_involution, parse_chain,
    pole_data, rank3_chain, reduce_to_standard,
)
from .gf2n import CONWAY, FieldElement, FieldMismatchError, FieldSpec, GF2n, get_field
from .polyarith import (
    FieldPoly, frobenius_power_mod, has_root_in_field, poly_gcd, poly_mod,
    resultant_quadratics, roots_in_field,
)
from .rank3 import (
    Rank3Params, Rank3Verdict, aux_quadratics, b_values, build_classifier_polys,
    bu_is_six, bu_witness, classify, du_classify,
)
from .uniformity import (
    PermTable, UniformityReport, algebraic_degree, analyze_table, bct_max, bu_point,
    classify_solutions, ddt_max, du_point,
)

__version__ = "0.1.0"
