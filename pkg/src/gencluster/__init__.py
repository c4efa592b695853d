"""Exact symbolic engine for generalized cluster algebras.

Seeds carry polynomial exchange relations of degree ``r_i`` with reciprocal
interior coefficients ``z_{i,m}`` taken in a product of tropical semifields.
"""

from .coeffs import CoeffRingElement, SemifieldSpec, TropicalElement, oplus_fold, trop_mul, trop_oplus
from .dmat import (DMatrixPattern, MatrixSeed, d_matrix, d_vector_extract, d_vectors_match_standard,
                   initial_matrix_seed, mutate_matrix_seed)
from .fpolys import (f_polynomial, f_polynomials, g_matrix_from_grading, g_vector, principal_companion,
                     separation_reconstruct, separation_seed, tropical_evaluate, x_function)
from .jacobian import (HMatrix, check_compatible_two_form, e_matrix, e_matrix_by_limit, g_matrix_from_h,
                       h_matrix_chain, h_matrix_direct, one_step_h, recover_B_from_cluster,
                       recover_C_from_cluster, verify_cluster_formula)
from .pattern import (ClusterPattern, MutationKit, PatternError, Seed, extend_weak_geometric,
                      find_symmetrizer, mutate_c_matrix, mutate_matrix, mutate_matrix_generalized, restrict,
                      skew_balance, standard_pattern, with_geometric_coefficients,
                      with_principal_coefficients, with_trivial_coefficients)
from .report import Report
from .schema import load_pattern, pattern_from_dict, pattern_to_dict
from .symalg import LaurentPoly, LaurentRing, NotLaurentError, RationalFn
from .xgraph import (ExchangeGraph, adjacency_iff_common_variables, canonical_key, enumerate_exchange_graph,
                     finite_type_equivalence, graphs_agree, seed_determined_by_cluster)

__version__ = "0.1.0"
