"""Gröbner bases for ideals in the free nonsymmetric operad on one m-ary operation."""
from .dimensions import (DimensionReport, IncompleteBasisError, comb_monomial, dimension_series,
                         even_basis_family, leaf_type_counts, normal_monomials)
from .estimator import OperadGroebner
from .groebner import GroebnerBasis, buchberger, inter_reduce, is_groebner, s_polynomial
from .oracle import cross_validate, ideal_span, quotient_dim
from .polynomials import (GradedContext, PolynomialSyntaxError, TreePolynomial, koszul_compose_sign,
                          leading, normal_form, parse_poly, poly_compose, print_poly, reduce_once,
                          substitute)
from .presets import named, partial_associativity, preset
from .trees import (Occurrence, PlanarTree, Scm, compare_pathlex, compose_tree, enumerate_scms,
                    enumerate_trees, find_occurrences, generator, leaf, path_sequence)

__version__ = "0.1.0"
