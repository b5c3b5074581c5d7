"""scikit-learn style front end: fit relations, transform to normal forms."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .dimensions import DimensionReport, dimension_series, normal_monomials
from .groebner import buchberger
from .validation import check_arity, check_context, check_relations


class OperadGroebner(TransformerMixin, BaseEstimator):
    """Reduced Gröbner basis of an operad ideal, used as a normal-form transformer.

    Parameters
    ----------
    m : int
        Branching arity of the generating operation.
    parity : {"even", "odd"}
        Homological degree of the generator mod 2.
    arity_bound : int
        Completion stops after every SCM up to this arity is processed.
    shuffle_seed : int or None
        Process pending SCMs in a seeded random order instead of the
        default ascending order.  The reduced basis does not depend on it.
    max_pairs : int or None
        Cap on processed SCMs; hitting it leaves ``complete_`` False.

    Attributes
    ----------
    basis_ : GroebnerBasis
    generators_ : list of TreePolynomial
    complete_ : bool
    ctx_ : GradedContext
    """

    def __init__(self, m=3, parity="even", arity_bound=15, shuffle_seed=None, max_pairs=None):
        self.m = m
        self.parity = parity
        self.arity_bound = arity_bound
        self.shuffle_seed = shuffle_seed
        self.max_pairs = max_pairs

    def fit(self, X, y=None):
        ctx = check_context(self.m, self.parity)
        check_arity(ctx.m, self.arity_bound, "arity_bound", max_arity=None)
        relations = check_relations(X, ctx)
        self.ctx_ = ctx
        self.relations_ = relations
        self.basis_ = buchberger(relations, ctx, self.arity_bound,
                                 shuffle_seed=self.shuffle_seed, max_pairs=self.max_pairs)
        self.generators_ = list(self.basis_.gens)
        self.complete_ = self.basis_.complete_below_bound
        return self

    def transform(self, X):
        """Normal form of each polynomial modulo the fitted basis."""
        check_is_fitted(self, "basis_")
        polys = check_relations(X, self.ctx_, allow_zero=True)
        reducer = self.basis_.reducer()
        return [reducer.normal_form(f) for f in polys]

    def predict(self, X):
        """Ideal membership: True where the normal form vanishes."""
        return np.array([not r for r in self.transform(X)], dtype=bool)

    def normal_monomials(self, n):
        check_is_fitted(self, "basis_")
        return normal_monomials(self.basis_, n)

    def dimension_series(self, n_max, list_monomials=False) -> DimensionReport:
        check_is_fitted(self, "basis_")
        return dimension_series(self.basis_, n_max, list_monomials)

