"""Brute-force check of quotient dimensions by exact linear algebra.

Ideal components are spanned by closing the relations under the two
one-step maps x -> x∘_i t and x -> t∘_j x; the rank is then taken by
fraction-free elimination over the integers.  Nothing here uses leading
monomials or reduction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .polynomials import GradedContext, TreePolynomial, poly_compose
from .trees import PlanarTree, enumerate_trees, generator

__all__ = [
    "IdealSpan",
    "ideal_span",
    "quotient_dim",
    "integer_rank",
    "CrossValidation",
    "cross_validate",
]


def _integer_row(f: TreePolynomial, index: dict[PlanarTree, int]) -> dict[int, int]:
    den = lcm(*(c.denominator for c in f.terms.values()))
    row = {index[t]: int(c * den) for t, c in f.terms.items()}
    return _primitive(row)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
    lead = min(row)
    if row[lead] < 0:
        g = -g
    return {k: v // g for k, v in row.items()} if g not in (0, 1) else row


class _Echelon:
    """Incremental fraction-free row echelon form over Z (sparse rows)."""

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def add(self, row: dict[int, int]) -> bool:
        row = dict(row)
        while row:
            col = min(row)
            piv = self.pivots.get(col)
            if piv is None:
                self.pivots[col] = _primitive(row)
                return True
            a, b = piv[col], row[col]
            out = {}
            for k in row.keys() | piv.keys():
                v = a * row.get(k, 0) - b * piv.get(k, 0)
                if v:
                    out[k] = v
            row = _primitive(out) if out else out
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def integer_rank(rows: Iterable[dict[int, int]]) -> int:
    ech = _Echelon()
    for r in rows:
        if r:
            ech.add(r)
    return ech.rank


@dataclass
class IdealSpan:
    ctx: GradedContext
    arity: int
    vectors: list[TreePolynomial]
    rank: int
    basis_of_T_n: Sequence[PlanarTree]


def _normalized(f: TreePolynomial) -> TreePolynomial:
    lead = min(f.terms, key=lambda t: t.path)
    return f / f.terms[lead]


def _closure_step(vectors: Iterable[TreePolynomial], t: TreePolynomial) -> list[TreePolynomial]:
    out = []
    seen = set()
    for x in vectors:
        images = [poly_compose(x, i, t) for i in range(1, x.arity + 1)]
        images += [poly_compose(t, j, x) for j in range(1, t.arity + 1)]
        for y in images:
            if y:
                y = _normalized(y)
                if y not in seen:
                    seen.add(y)
                    out.append(y)
    return out


def _reduce_to_basis(vectors: list[TreePolynomial], n: int, m: int) -> list[TreePolynomial]:
    index = {tree: k for k, tree in enumerate(enumerate_trees(m, n))}
    ech = _Echelon()
    kept = []
    for v in vectors:
        if ech.add(_integer_row(v, index)):
            kept.append(v)
    return kept


def ideal_span(relations: Sequence[TreePolynomial], ctx: GradedContext, n: int) -> IdealSpan:
    """Spanning vectors and rank of the arity-``n`` component of the ideal."""
    m = ctx.m
    step = m - 1
    t = TreePolynomial.monomial(ctx, generator(m))
    rels = [r for r in relations if r and r.arity <= n and (n - r.arity) % step == 0]
    for r in rels:
        if r.ctx != ctx:
            raise ValueError("relation does not belong to the given graded context")
    basis = enumerate_trees(m, n)
    if not rels:
        return IdealSpan(ctx, n, [], 0, basis)
    level: list[TreePolynomial] = []
    arity = min(r.arity for r in rels)
    while True:
        seeds = [_normalized(r) for r in rels if r.arity == arity]
        current = list(dict.fromkeys(level + seeds))
        if arity == n:
            break
        # intermediate components only need a basis of their span
        current = _reduce_to_basis(current, arity, m)
        level = _closure_step(current, t)
        arity += step
    index = {tree: k for k, tree in enumerate(basis)}
    rank = integer_rank(_integer_row(v, index) for v in current)
    return IdealSpan(ctx, n, current, rank, basis)


def quotient_dim(relations: Sequence[TreePolynomial], ctx: GradedContext, n: int) -> int:
    span = ideal_span(relations, ctx, n)
    return len(span.basis_of_T_n) - span.rank


@dataclass
class CrossValidation:
    ctx: GradedContext
    rows: list[dict] = field(default_factory=list)
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _check_arity(G, relations, n):
    from .dimensions import normal_monomials

    span = ideal_span(relations, G.ctx, n)
    oracle = len(span.basis_of_T_n) - span.rank
    gb = len(normal_monomials(G, n))
    reducer = G.reducer()
    nonzero = sum(1 for v in span.vectors if reducer.normal_form(v))
    return {"arity": n, "trees": len(span.basis_of_T_n), "oracle_dim": oracle, "gb_dim": gb,
            "vectors": len(span.vectors), "nonzero_normal_forms": nonzero}


def cross_validate(G, relations: Sequence[TreePolynomial], n_max: int, jobs: int = 1) -> CrossValidation:
    """Compare oracle dimensions with normal-monomial counts at every arity <= n_max."""
    m = G.ctx.m
    arities = list(range(1, n_max + 1, m - 1))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_check_arity, [G] * len(arities), [relations] * len(arities), arities))
    else:
        rows = [_check_arity(G, relations, n) for n in arities]
    report = CrossValidation(G.ctx, rows)
    for row in rows:
        if row["oracle_dim"] != row["gb_dim"]:
            report.mismatches.append(
                f"arity {row['arity']}: oracle dim {row['oracle_dim']} != normal monomials {row['gb_dim']}")
        if row["nonzero_normal_forms"]:
            report.mismatches.append(
                f"arity {row['arity']}: {row['nonzero_normal_forms']} spanning vectors do not reduce to 0")
    return report
