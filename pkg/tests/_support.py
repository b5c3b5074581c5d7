"""Random generators and independent reference routines for the tests."""
from __future__ import annotations

import random
from fractions import Fraction

from operad_gb.polynomials import GradedContext, TreePolynomial, poly_compose
from operad_gb.trees import PlanarTree, compose_tree, generator, leaf


def random_tree(rng: random.Random, m: int = 3, max_arity: int = 9, min_weight: int = 0) -> PlanarTree:
    max_weight = (max_arity - 1) // (m - 1)
    w = rng.randint(min_weight, max_weight)
    tree = leaf(m)
    t = generator(m)
    for _ in range(w):
        tree = compose_tree(tree, rng.randint(1, tree.arity), t)
    return tree


def random_tree_of_weight(rng: random.Random, m: int, w: int) -> PlanarTree:
    tree = leaf(m)
    t = generator(m)
    for _ in range(w):
        tree = compose_tree(tree, rng.randint(1, tree.arity), t)
    return tree


def random_poly(rng: random.Random, ctx: GradedContext, max_arity: int = 9, terms: int = 4,
                min_weight: int = 1) -> TreePolynomial:
    max_weight = (max_arity - 1) // (ctx.m - 1)
    w = rng.randint(min_weight, max_weight)
    out = {}
    for _ in range(rng.randint(1, terms)):
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        out[random_tree_of_weight(rng, ctx.m, w)] = c
    f = TreePolynomial(ctx, out)
    if not f:
        f = TreePolynomial.monomial(ctx, random_tree_of_weight(rng, ctx.m, w))
    return f


def brute_force_trees(m: int, w: int) -> set[tuple[int, ...]]:
    """Path sequences of all trees of weight w, by grafting t at every leaf."""
    level = {leaf(m).path: leaf(m)}
    t = generator(m)
    for _ in range(w):
        nxt = {}
        for tree in level.values():
            for i in range(1, tree.arity + 1):
                g = compose_tree(tree, i, t)
                nxt[g.path] = g
        level = nxt
    return set(level)


def fuss_catalan(m: int, w: int) -> int:
    c = [1]
    for k in range(1, w + 1):
        c.append(_sum_products(c, k - 1, m))
    return c[w]


def _sum_products(c, total, parts):
    if parts == 1:
        return c[total]
    return sum(c[a] * _sum_products(c, total - a, parts - 1) for a in range(total + 1))


def substitute_by_composition(host: PlanarTree, occ, f: TreePolynomial) -> TreePolynomial:
    """M(host, p, f) rebuilt from signed partial compositions.

    host = C ∘_a (p ∘_l s_l ... ∘_1 s_1); the same expression with f in
    place of p, scaled so that p itself maps to +host.
    """
    ctx = f.ctx
    m = host.m
    code, ends = host.code, host.ends
    context = PlanarTree(m, code[:occ.anchor] + (0,) + code[ends[occ.anchor]:])
    a = context.leaf_vertices().index(occ.anchor) + 1
    hanging = [PlanarTree(m, code[v:ends[v]]) for v in occ.leaf_images]

    def expression(g: TreePolynomial) -> TreePolynomial:
        x = g
        for k in range(len(hanging), 0, -1):
            x = poly_compose(x, k, TreePolynomial.monomial(ctx, hanging[k - 1]))
        return poly_compose(TreePolynomial.monomial(ctx, context), a, x)

    scale = expression(TreePolynomial.monomial(ctx, occ.pattern)).coeff(host)
    assert abs(scale) == 1
    return expression(f) * scale


def catalan(n: int) -> int:
    from math import comb
    return comb(2 * n, n) // (n + 1)
