"""Normal monomials and dimension series of quotient operads."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .groebner import GroebnerBasis
from .polynomials import GradedContext
from .trees import PlanarTree, compose_tree, count_trees, generator, leaf, match_at, weight_of_arity

__all__ = [
    "IncompleteBasisError",
    "DimensionRecord",
    "DimensionReport",
    "normal_monomials",
    "dimension_series",
    "comb_monomial",
    "even_basis_family",
    "leaf_type_counts",
]


class IncompleteBasisError(RuntimeError):
    """The basis is not certified up to the requested arity."""


@dataclass
class DimensionRecord:
    arity: int
    weight: int
    trees: int
    dim: int
    monomials: list[PlanarTree] | None = None


@dataclass
class DimensionReport:
    ctx: GradedContext
    records: list[DimensionRecord] = field(default_factory=list)

    @property
    def dims(self) -> list[int]:
        return [r.dim for r in self.records]

    def __getitem__(self, arity: int) -> DimensionRecord:
        for r in self.records:
            if r.arity == arity:
                return r
        raise KeyError(arity)


def _normal_codes(m: int, leads: tuple[PlanarTree, ...], max_weight: int):
    """Per weight, preorder codes of trees avoiding every pattern in ``leads``.

    A tree is normal iff its root subtrees are normal and no pattern is
    anchored at its root, so trees are grown from normal pieces only.
    """
    by_weight: list[list[tuple[int, ...]]] = [[(0,)]]
    for w in range(1, max_weight + 1):
        found = []
        for split in _splits(w - 1, m):
            _extend(found, (1,), [by_weight[k] for k in split], m, leads)
        by_weight.append(found)
    return by_weight


def _splits(total, k):
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _splits(total - first, k - 1):
            yield (first,) + rest


def _extend(found, prefix, pools, m, leads):
    if not pools:
        tree = PlanarTree(m, prefix)
        if not any(match_at(p, tree, 0) for p in leads if p.weight <= tree.weight):
            found.append(prefix)
        return
    for code in pools[0]:
        _extend(found, prefix + code, pools[1:], m, leads)


@lru_cache(maxsize=64)
def _normal_by_weight(m: int, leads: tuple[PlanarTree, ...], max_weight: int):
    return _normal_codes(m, leads, max_weight)


def _require(G: GroebnerBasis, n: int) -> None:
    if not G.certifies(n):
        raise IncompleteBasisError(
            f"basis is certified only up to arity {G.checked_bound}"
            f"{'' if G.complete_below_bound else ' (incomplete)'}; cannot use it at arity {n}")


def normal_monomials(G: GroebnerBasis, n: int) -> list[PlanarTree]:
    """Trees of arity ``n`` divisible by no leading monomial, ascending path-lex."""
    m = G.ctx.m
    w = weight_of_arity(m, n)
    _require(G, n)
    leads = tuple(G.leading_monomials)
    codes = _normal_by_weight(m, leads, w)[w]
    return sorted((PlanarTree(m, c) for c in codes), key=lambda t: t.path)


def dimension_series(G: GroebnerBasis, n_max: int, list_monomials: bool = False) -> DimensionReport:
    """Dimension of the quotient at every valid arity up to ``n_max``."""
    m = G.ctx.m
    _require(G, n_max)
    report = DimensionReport(G.ctx)
    for n in range(1, n_max + 1, m - 1):
        mons = normal_monomials(G, n)
        report.records.append(DimensionRecord(
            arity=n, weight=weight_of_arity(m, n), trees=count_trees(m, n), dim=len(mons),
            monomials=mons if list_monomials else None))
    return report


def comb_monomial(m: int | GradedContext, weight: int) -> PlanarTree:
    """Middle comb: t∘_2(t∘_2(...(t∘_2 t))) with ``weight`` copies of t."""
    if isinstance(m, GradedContext):
        m = m.m
    if weight < 0:
        raise ValueError("weight must be >= 0")
    if weight == 0:
        return leaf(m)
    t = generator(m)
    tree = t
    for _ in range(weight - 1):
        tree = compose_tree(t, 2, tree)
    return tree


def even_basis_family(k: int) -> list[PlanarTree]:
    """The k+1 ternary monomials of weight k spanning the even quotient, increasing."""
    if k < 3:
        raise ValueError("the family is defined for weight k >= 3")
    t = generator(3)
    M = lambda w: comb_monomial(3, w)  # noqa: E731
    family = [compose_tree(t, 3, compose_tree(t, 3, M(k - 2))),
              compose_tree(t, 3, M(k - 1))]
    for i in range(3, k + 1):
        family.append(compose_tree(compose_tree(t, 3, compose_tree(t, 3, M(k - i))), 2, M(i - 2)))
    family.append(M(k))
    return family


def leaf_type_counts(tree: PlanarTree) -> tuple[int, ...]:
    """Number of leaves that are the 1st, 2nd, ..., m-th child of their parent."""
    counts = [0] * tree.m
    for v in tree.internal_vertices():
        for k, child in enumerate(tree.children(v)):
            if not tree.code[child]:
                counts[k] += 1
    return tuple(counts)
