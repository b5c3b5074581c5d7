"""Buchberger completion for ideals in the free nonsymmetric operad."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .polynomials import GradedContext, Reducer, TreePolynomial, substitute
from .trees import Scm, enumerate_scms

__all__ = [
    "GroebnerBasis",
    "GroebnerReport",
    "s_polynomial",
    "inter_reduce",
    "buchberger",
    "is_groebner",
    "critical_pairs",
]

log = logging.getLogger(__name__)


def _sort_key(g: TreePolynomial):
    return (g.arity, g.lm.path)


@dataclass
class GroebnerBasis:
    """Reduced monic generators plus the arity up to which they were checked."""

    ctx: GradedContext
    gens: list[TreePolynomial]
    checked_bound: int
    complete_below_bound: bool = True
    pairs_processed: int = 0

    def __post_init__(self):
        self.gens = sorted(self.gens, key=_sort_key)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    @property
    def leading_monomials(self):
        return [g.lm for g in self.gens]

    def reducer(self) -> Reducer:
        return Reducer(self.gens)

    def normal_form(self, f: TreePolynomial) -> TreePolynomial:
        return self.reducer().normal_form(f)

    def certifies(self, arity: int) -> bool:
        return self.complete_below_bound and arity <= self.checked_bound


@dataclass
class GroebnerReport:
    ok: bool
    bound: int
    pairs_checked: int
    failures: list[tuple[Scm, TreePolynomial]] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def s_polynomial(scm: Scm, g: TreePolynomial, h: TreePolynomial) -> TreePolynomial:
    """M(scm, lm g, g) - M(scm, lm h, h) for monic ``g`` and ``h``."""
    if scm.occ_left.pattern != g.lm or scm.occ_right.pattern != h.lm:
        raise ValueError("SCM patterns do not match the leading monomials")
    if g.lc != 1 or h.lc != 1:
        raise ValueError("S-polynomials are formed from monic polynomials")
    return substitute(scm.tree, scm.occ_left, g) - substitute(scm.tree, scm.occ_right, h)


def inter_reduce(G: Iterable[TreePolynomial]) -> list[TreePolynomial]:
    """Monic, mutually reduced list spanning the same ideal components."""
    polys = []
    for g in G:
        if g:
            g = g.monic()
            if g not in polys:
                polys.append(g)
    changed = True
    while changed:
        changed = False
        polys.sort(key=_sort_key)
        for idx, g in enumerate(polys):
            others = polys[:idx] + polys[idx + 1:]
            r = Reducer(others).normal_form(g)
            if r != g:
                polys = others + ([r.monic()] if r else [])
                changed = True
                break
    return sorted(polys, key=_sort_key)


def critical_pairs(gens: Sequence[TreePolynomial], arity_bound: int):
    """(scm, g, h) for all SCMs of arity <= bound, in queue order."""
    out = []
    for i, g in enumerate(gens):
        for h in gens[i:]:
            for scm in enumerate_scms(g.lm, h.lm, exclude_total_self=g is h):
                if scm.tree.arity <= arity_bound:
                    out.append((scm, g, h))
    out.sort(key=lambda item: item[0].key)
    return out


def buchberger(initial: Iterable[TreePolynomial], ctx: GradedContext, arity_bound: int,
               shuffle_seed: int | None = None, max_pairs: int | None = None) -> GroebnerBasis:
    """Complete ``initial`` to a reduced Gröbner basis up to ``arity_bound``.

    Pending SCMs are processed by ascending (arity, path-lex, anchors), or in
    a random order when ``shuffle_seed`` is given.  ``max_pairs`` caps the work;
    if it is hit the result is flagged incomplete.
    """
    initial = list(initial)
    for f in initial:
        if f.ctx != ctx:
            raise ValueError("relation does not belong to the given graded context")
        if not f:
            raise ValueError("relations must be nonzero")
        if f.arity > arity_bound:
            raise ValueError(f"arity bound {arity_bound} is below generator arity {f.arity}")
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None
    gens = inter_reduce(initial)
    done: set = set()
    processed = 0
    pending = None
    while True:
        if pending is None:
            pending = [item for item in critical_pairs(gens, arity_bound)
                       if _pair_key(*item) not in done]
            if rng is not None:
                rng.shuffle(pending)
            reducer = Reducer(gens)
        if not pending:
            return GroebnerBasis(ctx, gens, arity_bound, True, processed)
        if max_pairs is not None and processed >= max_pairs:
            return GroebnerBasis(ctx, gens, arity_bound, False, processed)
        scm, g, h = pending.pop(0)
        done.add(_pair_key(scm, g, h))
        processed += 1
        r = reducer.normal_form(s_polynomial(scm, g, h))
        if r:
            log.debug("arity %d: new element %s", r.arity, r.monic())
            gens = inter_reduce(gens + [r])
            pending = None


def _pair_key(scm: Scm, g: TreePolynomial, h: TreePolynomial):
    return (scm.tree, scm.occ_left.anchor, scm.occ_right.anchor, g, h)


def is_groebner(G: GroebnerBasis | Sequence[TreePolynomial], arity_bound: int) -> GroebnerReport:
    """Check that every S-polynomial up to ``arity_bound`` reduces to zero."""
    gens = list(G.gens if isinstance(G, GroebnerBasis) else G)
    gens = [g.monic() for g in gens]
    reducer = Reducer(gens)
    failures = []
    pairs = critical_pairs(gens, arity_bound)
    for scm, g, h in pairs:
        r = reducer.normal_form(s_polynomial(scm, g, h))
        if r:
            failures.append((scm, r))
    return GroebnerReport(not failures, arity_bound, len(pairs), failures)
