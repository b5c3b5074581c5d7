"""Named relations for the ternary partially associative operad."""
from __future__ import annotations

from typing import Callable

from .polynomials import GradedContext, TreePolynomial, parse_poly
from .trees import PlanarTree, compose_tree, generator

# Ternary relations in nonassociative notation, leading monomial first.
NAMED_TERNARY = {
    "alpha": "((***)**) + (*(***)*) + (**(***))",
    "beta": "(*(**(***))*) + (**(*(***)*)) + (**(**(***)))",
    "gamma": "2*(**(*(***)(***))) + (**(**(**(***))))",
    "delta": "(*(***)(*(***)*)) + (*(***)(**(***))) + (**(**(**(***))))",
    "epsilon": "(*(***)(*(***)*)) + (*(***)(**(***))) - (**(*(***)(***))) - (**(**(**(***))))",
    "zeta": "(**(*(***)(***))) - (**(**(**(***))))",
    "eta": "(*(***)(*(***)*)) + (*(***)(**(***)))",
    "theta": "(**(*(***)(***)))",
    "nu": "(**(**(**(***))))",
}

# The reduced basis for an even generator, ascending by leading monomial.
EVEN_BASIS_NAMES = ("alpha", "beta", "eta", "theta", "nu")


def named(name: str, parity: str = "even") -> TreePolynomial:
    return parse_poly(NAMED_TERNARY[name], GradedContext(3, parity))


def partial_associativity(ctx: GradedContext) -> TreePolynomial:
    """t∘_1 t + t∘_2 t + ... + t∘_m t."""
    t = generator(ctx.m)
    terms: dict[PlanarTree, int] = {}
    for i in range(1, ctx.m + 1):
        terms[compose_tree(t, i, t)] = 1
    return TreePolynomial(ctx, terms)


PRESETS: dict[str, Callable[[GradedContext], list[TreePolynomial]]] = {
    "pa": lambda ctx: [partial_associativity(ctx)],
}


def preset(name: str, ctx: GradedContext) -> list[TreePolynomial]:
    try:
        return PRESETS[name](ctx)
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}") from None
