"""Input validation shared by the estimator and the command line."""
from __future__ import annotations

from typing import Iterable

from .polynomials import GradedContext, TreePolynomial, parse_poly

# Guard against runaway enumerations (|T(17)| = 43263 for m = 3).
DEFAULT_MAX_ARITY = 17


def check_context(m, parity) -> GradedContext:
    if isinstance(m, bool) or not isinstance(m, int):
        raise TypeError(f"m must be an int, got {type(m).__name__}")
    return GradedContext(m, parity)


def check_arity(m: int, n: int, name: str = "arity", max_arity: int | None = DEFAULT_MAX_ARITY) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")
    if max_arity is not None and n > max_arity:
        raise ValueError(f"{name} {n} exceeds the guard {max_arity}")
    return n


def check_relations(X, ctx: GradedContext, allow_zero: bool = False) -> list[TreePolynomial]:
    """Accept one relation or an iterable of relations, as text or polynomials."""
    if isinstance(X, (str, TreePolynomial)):
        X = [X]
    out = []
    for item in X:
        if isinstance(item, str):
            item = parse_poly(item, ctx)
        if not isinstance(item, TreePolynomial):
            raise TypeError(f"cannot interpret {item!r} as a tree polynomial")
        if item.ctx != ctx:
            raise ValueError(f"relation {item} has context {item.ctx}, expected {ctx}")
        if not item and not allow_zero:
            raise ValueError("relations must be nonzero")
        out.append(item)
    if not out and not allow_zero:
        raise ValueError("at least one relation is required")
    return out


def read_relations(lines: Iterable[str], ctx: GradedContext) -> list[TreePolynomial]:
    """One polynomial per line; blank lines and ``#`` comments are skipped."""
    texts = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            texts.append(line)
    return check_relations(texts, ctx)
