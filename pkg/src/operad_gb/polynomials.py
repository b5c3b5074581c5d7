"""Tree polynomials with exact rational coefficients and Koszul signs.

Sign convention for an odd generator: a monomial stands for its internal
vertices multiplied in preorder.  Grafting ``q`` onto leaf ``i`` of ``p``
moves the generators of ``q`` past every internal vertex of ``p`` that comes
after leaf ``i`` in preorder, which gives :func:`koszul_compose_sign`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .trees import Occurrence, PlanarTree, compose_tree, find_occurrences, match_at

__all__ = [
    "GradedContext",
    "TreePolynomial",
    "PolynomialSyntaxError",
    "koszul_compose_sign",
    "poly_compose",
    "leading",
    "substitute",
    "reduce_once",
    "normal_form",
    "Reducer",
    "parse_poly",
    "print_poly",
]

EVEN = "even"
ODD = "odd"


@dataclass(frozen=True)
class GradedContext:
    """Branching arity of the generator and its homological degree mod 2."""

    m: int = 3
    parity: str = EVEN

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"branching arity must be >= 2, got {self.m}")
        if self.parity not in (EVEN, ODD):
            raise ValueError(f"parity must be 'even' or 'odd', got {self.parity!r}")

    @property
    def odd(self) -> bool:
        return self.parity == ODD

    def degree(self, tree: PlanarTree) -> int:
        """Parity |p| of a monomial."""
        return tree.weight % 2 if self.odd else 0


def koszul_compose_sign(ctx: GradedContext, p: PlanarTree, i: int, q: PlanarTree) -> int:
    """Sign relating p∘_i q as computed to the canonical monomial of the result."""
    if not ctx.odd or not q.weight % 2:
        return 1
    after = p.weight - p.internal_before_leaves()[i - 1]
    return -1 if after % 2 else 1


class TreePolynomial:
    """Finite linear combination of same-arity trees over the rationals.

    Immutable.  Zero coefficients are never stored; the zero polynomial has
    ``arity`` None unless one is given.
    """

    __slots__ = ("ctx", "terms", "arity", "_lead")

    def __init__(self, ctx: GradedContext, terms: Mapping[PlanarTree, object] | None = None,
                 arity: int | None = None):
        clean: dict[PlanarTree, Fraction] = {}
        for tree, c in (terms or {}).items():
            if tree.m != ctx.m:
                raise ValueError(f"monomial {tree} is not {ctx.m}-ary")
            c = Fraction(c)
            if c:
                clean[tree] = c
        arities = {t.arity for t in clean}
        if len(arities) > 1:
            raise ValueError(f"polynomial is not homogeneous in arity: {sorted(arities)}")
        if arities:
            (found,) = arities
            if arity is not None and arity != found:
                raise ValueError(f"declared arity {arity} but monomials have arity {found}")
            arity = found
        self.ctx = ctx
        self.terms = clean
        self.arity = arity
        self._lead = None

    @classmethod
    def monomial(cls, ctx: GradedContext, tree: PlanarTree, coeff=1) -> "TreePolynomial":
        return cls(ctx, {tree: coeff})

    @classmethod
    def zero(cls, ctx: GradedContext, arity: int | None = None) -> "TreePolynomial":
        return cls(ctx, {}, arity)

    @classmethod
    def _raw(cls, ctx, terms, arity):
        self = cls.__new__(cls)
        self.ctx = ctx
        self.terms = terms
        self.arity = arity
        self._lead = None
        return self

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def sorted_terms(self) -> list[tuple[PlanarTree, Fraction]]:
        """Terms in descending path-lex order (leading term first)."""
        return sorted(self.terms.items(), key=lambda kv: kv[0].path, reverse=True)

    def coeff(self, tree: PlanarTree) -> Fraction:
        return self.terms.get(tree, Fraction(0))

    def _check(self, other: "TreePolynomial"):
        if self.ctx != other.ctx:
            raise ValueError("polynomials live in different graded contexts")
        if self.arity is not None and other.arity is not None and self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "TreePolynomial") -> "TreePolynomial":
        self._check(other)
        terms = dict(self.terms)
        for t, c in other.terms.items():
            s = terms.get(t, 0) + c
            if s:
                terms[t] = s
            else:
                terms.pop(t, None)
        return TreePolynomial._raw(self.ctx, terms, self.arity if self.arity is not None else other.arity)

    def __neg__(self):
        return TreePolynomial._raw(self.ctx, {t: -c for t, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return TreePolynomial.zero(self.ctx, self.arity)
        return TreePolynomial._raw(self.ctx, {t: c * scalar for t, c in self.terms.items()}, self.arity)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / Fraction(scalar))

    def __eq__(self, other):
        if not isinstance(other, TreePolynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __repr__(self):
        return f"TreePolynomial({print_poly(self)!r}, parity={self.ctx.parity})"

    def __str__(self):
        return print_poly(self)

    def lead(self) -> tuple[PlanarTree, Fraction]:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        if self._lead is None:
            tree = max(self.terms, key=lambda t: t.path)
            self._lead = (tree, self.terms[tree])
        return self._lead

    @property
    def lm(self) -> PlanarTree:
        return self.lead()[0]

    @property
    def lc(self) -> Fraction:
        return self.lead()[1]

    def monic(self) -> "TreePolynomial":
        return self / self.lc if self.terms else self


def leading(f: TreePolynomial) -> tuple[PlanarTree, Fraction]:
    return f.lead()


def poly_compose(f: TreePolynomial, i: int, g: TreePolynomial) -> TreePolynomial:
    """Bilinear partial composition f∘_i g with Koszul signs."""
    if f.ctx != g.ctx:
        raise ValueError("polynomials live in different graded contexts")
    ctx = f.ctx
    if f.arity is not None and not 1 <= i <= f.arity:
        raise IndexError(f"leaf index {i} out of range 1..{f.arity}")
    out: dict[PlanarTree, Fraction] = {}
    for p, a in f.terms.items():
        for q, b in g.terms.items():
            tree = compose_tree(p, i, q)
            c = out.get(tree, 0) + a * b * koszul_compose_sign(ctx, p, i, q)
            if c:
                out[tree] = c
            else:
                out.pop(tree, None)
    arity = None
    if f.arity is not None and g.arity is not None:
        arity = f.arity + g.arity - 1
    return TreePolynomial._raw(ctx, out, arity)


def substitute(host: PlanarTree, occ: Occurrence, f: TreePolynomial) -> TreePolynomial:
    """M(host, pattern, f): replace the occurrence of the pattern by ``f``.

    Signs are normalized so that substituting the pattern itself gives
    ``+host``.
    """
    pattern = occ.pattern
    if f.arity is not None and f.arity != pattern.arity:
        raise ValueError(f"cannot substitute arity {f.arity} for a pattern of arity {pattern.arity}")
    ctx = f.ctx
    code = host.code
    ends = host.ends
    prefix = code[:occ.anchor]
    suffix = code[ends[occ.anchor]:]
    hanging = [code[v:ends[v]] for v in occ.leaf_images]
    if ctx.odd:
        hanging_odd = [sum(s) % 2 for s in hanging]
        base = sum(a * w for a, w in zip(pattern.internal_before_leaves(), hanging_odd)) % 2
    out: dict[PlanarTree, Fraction] = {}
    for p, c in f.terms.items():
        body: list[int] = []
        k = 0
        for flag in p.code:
            if flag:
                body.append(1)
            else:
                body.extend(hanging[k])
                k += 1
        tree = PlanarTree(host.m, prefix + tuple(body) + suffix)
        if ctx.odd:
            e = base + sum(a * w for a, w in zip(p.internal_before_leaves(), hanging_odd))
            if e % 2:
                c = -c
        out[tree] = out.get(tree, 0) + c
    return TreePolynomial(ctx, out)


def reduce_once(f: TreePolynomial, g: TreePolynomial) -> TreePolynomial:
    """R(f, g): cancel the leading term of ``f`` using ``g``."""
    lm_f, lc_f = f.lead()
    lm_g, lc_g = g.lead()
    occs = find_occurrences(lm_g, lm_f)
    if not occs:
        raise ValueError(f"{lm_g} does not divide {lm_f}")
    return f - substitute(lm_f, occs[0], g) * (lc_f / lc_g)


class Reducer:
    """Normal forms modulo a fixed list of polynomials, with a divisor cache."""

    def __init__(self, basis: Iterable[TreePolynomial]):
        self.basis = [g for g in basis if g]
        self._leads = [(g.lm, g) for g in self.basis]
        self._cache: dict[PlanarTree, tuple[Occurrence, TreePolynomial] | None] = {}

    def divisor(self, tree: PlanarTree):
        """First (element, occurrence) whose leading monomial divides ``tree``."""
        try:
            return self._cache[tree]
        except KeyError:
            pass
        hit = None
        for lm, g in self._leads:
            if lm.m != tree.m or lm.weight > tree.weight:
                continue
            for v in range(len(tree.code)):
                occ = match_at(lm, tree, v)
                if occ is not None:
                    hit = (occ, g)
                    break
            if hit:
                break
        self._cache[tree] = hit
        return hit

    def is_normal(self, tree: PlanarTree) -> bool:
        return self.divisor(tree) is None

    def normal_form(self, f: TreePolynomial) -> TreePolynomial:
        """Reduce the greatest reducible monomial until none is left."""
        work = dict(f.terms)
        done: dict[PlanarTree, Fraction] = {}
        while work:
            tree = max(work, key=lambda t: t.path)
            c = work.pop(tree)
            hit = self.divisor(tree)
            if hit is None:
                done[tree] = c
                continue
            occ, g = hit
            scale = c / g.lc
            for t, d in substitute(tree, occ, g).terms.items():
                if t == tree:
                    continue
                v = work.get(t, 0) - scale * d
                if v:
                    work[t] = v
                else:
                    work.pop(t, None)
        return TreePolynomial._raw(f.ctx, done, f.arity)


def normal_form(f: TreePolynomial, G: Iterable[TreePolynomial]) -> TreePolynomial:
    return Reducer(G).normal_form(f)


# -- text form ---------------------------------------------------------------

class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_COEFF = re.compile(r"(\d+)(?:\s*/\s*(\d+))?\s*\*")


def parse_poly(text: str, ctx: GradedContext) -> TreePolynomial:
    """Parse ``[sign] [coeff*]tree (+|- [coeff*]tree)*``."""
    pos = 0
    n = len(text)
    terms: dict[PlanarTree, Fraction] = {}

    def skip(p):
        while p < n and text[p].isspace():
            p += 1
        return p

    pos = skip(pos)
    if pos == n:
        raise PolynomialSyntaxError("empty polynomial", pos)
    if text.strip() == "0":
        return TreePolynomial.zero(ctx)
    first = True
    while True:
        sign = 1
        pos = skip(pos)
        if pos < n and text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
        elif not first:
            raise PolynomialSyntaxError("expected '+' or '-'", pos)
        pos = skip(pos)
        coeff = Fraction(1)
        match = _COEFF.match(text, pos)
        if match:
            den = int(match.group(2)) if match.group(2) else 1
            if den == 0:
                raise PolynomialSyntaxError("zero denominator", match.start(2))
            coeff = Fraction(int(match.group(1)), den)
            pos = skip(match.end())
        start = pos
        pos = _scan_tree(text, pos)
        try:
            tree = PlanarTree.parse(text[start:pos], ctx.m)
        except ValueError as exc:
            raise PolynomialSyntaxError(str(exc), start) from None
        if tree.arity != next(iter(terms), tree).arity:
            raise PolynomialSyntaxError("polynomial is not homogeneous in arity", start)
        terms[tree] = terms.get(tree, 0) + sign * coeff
        first = False
        pos = skip(pos)
        if pos == n:
            break
    return TreePolynomial(ctx, terms, tree.arity)


def _scan_tree(text: str, pos: int) -> int:
    """End position of the tree starting at ``pos``."""
    n = len(text)
    if pos >= n:
        raise PolynomialSyntaxError("expected a tree", pos)
    if text[pos] == "*":
        return pos + 1
    if text[pos] != "(":
        raise PolynomialSyntaxError(f"expected a tree, found {text[pos]!r}", pos)
    depth = 0
    for j in range(pos, n):
        ch = text[j]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return j + 1
        elif ch not in "* \t\r\n":
            raise PolynomialSyntaxError(f"unexpected character {ch!r}", j)
    raise PolynomialSyntaxError("unbalanced '('", pos)


def _format_coeff(c: Fraction) -> str:
    if c == 1:
        return ""
    if c.denominator == 1:
        return f"{c.numerator}*"
    return f"{c.numerator}/{c.denominator}*"


def print_poly(f: TreePolynomial) -> str:
    """Terms in descending path-lex order, leading monomial first."""
    if not f:
        return "0"
    parts = []
    for k, (tree, c) in enumerate(f.sorted_terms()):
        sign = "-" if c < 0 else "+"
        body = _format_coeff(abs(c)) + str(tree)
        if k == 0:
            parts.append(f"- {body}" if sign == "-" else body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)
