"""Planar m-ary tree monomials.

A tree is stored as its preorder code: one flag per vertex, ``1`` for an
internal node and ``0`` for a leaf.  The code determines the tree, and so
does the path sequence (leaf depths, left to right), which is what equality,
hashing and the path-lex order use.

Vertices are addressed by their preorder index in the code; leaves are also
addressed 1..arity from left to right, as in ``compose_tree``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

__all__ = [
    "PlanarTree",
    "Occurrence",
    "Scm",
    "generator",
    "leaf",
    "compose_tree",
    "path_sequence",
    "compare_pathlex",
    "enumerate_trees",
    "count_trees",
    "find_occurrences",
    "divides",
    "match_at",
    "enumerate_scms",
    "weight_of_arity",
]


def _scan(code: Sequence[int], m: int):
    """Return (leaf depths, subtree ends) for a preorder code, or raise."""
    depths = []
    ends = [0] * len(code)
    stack: list[list[int]] = []  # open internal nodes: [start, children still missing]
    for i, c in enumerate(code):
        if not stack and i > 0:
            raise ValueError("preorder code has trailing vertices")
        if c:
            stack.append([i, m])
            continue
        depths.append(len(stack))
        ends[i] = i + 1
        while stack:
            stack[-1][1] -= 1
            if stack[-1][1]:
                break
            start, _ = stack.pop()
            ends[start] = i + 1
    if stack or not code:
        raise ValueError("preorder code is incomplete")
    return tuple(depths), tuple(ends)


class PlanarTree:
    """An m-ary planar tree, immutable and hashable.

    Build trees with :func:`generator`, :func:`leaf`, :func:`compose_tree`,
    :meth:`parse` or :meth:`from_path`.
    """

    __slots__ = ("m", "code", "path", "ends", "weight")

    def __init__(self, m: int, code: Sequence[int]):
        if m < 2:
            raise ValueError(f"branching arity must be >= 2, got {m}")
        code = tuple(1 if c else 0 for c in code)
        path, ends = _scan(code, m)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "code", code)
        object.__setattr__(self, "path", path)
        object.__setattr__(self, "ends", ends)
        object.__setattr__(self, "weight", sum(code))

    def __setattr__(self, name, value):
        raise AttributeError("PlanarTree is immutable")

    def __getstate__(self):
        return (self.m, self.code)

    def __setstate__(self, state):
        m, code = state
        path, ends = _scan(code, m)
        for name, value in (("m", m), ("code", code), ("path", path),
                            ("ends", ends), ("weight", sum(code))):
            object.__setattr__(self, name, value)

    @property
    def arity(self) -> int:
        return len(self.path)

    def __len__(self) -> int:
        return self.arity

    def __eq__(self, other):
        if not isinstance(other, PlanarTree):
            return NotImplemented
        return self.m == other.m and self.path == other.path

    def __hash__(self):
        return hash((self.m, self.path))

    def __lt__(self, other: "PlanarTree") -> bool:
        return compare_pathlex(self, other) < 0

    def __repr__(self):
        return f"PlanarTree({self})"

    def __str__(self):
        out = []
        stack: list[int] = []
        for c in self.code:
            if c:
                out.append("(")
                stack.append(self.m)
                continue
            out.append("*")
            while stack:
                stack[-1] -= 1
                if stack[-1]:
                    break
                stack.pop()
                out.append(")")
        return "".join(out)

    # -- vertex bookkeeping -------------------------------------------------

    def internal_vertices(self) -> list[int]:
        return [i for i, c in enumerate(self.code) if c]

    def leaf_vertices(self) -> list[int]:
        """Preorder indices of the leaves, left to right."""
        return [i for i, c in enumerate(self.code) if not c]

    def subtree(self, v: int) -> "PlanarTree":
        return PlanarTree(self.m, self.code[v:self.ends[v]])

    def children(self, v: int) -> list[int]:
        if not self.code[v]:
            return []
        kids = [v + 1]
        for _ in range(self.m - 1):
            kids.append(self.ends[kids[-1]])
        return kids

    def internal_before_leaves(self) -> list[int]:
        """For each leaf k, the number of internal vertices preceding it in preorder."""
        out = []
        seen = 0
        for c in self.code:
            if c:
                seen += 1
            else:
                out.append(seen)
        return out

    def vertex_address(self, v: int) -> tuple[int, ...]:
        """Child-index route (0-based) from the root down to vertex ``v``."""
        route = []
        u = 0
        while u != v:
            for k, child in enumerate(self.children(u)):
                if child <= v < self.ends[child]:
                    route.append(k)
                    u = child
                    break
            else:  # pragma: no cover - v out of range
                raise IndexError(v)
        return tuple(route)

    def vertex_at(self, address: Sequence[int]) -> int:
        u = 0
        for k in address:
            u = self.children(u)[k]
        return u

    # -- constructors ---------------------------------------------------------

    @classmethod
    def parse(cls, text: str, m: int | None = None) -> "PlanarTree":
        """Read the nonassociative notation, e.g. ``((***)**)``."""
        code = []
        counts: list[int] = []
        for pos, ch in enumerate(text):
            if ch.isspace():
                continue
            if ch == "(":
                code.append(1)
                counts.append(0)
            elif ch == "*":
                code.append(0)
                if counts:
                    counts[-1] += 1
            elif ch == ")":
                if not counts:
                    raise ValueError(f"unbalanced ')' at position {pos}")
                k = counts.pop()
                if m is None:
                    m = k
                if k != m:
                    raise ValueError(f"node closed at position {pos} has {k} children, expected {m}")
                if counts:
                    counts[-1] += 1
            else:
                raise ValueError(f"unexpected character {ch!r} at position {pos}")
        if counts:
            raise ValueError("unbalanced '(' in tree")
        if m is None:
            raise ValueError("cannot infer branching arity from a bare leaf; pass m")
        return cls(m, code)

    @classmethod
    def from_path(cls, m: int, path: Sequence[int]) -> "PlanarTree":
        """Rebuild the unique tree with the given leaf depths."""
        path = tuple(path)
        if not path:
            raise ValueError("empty path sequence")
        top = max(path)
        code: list[int] = []

        def build(lo: int, hi: int, depth: int) -> None:
            # leaves lo..hi-1 form one subtree rooted at ``depth``
            if hi - lo == 1 and path[lo] == depth:
                code.append(0)
                return
            if path[lo] <= depth:
                raise ValueError(f"not a valid path sequence: {path}")
            code.append(1)
            start = lo
            unit = m ** (top - depth - 1)
            for _ in range(m):
                acc = 0
                end = start
                while acc < unit:
                    if end >= hi or path[end] <= depth:
                        raise ValueError(f"not a valid path sequence: {path}")
                    acc += m ** (top - path[end])
                    end += 1
                if acc != unit:
                    raise ValueError(f"not a valid path sequence: {path}")
                build(start, end, depth + 1)
                start = end
            if start != hi:
                raise ValueError(f"not a valid path sequence: {path}")

        build(0, len(path), 0)
        return cls(m, code)


def leaf(m: int) -> PlanarTree:
    """The single-vertex tree (arity 1, weight 0); unit of the free operad."""
    return PlanarTree(m, (0,))


def generator(m: int) -> PlanarTree:
    """The basic tree ``t``: one internal node with ``m`` leaves."""
    if m < 2:
        raise ValueError(f"branching arity must be >= 2, got {m}")
    return PlanarTree(m, (1,) + (0,) * m)


def compose_tree(p: PlanarTree, i: int, q: PlanarTree) -> PlanarTree:
    """Graft the root of ``q`` onto leaf ``i`` (1-based) of ``p``."""
    if p.m != q.m:
        raise ValueError(f"cannot compose trees of arities m={p.m} and m={q.m}")
    if not 1 <= i <= p.arity:
        raise IndexError(f"leaf index {i} out of range 1..{p.arity}")
    pos = p.leaf_vertices()[i - 1]
    return PlanarTree(p.m, p.code[:pos] + q.code + p.code[pos + 1:])


def path_sequence(p: PlanarTree) -> tuple[int, ...]:
    return p.path


def compare_pathlex(p: PlanarTree, q: PlanarTree) -> int:
    """-1, 0 or 1 as ``p`` precedes, equals or follows ``q`` in path-lex order."""
    if p.m != q.m or p.arity != q.arity:
        raise ValueError("path-lex order compares trees of equal m and arity only")
    return (p.path > q.path) - (p.path < q.path)


def weight_of_arity(m: int, n: int) -> int:
    if n < 1 or (n - 1) % (m - 1):
        raise ValueError(f"arity {n} is not 1 mod {m - 1}")
    return (n - 1) // (m - 1)


def count_trees(m: int, n: int) -> int:
    """Fuss-Catalan number |T(n)|."""
    w = weight_of_arity(m, n)
    return math.comb(m * w, w) // ((m - 1) * w + 1)


@lru_cache(maxsize=None)
def _codes_of_weight(m: int, w: int) -> tuple[tuple[int, ...], ...]:
    if w == 0:
        return ((0,),)
    out = []
    for split in _compositions(w - 1, m):
        parts = [_codes_of_weight(m, k) for k in split]
        for combo in _product(parts):
            out.append((1,) + tuple(c for sub in combo for c in sub))
    return tuple(out)


def _compositions(total: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


def _product(parts):
    if not parts:
        yield ()
        return
    for head in parts[0]:
        for tail in _product(parts[1:]):
            yield (head,) + tail


@lru_cache(maxsize=None)
def enumerate_trees(m: int, n: int) -> tuple[PlanarTree, ...]:
    """All trees of arity ``n``, ascending in path-lex order."""
    w = weight_of_arity(m, n)
    return tuple(sorted((PlanarTree(m, c) for c in _codes_of_weight(m, w)),
                        key=lambda t: t.path))


# -- occurrences --------------------------------------------------------------

@dataclass(frozen=True)
class Occurrence:
    """An embedding of ``pattern`` in ``host`` rooted at host vertex ``anchor``.

    ``covered`` lists the host internal vertices hit by pattern internal
    vertices; ``leaf_images`` the host vertices hit by pattern leaves, in
    order.  Everything is in host preorder indices.
    """

    host: PlanarTree
    pattern: PlanarTree
    anchor: int
    covered: tuple[int, ...]
    leaf_images: tuple[int, ...]

    @property
    def leaf_span(self) -> list[tuple[int, int]]:
        """Host leaf interval (1-based, inclusive) below each pattern leaf."""
        leaf_index = {v: k + 1 for k, v in enumerate(self.host.leaf_vertices())}
        spans = []
        for v in self.leaf_images:
            inside = [leaf_index[u] for u in range(v, self.host.ends[v]) if u in leaf_index]
            spans.append((inside[0], inside[-1]))
        return spans


def match_at(pattern: PlanarTree, host: PlanarTree, anchor: int) -> Occurrence | None:
    """The occurrence of ``pattern`` rooted at ``anchor``, if there is one."""
    j = anchor
    covered = []
    leaves = []
    code = host.code
    for c in pattern.code:
        if c:
            if not code[j]:
                return None
            covered.append(j)
            j += 1
        else:
            leaves.append(j)
            j = host.ends[j]
    return Occurrence(host, pattern, anchor, tuple(covered), tuple(leaves))


def find_occurrences(pattern: PlanarTree, host: PlanarTree) -> list[Occurrence]:
    """All occurrences of ``pattern`` in ``host``, by ascending anchor."""
    if pattern.m != host.m:
        raise ValueError("pattern and host have different branching arity")
    if pattern.weight > host.weight:
        return []
    out = []
    for v in range(len(host.code)):
        occ = match_at(pattern, host, v)
        if occ is not None:
            out.append(occ)
    return out


def divides(pattern: PlanarTree, host: PlanarTree) -> bool:
    if pattern.m != host.m or pattern.weight > host.weight:
        return False
    return any(match_at(pattern, host, v) is not None for v in range(len(host.code)))


# -- small common multiples -----------------------------------------------------

@dataclass(frozen=True)
class Scm:
    tree: PlanarTree
    occ_left: Occurrence
    occ_right: Occurrence

    @property
    def key(self):
        return (self.tree.arity, self.tree.path, self.occ_left.anchor, self.occ_right.anchor)


def _overlay(base: PlanarTree, v: int, top: PlanarTree) -> tuple[int, ...]:
    """Code of the union of ``base`` and ``top`` with top's root on base vertex ``v``."""
    out: list[int] = []
    i = 0
    # copy base up to v, then merge the subtree at v with top
    out.extend(base.code[:v])

    def merge(a_code, ai, a_ends, b_code, bi, b_ends):
        if not a_code[ai]:
            out.extend(b_code[bi:b_ends[bi]])
            return
        if not b_code[bi]:
            out.extend(a_code[ai:a_ends[ai]])
            return
        out.append(1)
        ac, bc = ai + 1, bi + 1
        for _ in range(base.m):
            merge(a_code, ac, a_ends, b_code, bc, b_ends)
            ac, bc = a_ends[ac], b_ends[bc]

    merge(base.code, v, base.ends, top.code, 0, top.ends)
    i = base.ends[v]
    out.extend(base.code[i:])
    return tuple(out)


def enumerate_scms(p: PlanarTree, q: PlanarTree, exclude_total_self: bool = False) -> list[Scm]:
    """Small common multiples of ``p`` (left) and ``q`` (right).

    Only overlaps sharing at least one internal vertex are returned.  With
    ``exclude_total_self`` and ``p == q`` the pair is treated as unordered and
    the full-coincidence overlap is dropped.
    """
    if p.m != q.m:
        raise ValueError("patterns have different branching arity")
    if p.weight == 0 or q.weight == 0:
        return []
    self_mode = exclude_total_self and p == q
    found: dict[tuple, Scm] = {}

    def record(tree: PlanarTree, a_left: int, a_right: int) -> None:
        if self_mode:
            if a_left == a_right:
                return
            a_left, a_right = min(a_left, a_right), max(a_left, a_right)
        key = (tree.path, a_left, a_right)
        if key in found:
            return
        left = match_at(p, tree, a_left)
        right = match_at(q, tree, a_right)
        assert left is not None and right is not None
        found[key] = Scm(tree, left, right)

    for v in p.internal_vertices():
        tree = PlanarTree(p.m, _overlay(p, v, q))
        record(tree, 0, tree.vertex_at(p.vertex_address(v)))
    for v in q.internal_vertices():
        tree = PlanarTree(p.m, _overlay(q, v, p))
        record(tree, tree.vertex_at(q.vertex_address(v)), 0)
    return sorted(found.values(), key=lambda s: s.key)
