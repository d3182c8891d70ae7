"""Unlabeled tree enumeration and the graded poset of KC moves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _accel
from .graphcore import Tree, canonical_code, format_tree, rooted_code, _centroids
from .transforms import enumerate_kc_moves, kc_apply

__all__ = [
    "MAX_ENUM_N",
    "PosetError",
    "PosetDiagram",
    "rooted_level_sequences",
    "enumerate_trees",
    "prufer_tree_count",
    "build_kc_poset",
    "export_dot",
    "maximal_chains",
    "tree_line",
]

MAX_ENUM_N = 16


class PosetError(RuntimeError):
    """The KC poset failed one of its structural invariants."""


def rooted_level_sequences(n: int) -> Iterator[list[int]]:
    """Canonical level sequences of all rooted trees on n vertices
    (Beyer-Hedetniemi successor rule).  The yielded list is reused."""
    if n < 1:
        return
    seq = list(range(n))
    while True:
        yield seq
        p = n - 1
        while p > 0 and seq[p] == 1:
            p -= 1
        if p == 0:
            return
        q = p - 1
        while seq[q] != seq[p] - 1:
            q -= 1
        for i in range(p, n):
            seq[i] = seq[i - p + q]


def _tree_from_levels(seq: list[int]) -> Tree:
    last_at: dict[int, int] = {}
    edges = []
    for i, lv in enumerate(seq):
        if lv > 0:
            edges.append((last_at[lv - 1], i))
        last_at[lv] = i
    return Tree(len(seq), edges)


def enumerate_trees(n: int, max_n: int = MAX_ENUM_N) -> list[Tree]:
    """One tree per isomorphism class, sorted by canonical code."""
    if not 1 <= n <= max_n:
        raise ValueError(f"n must be in 1..{max_n}")
    found: list[tuple[bytes, Tree]] = []
    for seq in rooted_level_sequences(n):
        t = _tree_from_levels(seq)
        cents = _centroids(t)
        if 0 not in cents:
            continue
        own = rooted_code(t, 0)
        if all(own <= rooted_code(t, c) for c in cents if c != 0):
            found.append((own.encode("ascii"), t))
    found.sort(key=lambda kv: kv[0])
    return [t for _, t in found]


def prufer_tree_count(n: int) -> int:
    """Independent count of unlabeled trees: decode every Pruefer sequence and
    deduplicate by an integer canonical code."""
    if n < 1:
        raise ValueError("n must be positive")
    if n <= 2:
        return 1
    return int(np.unique(_accel.prufer_class_codes(n)).shape[0])


# ---------------------------------------------------------------------------
# poset


@dataclass(frozen=True)
class PosetDiagram:
    n: int
    codes: tuple[bytes, ...]
    trees: tuple[Tree, ...]
    leaf_counts: tuple[int, ...]
    hasse_edges: tuple[tuple[int, int], ...]

    @property
    def rank(self) -> dict[int, int]:
        return {i: lc - 2 for i, lc in enumerate(self.leaf_counts)}

    def index_of(self, t: Tree) -> int:
        return self.codes.index(canonical_code(t))

    def minimal(self) -> list[int]:
        has_lower = {b for _, b in self.hasse_edges}
        return [i for i in range(len(self.codes)) if i not in has_lower]

    def maximal(self) -> list[int]:
        has_upper = {a for a, _ in self.hasse_edges}
        return [i for i in range(len(self.codes)) if i not in has_upper]

    def upper_covers(self, i: int) -> list[int]:
        return [b for a, b in self.hasse_edges if a == i]

    def reachable_from(self, i: int) -> set[int]:
        up: dict[int, list[int]] = {}
        for a, b in self.hasse_edges:
            up.setdefault(a, []).append(b)
        seen, stack = {i}, [i]
        while stack:
            for b in up.get(stack.pop(), ()):
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return seen


def build_kc_poset(n: int) -> PosetDiagram:
    if not 2 <= n <= 12:
        raise ValueError("poset construction supports 2 <= n <= 12")
    trees = enumerate_trees(n)
    codes = [canonical_code(t) for t in trees]
    index = {c: i for i, c in enumerate(codes)}
    leaves = [len(t.leaves) for t in trees]
    edges: set[tuple[int, int]] = set()
    for i, t in enumerate(trees):
        for mv in enumerate_kc_moves(t):
            if mv.trivial:
                continue
            j = index.get(canonical_code(kc_apply(t, mv)))
            if j is None:
                raise PosetError(f"KC image of tree {i} is missing from the enumeration")
            if leaves[j] != leaves[i] + 1:
                raise PosetError(f"edge {i}->{j} does not raise the leaf count by one")
            edges.add((i, j))
    p = PosetDiagram(n, tuple(codes), tuple(trees), tuple(leaves), tuple(sorted(edges)))
    lo, hi = p.minimal(), p.maximal()
    if len(lo) != 1 or leaves[lo[0]] != 2:
        raise PosetError(f"expected the path as unique minimum, got {lo}")
    if len(hi) != 1 or leaves[hi[0]] != max(n - 1, 2):
        raise PosetError(f"expected the star as unique maximum, got {hi}")
    return p


def maximal_chains(p: PosetDiagram) -> Iterator[list[int]]:
    (start,) = p.minimal()
    up: dict[int, list[int]] = {}
    for a, b in p.hasse_edges:
        up.setdefault(a, []).append(b)

    def walk(chain):
        nxt = up.get(chain[-1])
        if not nxt:
            yield list(chain)
            return
        for b in nxt:
            chain.append(b)
            yield from walk(chain)
            chain.pop()

    yield from walk([start])


def export_dot(p: PosetDiagram) -> str:
    lines = [f"digraph kc_poset_{p.n} {{", "  rankdir=BT;"]
    for i, (code, lc) in enumerate(zip(p.codes, p.leaf_counts)):
        lines.append(f'  t{i} [label="{code.hex()}\\nleaves={lc}"];')
    for a, b in p.hasse_edges:
        lines.append(f"  t{a} -> t{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_line(t: Tree) -> str:
    """Single-line form of a tree file: ``n u-v u-v ...``."""
    return " ".join([str(t.n)] + [f"{u}-{v}" for u, v in t.edges])


def format_listing(trees) -> str:
    return "".join(format_tree(t) + "\n" for t in trees)
