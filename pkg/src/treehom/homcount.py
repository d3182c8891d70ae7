"""Exact homomorphism counting.

The core routine is the tree-walk dynamic program: process a rooted tree
children-first; a childless vertex starts from the all-ones vector, siblings
are merged by an entrywise product, and every edge toward the root applies
one neighbour-sum step over the target graph.  Entries are Python ints so
nothing overflows; an int64 kernel (numba or numpy) is used only when a
degree bound proves every intermediate value fits.
"""

from __future__ import annotations

import enum
import itertools
import math
from typing import Sequence

import numpy as np

from . import _accel
from .graphcore import Graph, Tree

__all__ = [
    "BudgetExceeded",
    "VectorOrder",
    "hom_vector",
    "hom_count",
    "hom_brute_force",
    "hom_cycle",
    "hom_parity_split",
    "g_product",
    "closed_form",
    "contract",
    "hadamard",
    "dominance_compare",
    "shape_test",
    "is_symmetric",
    "is_unimodal",
    "is_symmetric_unimodal",
    "is_symmetric_bi_unimodal",
    "log_concave_alternating",
    "correlation_pair",
    "vector_to_json",
]

HomVector = tuple[int, ...]


class BudgetExceeded(RuntimeError):
    """The brute-force oracle refuses instances above its map budget."""


# ---------------------------------------------------------------------------
# tree-walk


def contract(vec: Sequence[int], g: Graph) -> HomVector:
    """One edge step toward the root: entry i becomes the sum over N(i)."""
    return tuple(sum(vec[j] for j in g.adj[i]) for i in range(g.n))


def hadamard(a: Sequence[int], b: Sequence[int]) -> HomVector:
    if len(a) != len(b):
        raise ValueError("length mismatch")
    return tuple(x * y for x, y in zip(a, b))


def _fits_int64(m: int, g: Graph) -> bool:
    # every partial vector entry is at most maxdeg**(m-1); the final sum adds
    # a factor n but that sum is done in Python ints
    d = max(g.max_degree, 1)
    return d ** max(m - 1, 0) < _accel.INT64_SAFE


def _hom_vector_bigint(order, parent, g: Graph) -> HomVector:
    n = g.n
    acc: dict[int, list[int]] = {}
    adj = g.adj
    for x in reversed(order):
        vec = acc.pop(x, None)
        if vec is None:
            vec = [1] * n
        p = parent[x]
        if p < 0:
            return tuple(vec)
        step = [sum(vec[j] for j in adj[i]) for i in range(n)]
        tgt = acc.get(p)
        if tgt is None:
            acc[p] = step
        else:
            for i in range(n):
                tgt[i] *= step[i]
    raise AssertionError("unreachable")


def hom_vector(t: Tree, root: int, g: Graph, *, exact_only: bool = False) -> HomVector:
    """Entry i counts homomorphisms of ``t`` into ``g`` sending ``root`` to i."""
    if not 0 <= root < t.n:
        raise ValueError(f"invalid root {root}")
    if g.n == 0:
        raise ValueError("target graph must be nonempty")
    order, parent = t.traversal(root)
    if not exact_only and _fits_int64(t.n, g):
        indptr, indices = g.csr
        out = _accel.hom_vector_kernel(
            np.asarray(order, dtype=np.int64),
            np.asarray(parent, dtype=np.int64),
            indptr,
            indices,
            g.n,
        )
        return tuple(int(x) for x in out)
    return _hom_vector_bigint(order, parent, g)


def hom_count(t: Tree, g: Graph) -> int:
    if t.n == 0:
        return 1
    return sum(hom_vector(t, 0, g))


def hom_brute_force(h: Graph, g: Graph, budget: int = 10**8) -> int:
    """Count maps V(h) -> V(g) preserving adjacency by enumerating them all."""
    total = g.n ** h.n
    if total > budget:
        raise BudgetExceeded(f"{g.n}^{h.n} = {total} maps exceeds budget {budget}")
    if h.n == 0:
        return 1
    if g.n == 0:
        return 0
    eu = np.array([u for u, _ in h.edges], dtype=np.int64)
    ev = np.array([v for _, v in h.edges], dtype=np.int64)
    adjmat = g.adjacency_matrix().astype(np.int64)
    return int(_accel.brute_force_kernel(h.n, g.n, eu, ev, adjmat, total))


def hom_cycle(m: int, g: Graph) -> int:
    """Closed walks of length m, i.e. trace(A^m)."""
    if m < 3:
        raise ValueError("cycle length must be at least 3")
    if g.n == 0:
        return 0
    d = max(g.max_degree, 1)
    if g.n * d**m < _accel.INT64_SAFE:
        a = g.adjacency_matrix().astype(np.int64)
        return int(np.trace(np.linalg.matrix_power(a, m)))
    a = g.adjacency_matrix().astype(object)
    return int(np.trace(np.linalg.matrix_power(a, m)))


# ---------------------------------------------------------------------------
# parity split and g


def hom_parity_split(t: Tree, u: int, n: int) -> tuple[int, int]:
    """(hom0, hom1): homomorphisms into P_n with u on an even / odd 1-based
    path vertex."""
    if n < 3 or n % 2 == 0:
        raise ValueError("parity split is defined for odd n >= 3 only")
    from .graphcore import path

    vec = hom_vector(t, u, path(n))
    # 0-based index k is 1-based k+1, so even 1-based == odd 0-based
    return sum(vec[1::2]), sum(vec[0::2])


def g_product(t1: Tree, t2: Tree, u: int = 0) -> int:
    vec = hom_vector(t1, u, t2)
    side_a = sum(x for x, c in zip(vec, t2.colors) if c == 0)
    side_b = sum(x for x, c in zip(vec, t2.colors) if c == 1)
    return side_a * side_b


# ---------------------------------------------------------------------------
# closed forms


def closed_form(kind: str, *params) -> int:
    """Exact closed-form values.

    kinds: ``star-into-path`` (m, n), ``star-endo`` (n), ``tree-into-star``
    (tree, n), ``doublestar-into-star`` (k), ``star-into-graph`` (m, graph).
    """
    if kind == "star-into-path":
        m, n = params
        if n < 2 or m < 1:
            raise ValueError("need m >= 1, n >= 2")
        return (n - 2) * 2 ** (m - 1) + 2
    if kind == "star-endo":
        (n,) = params
        if n < 2:
            raise ValueError("need n >= 2")
        return (n - 1) ** (n - 1) + (n - 1)
    if kind == "tree-into-star":
        t, n = params
        if n < 2:
            raise ValueError("need n >= 2")
        a, b = t.bipartition
        return (n - 1) ** len(a) + (n - 1) ** len(b)
    if kind == "doublestar-into-star":
        (k,) = params
        if k < 2:
            raise ValueError("need k >= 2")
        return 2 * (2 * k - 1) ** k
    if kind == "star-into-graph":
        m, g = params
        if m < 1:
            raise ValueError("need m >= 1")
        return sum(d ** (m - 1) for d in g.degrees)
    raise ValueError(f"unknown closed form {kind!r}")


# ---------------------------------------------------------------------------
# vector orders and shapes


class VectorOrder(enum.Enum):
    EQUAL = "equal"
    LESS_EQUAL = "less-or-equal"
    GREATER_EQUAL = "greater-or-equal"
    INCOMPARABLE = "incomparable"


def is_symmetric(a: Sequence[int]) -> bool:
    return all(a[i] == a[-1 - i] for i in range(len(a) // 2))


def is_unimodal(a: Sequence[int]) -> bool:
    i, n = 0, len(a)
    while i + 1 < n and a[i] <= a[i + 1]:
        i += 1
    while i + 1 < n and a[i] >= a[i + 1]:
        i += 1
    return i >= n - 1


def _window_sums(a: Sequence[int]) -> list[int]:
    n = len(a)
    # 1-based window [k, n+1-k] is 0-based [k-1, n-k]
    return [sum(a[k - 1 : n - k + 1]) for k in range(1, math.ceil(n / 2) + 1)]


def dominance_compare(a: Sequence[int], b: Sequence[int]) -> VectorOrder:
    if len(a) != len(b):
        raise ValueError("length mismatch")
    if not (is_symmetric(a) and is_symmetric(b)):
        raise ValueError("dominance order is defined on symmetric vectors only")
    wa, wb = _window_sums(a), _window_sums(b)
    le = all(x <= y for x, y in zip(wa, wb))
    ge = all(x >= y for x, y in zip(wa, wb))
    if le and ge:
        return VectorOrder.EQUAL
    if le:
        return VectorOrder.LESS_EQUAL
    if ge:
        return VectorOrder.GREATER_EQUAL
    return VectorOrder.INCOMPARABLE


def is_symmetric_unimodal(a: Sequence[int]) -> bool:
    return is_symmetric(a) and is_unimodal(a)


def is_symmetric_bi_unimodal(a: Sequence[int]) -> bool:
    return is_symmetric(a) and is_unimodal(a[0::2]) and is_unimodal(a[1::2])


def log_concave_alternating(a: Sequence[int]) -> bool:
    """a_i a_j <= a_{i+1} a_{j-1} whenever i < j have opposite parity."""
    n = len(a)
    for i, j in itertools.combinations(range(n), 2):
        if (j - i) % 2 == 1 and a[i] * a[j] > a[i + 1] * a[j - 1]:
            return False
    return True


def correlation_pair(a: Sequence[int], b: Sequence[int]) -> bool:
    """a_i b_j >= a_j b_i for same-parity i, j with i at least as central."""
    n = len(a)
    if len(b) != n:
        raise ValueError("length mismatch")
    # doubled distance from the centre avoids half-integers
    off = [abs(n - 1 - 2 * i) for i in range(n)]
    for i in range(n):
        for j in range(i % 2, n, 2):
            if off[i] <= off[j] and a[i] * b[j] < a[j] * b[i]:
                return False
    return True


_SHAPES = {
    "symmetric-unimodal": is_symmetric_unimodal,
    "symmetric-bi-unimodal": is_symmetric_bi_unimodal,
    "log-concave-alternating": log_concave_alternating,
}


def shape_test(a: Sequence[int], kind: str, b: Sequence[int] | None = None) -> bool:
    if kind == "correlation-pair":
        if b is None:
            raise ValueError("correlation-pair needs the subtree vector as b")
        return correlation_pair(a, b)
    try:
        return _SHAPES[kind](a)
    except KeyError:
        raise ValueError(f"unknown shape {kind!r}") from None


def vector_to_json(vec: Sequence[int]) -> list[str]:
    return [str(int(x)) for x in vec]
