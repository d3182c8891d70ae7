"""Graph and tree representations, family constructors, canonical forms and
structural metrics.

Vertices are always ``0..n-1``.  Graphs are treated as immutable once built;
derived data (degrees, CSR arrays, bipartition, rooted traversals) is cached
lazily on the instance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Graph",
    "Tree",
    "GraphParseError",
    "TreeMetrics",
    "parse_graph",
    "format_tree",
    "format_graph",
    "make_family",
    "path",
    "star",
    "cycle",
    "complete",
    "spider",
    "Y",
    "diameter",
    "bfs_distances",
    "doublestar",
    "e7",
    "layered",
    "tree_metrics",
    "wiener_index",
    "canonical_code",
    "rooted_code",
    "is_isomorphic",
    "glue",
    "induced_subgraph",
]


class GraphParseError(ValueError):
    """Raised for malformed graph/tree input.  ``line`` is 1-based (0 if the
    problem is not tied to a single line)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        canon: list[tuple[int, int]] = []
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
            canon.append((min(u, v), max(u, v)))
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(canon))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, edges={list(self.edges)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __len__(self) -> int:
        return self.n

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    @cached_property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) of the adjacency structure, int64."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum(self.degrees)
        indices = np.fromiter(
            (v for a in self.adj for v in a), dtype=np.int64, count=int(indptr[-1])
        )
        return indptr, indices

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1
        return A

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(bfs_distances(self, 0)) == self.n

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])


class Tree(Graph):
    """A tree, optionally rooted.  The bipartition is computed on demand."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], root: int | None = None):
        super().__init__(n, edges)
        if n == 0:
            raise ValueError("a tree needs at least one vertex")
        if len(self.edges) != n - 1:
            raise ValueError(f"a tree on {n} vertices has {n - 1} edges, got {len(self.edges)}")
        if not self.is_connected():
            raise ValueError("tree input is disconnected")
        if root is not None and not 0 <= root < n:
            raise ValueError(f"root {root} out of range")
        self.root = root

    @classmethod
    def from_graph(cls, g: Graph, root: int | None = None) -> "Tree":
        return cls(g.n, g.edges, root)

    def with_root(self, root: int) -> "Tree":
        return Tree(self.n, self.edges, root)

    def relabel(self, perm: Sequence[int]) -> "Tree":
        root = None if self.root is None else perm[self.root]
        return Tree(self.n, [(perm[u], perm[v]) for u, v in self.edges], root)

    @cached_property
    def colors(self) -> tuple[int, ...]:
        """Proper 2-coloring with vertex 0 colored 0."""
        color = [-1] * self.n
        color[0] = 0
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    queue.append(y)
        return tuple(color)

    @cached_property
    def bipartition(self) -> tuple[frozenset[int], frozenset[int]]:
        a = frozenset(v for v, c in enumerate(self.colors) if c == 0)
        b = frozenset(v for v, c in enumerate(self.colors) if c == 1)
        return a, b

    @cached_property
    def small_class(self) -> frozenset[int]:
        """Color class of size at most ``(n-1)/2``; undefined for balanced trees."""
        a, b = self.bipartition
        if len(a) == len(b):
            raise ValueError("balanced bipartition has no small class")
        return a if len(a) < len(b) else b

    @cached_property
    def large_class(self) -> frozenset[int]:
        a, b = self.bipartition
        return b if self.small_class is a else a

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v, d in enumerate(self.degrees) if d == 1)

    def traversal(self, root: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """BFS order from ``root`` and the parent array (root's parent is -1).
        Reversing the order gives a valid children-before-parent schedule."""
        cache = self.__dict__.setdefault("_traversals", {})
        hit = cache.get(root)
        if hit is not None:
            return hit
        if not 0 <= root < self.n:
            raise ValueError(f"root {root} out of range")
        parent = [-1] * self.n
        order = [root]
        seen = [False] * self.n
        seen[root] = True
        i = 0
        while i < len(order):
            x = order[i]
            i += 1
            for y in self.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    order.append(y)
        hit = (tuple(order), tuple(parent))
        cache[root] = hit
        return hit

    def path_between(self, u: int, v: int) -> list[int]:
        order, parent = self.traversal(u)
        out = [v]
        while out[-1] != u:
            out.append(parent[out[-1]])
        out.reverse()
        return out

    def distance(self, u: int, v: int) -> int:
        return len(self.path_between(u, v)) - 1


# ---------------------------------------------------------------------------
# parsing / formatting


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_graph(text: str, one_based: bool = False) -> Graph:
    """Parse the line-based graph/tree format.

    A header with one integer ``n`` announces a tree (``n-1`` edge lines
    follow, a :class:`Tree` is returned); a header ``n m`` announces a general
    graph with ``m`` edge lines.
    """
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip(raw)
        if body:
            rows.append((lineno, body.split()))
    if not rows:
        raise GraphParseError("empty input")
    head_line, head = rows[0]
    try:
        header = [int(t) for t in head]
    except ValueError:
        raise GraphParseError(f"bad header {' '.join(head)!r}", head_line) from None
    if len(header) == 1:
        is_tree, n = True, header[0]
        m = n - 1
    elif len(header) == 2:
        is_tree = False
        n, m = header
    else:
        raise GraphParseError("header must be 'n' (tree) or 'n m' (graph)", head_line)
    if n < (1 if is_tree else 0) or m < 0:
        raise GraphParseError("vertex/edge count out of range", head_line)
    body = rows[1:]
    if len(body) != m:
        raise GraphParseError(f"expected {m} edge lines, found {len(body)}", head_line)

    offset = 1 if one_based else 0
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, toks in body:
        if len(toks) != 2:
            raise GraphParseError("edge line must have two vertices", lineno)
        try:
            u, v = (int(t) - offset for t in toks)
        except ValueError:
            raise GraphParseError(f"non-integer vertex in {' '.join(toks)!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"vertex out of range in edge {' '.join(toks)}", lineno)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {toks[0]}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"duplicate edge {' '.join(toks)}", lineno)
        seen.add(key)
        edges.append((u, v))
    g = Graph(n, edges)
    if is_tree:
        if not g.is_connected():
            raise GraphParseError("tree input is disconnected")
        return Tree(n, edges)
    return g


def format_tree(t: Tree) -> str:
    lines = [str(t.n)] + [f"{u} {v}" for u, v in t.edges]
    return "\n".join(lines) + "\n"


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# families


def _positive(*params: int) -> None:
    for p in params:
        if int(p) != p or p <= 0:
            raise ValueError(f"parameters must be positive integers, got {params}")


def path(n: int) -> Tree:
    _positive(n)
    return Tree(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Tree:
    """Center 0 with ``n-1`` leaves."""
    _positive(n)
    return Tree(n, [(0, i) for i in range(1, n)])


def cycle(m: int) -> Graph:
    if m < 3:
        raise ValueError("cycle needs m >= 3")
    return Graph(m, [(i, (i + 1) % m) for i in range(m)])


def complete(n: int) -> Graph:
    _positive(n)
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def spider(*arms: int) -> Tree:
    """Center 0 with pendant paths of the given lengths."""
    _positive(*arms)
    edges = []
    nxt = 1
    for length in arms:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Tree(nxt, edges)


def Y(a: int, b: int, c: int) -> Tree:
    _positive(a, b, c)
    if a + b + c + 1 < 4:
        raise ValueError("Y(a,b,c) needs at least 4 vertices")
    return spider(a, b, c)


def doublestar(k: int) -> Tree:
    """Two adjacent centers 0 and 1, each carrying ``k-1`` leaves."""
    _positive(k)
    if k < 2:
        raise ValueError("doublestar needs k >= 2")
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(k - 1)]
    edges += [(1, k + 1 + i) for i in range(k - 1)]
    return Tree(2 * k, edges)


def e7() -> Tree:
    """P_6 with a pendant vertex on its third vertex."""
    return Tree(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)])


def layered(k1: int, k2: int, k3: int) -> Tree:
    """Root with ``k1`` children, each with ``k2`` children, each of those
    with ``k3`` children."""
    _positive(k1, k2, k3)
    edges = []
    nxt = 1
    for _ in range(k1):
        a = nxt
        nxt += 1
        edges.append((0, a))
        for _ in range(k2):
            b = nxt
            nxt += 1
            edges.append((a, b))
            for _ in range(k3):
                edges.append((b, nxt))
                nxt += 1
    return Tree(nxt, edges)


_FAMILIES = {
    "path": (path, 1),
    "star": (star, 1),
    "cycle": (cycle, 1),
    "complete": (complete, 1),
    "Y": (Y, 3),
    "doublestar": (doublestar, 1),
    "E7": (e7, 0),
    "layered": (layered, 3),
}


def make_family(kind: str, *params: int) -> Graph:
    try:
        ctor, arity = _FAMILIES[kind]
    except KeyError:
        raise ValueError(f"unknown family {kind!r}; known: {sorted(_FAMILIES)}") from None
    if len(params) != arity:
        raise ValueError(f"{kind} takes {arity} parameter(s), got {len(params)}")
    if kind != "cycle":
        _positive(*params)
    return ctor(*params)


# ---------------------------------------------------------------------------
# metrics


def bfs_distances(g: Graph, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def wiener_index(g: Graph) -> int:
    """Sum of d(u, v) over all ordered pairs (u = v included)."""
    total = 0
    for s in range(g.n):
        dist = bfs_distances(g, s)
        if len(dist) != g.n:
            raise ValueError("Wiener index of a disconnected graph is undefined")
        total += sum(dist.values())
    return total


@dataclass(frozen=True)
class TreeMetrics:
    leaves: int | None
    degree_sequence: tuple[int, ...]
    diameter: int | None
    wiener_index: int
    bipartition_sizes: tuple[int, int] | None
    is_starlike: bool | None


def diameter(t: Tree) -> int:
    d0 = bfs_distances(t, 0)
    far = max(d0, key=d0.get)
    return max(bfs_distances(t, far).values())


def tree_metrics(g: Graph) -> TreeMetrics:
    degseq = tuple(sorted(g.degrees, reverse=True))
    w = wiener_index(g)
    if not isinstance(g, Tree):
        return TreeMetrics(None, degseq, None, w, None, None)
    a, b = g.bipartition
    return TreeMetrics(
        leaves=len(g.leaves),
        degree_sequence=degseq,
        diameter=diameter(g),
        wiener_index=w,
        bipartition_sizes=tuple(sorted((len(a), len(b)))),
        is_starlike=sum(1 for d in g.degrees if d > 2) <= 1,
    )


# ---------------------------------------------------------------------------
# canonical forms


def _centroids(t: Tree) -> list[int]:
    order, parent = t.traversal(0)
    size = [1] * t.n
    for x in reversed(order):
        if parent[x] >= 0:
            size[parent[x]] += size[x]
    best, out = t.n + 1, []
    for x in range(t.n):
        worst = t.n - size[x]
        for y in t.adj[x]:
            if y != parent[x]:
                worst = max(worst, size[y])
        if worst < best:
            best, out = worst, [x]
        elif worst == best:
            out.append(x)
    return out


def rooted_code(t: Tree, root: int, marks: Sequence[int] = ()) -> str:
    """AHU string of ``t`` rooted at ``root``; marked vertices carry a letter
    per mark position ('a' for marks[0], 'b' for marks[1])."""
    order, parent = t.traversal(root)
    tags = {}
    for i, mk in enumerate(marks):
        tags[mk] = tags.get(mk, "") + "ab"[i]
    kids: list[list[str]] = [[] for _ in range(t.n)]
    code = [""] * t.n
    for x in reversed(order):
        kids[x].sort()
        code[x] = "(" + tags.get(x, "") + "".join(kids[x]) + ")"
        kids[x] = []
        if parent[x] >= 0:
            kids[parent[x]].append(code[x])
    return code[root]


def canonical_code(t: Tree, marks: Sequence[int] = ()) -> bytes:
    """Label-invariant code of the (optionally vertex-marked) free tree.

    Rooted at the centroid; for bicentroidal trees the lexicographically
    smaller of the two rooted codes is taken.
    """
    if len(marks) > 2:
        raise ValueError("at most two marks are supported")
    for mk in marks:
        if not 0 <= mk < t.n:
            raise ValueError(f"mark {mk} out of range")
    return min(rooted_code(t, c, marks) for c in _centroids(t)).encode("ascii")


def is_isomorphic(t1: Tree, t2: Tree) -> bool:
    return t1.n == t2.n and canonical_code(t1) == canonical_code(t2)


# ---------------------------------------------------------------------------
# assembly helpers


def glue(base: Tree, at: int, branch: Tree, branch_root: int) -> tuple[Tree, list[int]]:
    """Identify ``branch_root`` with ``base`` vertex ``at``.

    Returns the new tree and the map from branch vertices to new labels.
    """
    mapping = [-1] * branch.n
    mapping[branch_root] = at
    nxt = base.n
    for v in range(branch.n):
        if v != branch_root:
            mapping[v] = nxt
            nxt += 1
    edges = list(base.edges) + [(mapping[u], mapping[v]) for u, v in branch.edges]
    return Tree(nxt, edges), mapping


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph(len(keep), edges)
