"""Tree transformations: KC moves, LS-switches, short-path shifts,
claw-deletion and leaf moves."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .graphcore import Tree, canonical_code, glue

__all__ = [
    "TransformError",
    "KCMove",
    "enumerate_kc_moves",
    "kc_apply",
    "LSSwitchSpec",
    "find_rooted_embedding",
    "rooted_subtree",
    "ls_switch",
    "short_path_shift",
    "find_claw",
    "claw_delete",
    "leaf_move",
]


class TransformError(ValueError):
    pass


# ---------------------------------------------------------------------------
# KC


@dataclass(frozen=True)
class KCMove:
    """Move N(y) minus the path neighbour of y over to x.

    ``interior`` lists the path vertices strictly between x and y, in order
    from x.  ``moved`` is the set of vertices that get re-attached; it doubles
    as a staleness fingerprint.
    """

    x: int
    y: int
    interior: tuple[int, ...]
    moved: tuple[int, ...]
    trivial: bool

    @property
    def length(self) -> int:
        return len(self.interior) + 1

    @property
    def odd(self) -> bool:
        return self.length % 2 == 1

    @property
    def z(self) -> int:
        """Neighbour of y on the path."""
        return self.interior[-1] if self.interior else self.x


def enumerate_kc_moves(t: Tree) -> list[KCMove]:
    """Every ordered pair (x, y) joined by a path whose interior vertices all
    have degree two, in lexicographic (x, y) order."""
    if t.n < 2:
        return []
    deg = t.degrees
    moves = []
    for x in range(t.n):
        for first in t.adj[x]:
            interior: list[int] = []
            prev, cur = x, first
            while True:
                moved = tuple(w for w in t.adj[cur] if w != prev)
                x_off = deg[x] - 1
                moves.append(KCMove(x, cur, tuple(interior), moved, x_off == 0 or not moved))
                if deg[cur] != 2:
                    break
                interior.append(cur)
                prev, cur = cur, moved[0]
                if cur == x:  # unreachable in a tree, kept as a guard
                    break
    moves.sort(key=lambda mv: (mv.x, mv.y))
    return moves


def kc_apply(t: Tree, move: KCMove) -> Tree:
    chain = [move.x, *move.interior, move.y]
    if len(set(chain)) != len(chain):
        raise TransformError("path must have distinct endpoints")
    for a, b in zip(chain, chain[1:]):
        if b not in t.adj[a]:
            raise TransformError(f"stale move: edge {a}-{b} missing")
    for w in move.interior:
        if t.degrees[w] != 2:
            raise TransformError(f"stale move: interior vertex {w} has degree {t.degrees[w]}")
    current = tuple(w for w in t.adj[move.y] if w != move.z)
    if current != move.moved:
        raise TransformError("stale move: neighbourhood of y changed")
    gone = {(min(move.y, w), max(move.y, w)) for w in move.moved}
    edges = [e for e in t.edges if e not in gone]
    edges += [(move.x, w) for w in move.moved]
    out = Tree(t.n, edges)
    if not move.trivial:
        assert len(out.leaves) == len(t.leaves) + 1, "nontrivial KC move must add one leaf"
    return out


# ---------------------------------------------------------------------------
# rooted subtrees and embeddings


def rooted_subtree(t: Tree, root: int, keep) -> tuple[Tree, list[int]]:
    """Subtree induced on ``keep`` (must contain ``root`` and be connected).

    Returns the relabelled tree, rooted at 0, and the list mapping new labels
    to old ones.
    """
    keep = set(keep)
    if root not in keep:
        raise ValueError("root must be kept")
    order, parent = t.traversal(root)
    old = [v for v in order if v in keep]
    for v in old[1:]:
        if parent[v] not in keep:
            raise ValueError("kept vertices must form a connected subtree")
    index = {v: i for i, v in enumerate(old)}
    edges = [(index[parent[v]], index[v]) for v in old[1:]]
    return Tree(len(old), edges, root=0), old


def find_rooted_embedding(small: Tree, big: Tree) -> dict[int, int] | None:
    """Injective edge-preserving map of ``small`` into ``big`` sending root to
    root (rooted subtree test), or None.  Both trees must carry a root."""
    if small.root is None or big.root is None:
        raise ValueError("both trees need a root")
    s_order, s_par = small.traversal(small.root)
    b_order, b_par = big.traversal(big.root)
    s_kids = [[c for c in small.adj[x] if c != s_par[x]] for x in range(small.n)]
    b_kids = [[c for c in big.adj[x] if c != b_par[x]] for x in range(big.n)]

    @lru_cache(maxsize=None)
    def match(a: int, b: int):
        # bipartite matching of a's children into b's children (Kuhn)
        ka, kb = s_kids[a], b_kids[b]
        if len(ka) > len(kb):
            return None
        ok = [[match(ca, cb) is not None for cb in kb] for ca in ka]
        owner = [-1] * len(kb)

        def augment(i, seen):
            for j in range(len(kb)):
                if ok[i][j] and not seen[j]:
                    seen[j] = True
                    if owner[j] < 0 or augment(owner[j], seen):
                        owner[j] = i
                        return True
            return False

        for i in range(len(ka)):
            if not augment(i, [False] * len(kb)):
                return None
        out = {a: b}
        for j, i in enumerate(owner):
            if i >= 0:
                out.update(match(ka[i], kb[j]))
        return out

    res = match(small.root, big.root)
    return dict(res) if res is not None else None


def _check_embedding(small: Tree, big: Tree, emb: Mapping[int, int]) -> bool:
    if set(emb) != set(range(small.n)) or len(set(emb.values())) != small.n:
        return False
    if emb[small.root] != big.root:
        return False
    return all(emb[b] in big.adj[emb[a]] for a, b in small.edges)


# ---------------------------------------------------------------------------
# LS-switch


@dataclass(frozen=True)
class LSSwitchSpec:
    """Core ``core`` with marked ``u``, ``v`` plus four rooted attachments.

    ``t2`` must embed in ``t1`` and ``t4`` in ``t3`` (as rooted subtrees).
    Witness maps may be given; otherwise they are searched for.
    """

    core: Tree
    u: int
    v: int
    t1: Tree
    t2: Tree
    t3: Tree
    t4: Tree
    emb21: Mapping[int, int] | None = field(default=None, compare=False)
    emb43: Mapping[int, int] | None = field(default=None, compare=False)

    def validate(self) -> None:
        r, u, v = self.core, self.u, self.v
        if u == v:
            raise TransformError("u and v must differ")
        if r.distance(u, v) % 2:
            raise TransformError("d(u,v) must be even")
        if canonical_code(r, (u, v)) != canonical_code(r, (v, u)):
            raise TransformError("no automorphism of the core exchanges u and v")
        for name, small, big, emb in (
            ("t2 into t1", self.t2, self.t1, self.emb21),
            ("t4 into t3", self.t4, self.t3, self.emb43),
        ):
            if small.root is None or big.root is None:
                raise TransformError("attachments must be rooted")
            if emb is None:
                emb = find_rooted_embedding(small, big)
                if emb is None:
                    raise TransformError(f"no rooted embedding {name}")
            elif not _check_embedding(small, big, emb):
                raise TransformError(f"invalid embedding witness {name}")


def _attach(base: Tree, at: int, branch: Tree) -> Tree:
    return glue(base, at, branch, branch.root)[0]


def ls_switch(spec: LSSwitchSpec) -> tuple[Tree, Tree]:
    """(T, T'): T has {t1, t4} at u and {t2, t3} at v; T' has {t1, t3} at u
    and {t2, t4} at v.  Core labels are preserved in both."""
    spec.validate()
    r = spec.core
    t = _attach(_attach(_attach(_attach(r, spec.u, spec.t1), spec.u, spec.t4), spec.v, spec.t2), spec.v, spec.t3)
    tp = _attach(_attach(_attach(_attach(r, spec.u, spec.t1), spec.u, spec.t3), spec.v, spec.t2), spec.v, spec.t4)
    assert t.n == tp.n
    assert sorted(map(len, t.bipartition)) == sorted(map(len, tp.bipartition))
    return t, tp


# ---------------------------------------------------------------------------
# short-path shift


def short_path_shift(branch: Tree, root: int | None = None) -> tuple[Tree, Tree]:
    """Glue ``branch`` at an end (T) and at the middle (T') of a 3-vertex path.

    In both outputs the branch root is vertex 0, so hom-vectors at 0 compare
    directly.
    """
    root = branch.root if root is None else root
    if root is None:
        raise ValueError("branch needs a root")
    end = Tree(3, [(0, 1), (1, 2)])
    middle = Tree(3, [(0, 1), (0, 2)])
    t = glue(end, 0, branch, root)[0]
    tp = glue(middle, 0, branch, root)[0]
    return t, tp


# ---------------------------------------------------------------------------
# claw deletion and leaf move


def find_claw(t: Tree) -> tuple[int, tuple[int, int, int]] | None:
    """Smallest vertex with at least three leaf neighbours, and three of them."""
    deg = t.degrees
    for c in range(t.n):
        lv = [w for w in t.adj[c] if deg[w] == 1]
        if len(lv) >= 3:
            return c, (lv[0], lv[1], lv[2])
    return None


def claw_delete(t: Tree) -> Tree:
    """Replace three leaves at a common vertex c by the pendant path
    c - l1 - l2 - l3 (labels reused)."""
    found = find_claw(t)
    if found is None:
        raise TransformError("tree has no claw")
    c, (l1, l2, l3) = found
    gone = {(min(c, l), max(c, l)) for l in (l2, l3)}
    edges = [e for e in t.edges if e not in gone] + [(l1, l2), (l2, l3)]
    return Tree(t.n, edges)


def leaf_move(t: Tree, u: int, v: int) -> Tree:
    """Detach leaf ``u`` of the large class and hang it from ``v`` in the
    small class."""
    if t.degrees[u] != 1:
        raise TransformError(f"{u} is not a leaf")
    a, b = t.bipartition
    if len(a) == len(b):
        raise TransformError("balanced tree: colour classes have equal size")
    if u not in t.large_class:
        raise TransformError(f"{u} is not in the large colour class")
    if v not in t.small_class:
        raise TransformError(f"{v} is not in the small colour class")
    (w,) = t.adj[u]
    edges = [e for e in t.edges if e != (min(u, w), max(u, w))] + [(u, v)]
    return Tree(t.n, edges)
