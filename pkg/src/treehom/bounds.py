"""Markov chains on graphs, their entropies, and entropy/spectral/degree
lower bounds on tree homomorphism counts.

Logarithms are natural throughout.  Exact counts are compared in the log
domain; ``math.log`` accepts arbitrarily large ints directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .graphcore import Graph, Tree
from .homcount import hom_count

__all__ = [
    "ChainError",
    "MarkovChain",
    "Entropies",
    "SpectralData",
    "SpectralBound",
    "SidorenkoResult",
    "chain_from_weights",
    "degree_chain",
    "spectral_data",
    "spectral_chain",
    "entropies",
    "markov_log_bound",
    "markov_lower_bound",
    "spectral_bound",
    "degree_bound",
    "log_degree_bound",
    "sidorenko_check",
    "subdivide_chain",
    "weights_weak_four_leaves",
    "weights_y_abc",
    "weights_y_ab1",
    "log_int",
]

Number = Fraction | float
# float chains come from iterative solvers with residuals near 1e-10
FLOAT_TOL = 1e-9


class ChainError(ValueError):
    pass


def log_int(x: int) -> float:
    if x <= 0:
        raise ValueError("log of a nonpositive count")
    return math.log(x)


def _xlogx_inv(p: Number) -> float:
    """p * ln(1/p) with 0 ln(1/0) = 0."""
    return 0.0 if p == 0 else -float(p) * math.log(p)


@dataclass(frozen=True)
class MarkovChain:
    """Transition kernel on the edges of ``graph`` plus stationary weights.

    ``kernel`` maps ordered edge pairs (i, j) to p_ij; missing pairs are 0.
    """

    graph: Graph
    kernel: Mapping[tuple[int, int], Number]
    q: tuple[Number, ...]

    @property
    def exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.kernel.values()) and all(
            isinstance(x, Fraction) for x in self.q
        )

    def p(self, i: int, j: int) -> Number:
        return self.kernel.get((i, j), 0)

    def validate(self) -> None:
        g = self.graph
        tol = 0 if self.exact else FLOAT_TOL
        if len(self.q) != g.n:
            raise ChainError("stationary vector has the wrong length")
        for (i, j), pij in self.kernel.items():
            if j not in g.adj[i]:
                raise ChainError(f"kernel entry ({i},{j}) is off the edge set")
            if pij < 0:
                raise ChainError(f"negative transition ({i},{j})")
        if abs(sum(self.q) - 1) > tol or any(x < 0 for x in self.q):
            raise ChainError("stationary vector is not a distribution")
        for i in range(g.n):
            if g.adj[i]:
                row = sum(self.p(i, j) for j in g.adj[i])
                if abs(row - 1) > tol:
                    raise ChainError(f"row {i} sums to {row}")
            inflow = sum(self.q[j] * self.p(j, i) for j in g.adj[i])
            if g.adj[i] and abs(inflow - self.q[i]) > tol:
                raise ChainError(f"stationarity fails at {i}")
        if isinstance(g, Tree):
            for i, j in g.edges:
                if abs(self.q[i] * self.p(i, j) - self.q[j] * self.p(j, i)) > tol:
                    raise ChainError(f"tree chain not reversible on edge {i}-{j}")


@dataclass(frozen=True)
class Entropies:
    h_q: float
    h_d_given_q: float
    h_p_given_q: float


def entropies(c: MarkovChain) -> Entropies:
    g = c.graph
    h_q = sum(_xlogx_inv(x) for x in c.q)
    h_d = sum(float(c.q[i]) * math.log(d) for i, d in enumerate(g.degrees) if d > 0)
    h_p = sum(float(c.q[i]) * sum(_xlogx_inv(c.p(i, j)) for j in g.adj[i]) for i in range(g.n))
    return Entropies(h_q, h_d, h_p)


# ---------------------------------------------------------------------------
# chain builders


def chain_from_weights(t: Tree, weights: Sequence) -> MarkovChain:
    """Unique reversible chain on tree ``t`` with q proportional to weights.

    Edge flows f_ij = q_i p_ij are fixed by peeling leaves: a vertex's flow to
    its parent is its weight minus the flow it receives from its children.
    """
    w = [Fraction(x) for x in weights]
    if len(w) != t.n:
        raise ChainError("one weight per vertex is required")
    if any(x <= 0 for x in w):
        raise ChainError("weights must be positive")
    total = sum(w)
    q = tuple(x / total for x in w)
    if t.n == 1:
        return MarkovChain(t, {}, q)
    order, parent = t.traversal(0)
    received = [Fraction(0)] * t.n
    flow: dict[tuple[int, int], Fraction] = {}
    for x in reversed(order[1:]):
        f = q[x] - received[x]
        if f <= 0:
            raise ChainError(f"weights admit no chain: flow on edge {x}-{parent[x]} is {f}")
        flow[(x, parent[x])] = flow[(parent[x], x)] = f
        received[parent[x]] += f
    if received[order[0]] != q[order[0]]:
        raise ChainError(
            "weights admit no chain: colour classes carry unequal weight "
            f"(residual {q[order[0]] - received[order[0]]} at vertex {order[0]})"
        )
    kernel = {(i, j): f / q[i] for (i, j), f in flow.items()}
    return MarkovChain(t, kernel, q)


def degree_chain(g: Graph) -> MarkovChain:
    """Simple random walk: p_ij = 1/d_i, q_i = d_i / 2e."""
    e2 = 2 * g.edge_count
    if e2 == 0:
        raise ChainError("graph has no edges")
    kernel = {(i, j): Fraction(1, len(g.adj[i])) for i in range(g.n) for j in g.adj[i]}
    q = tuple(Fraction(d, e2) for d in g.degrees)
    return MarkovChain(g, kernel, q)


def subdivide_chain(c: MarkovChain, edge: tuple[int, int]) -> MarkovChain:
    """Insert vertex r on edge (i, j) with weight 2 q_i p_ij and p_ri = p_rj = 1/2."""
    i, j = edge
    g = c.graph
    if j not in g.adj[i]:
        raise ChainError(f"({i},{j}) is not an edge")
    r = g.n
    new_edges = [e for e in g.edges if e != (min(i, j), max(i, j))] + [(i, r), (r, j)]
    ng = Tree(g.n + 1, new_edges) if isinstance(g, Tree) else Graph(g.n + 1, new_edges)
    half = Fraction(1, 2) if c.exact else 0.5
    extra = 2 * c.q[i] * c.p(i, j)
    scale = 1 + extra
    q = tuple(x / scale for x in c.q) + (extra / scale,)
    kernel = dict(c.kernel)
    kernel[(i, r)] = kernel.pop((i, j))
    kernel[(j, r)] = kernel.pop((j, i))
    kernel[(r, i)] = kernel[(r, j)] = half
    return MarkovChain(ng, kernel, q)


# weight templates ----------------------------------------------------------


def _arms(t: Tree, center: int) -> list[list[int]]:
    """Paths from ``center`` to each leaf of a starlike tree (center excluded)."""
    arms = []
    for first in t.adj[center]:
        arm, prev, cur = [first], center, first
        while t.degrees[cur] == 2:
            prev, cur = cur, next(w for w in t.adj[cur] if w != prev)
            arm.append(cur)
        if t.degrees[cur] != 1:
            raise ValueError("tree is not starlike around the given center")
        arms.append(arm)
    return arms


def weights_weak_four_leaves(t: Tree) -> list[int]:
    """4 on the path between the two degree-3 vertices, 2 on other degree-2
    vertices, 1 on leaves."""
    deg = t.degrees
    branch = [v for v in range(t.n) if deg[v] >= 3]
    if len(t.leaves) != 4 or len(branch) != 2 or any(deg[v] != 3 for v in branch):
        raise ValueError("need exactly 4 leaves and two degree-3 vertices")
    on_path = set(t.path_between(*branch))
    return [1 if deg[v] == 1 else 4 if v in on_path else 2 for v in range(t.n)]


def _y_parts(t: Tree) -> tuple[int, list[list[int]]]:
    deg = t.degrees
    centers = [v for v in range(t.n) if deg[v] >= 3]
    if len(centers) != 1 or deg[centers[0]] != 3 or len(t.leaves) != 3:
        raise ValueError("not a 3-leaf spider")
    return centers[0], sorted(_arms(t, centers[0]), key=len)


def weights_y_abc(t: Tree) -> list[int]:
    """Spider with all arms of length >= 2: centre 9, leaf 1, leaf neighbour 4,
    6 on the remaining arm vertices.  Weight sum 6(n-3)."""
    center, arms = _y_parts(t)
    if len(arms[0]) < 2:
        raise ValueError("every arm needs length >= 2")
    w = [0] * t.n
    w[center] = 9
    for arm in arms:
        for v in arm[:-2]:
            w[v] = 6
        w[arm[-2]], w[arm[-1]] = 4, 1
    return w


def weights_y_ab1(t: Tree) -> list[int]:
    """Spider with one arm of length 1 and two of length >= 3: centre 16,
    short leaf 4; long arms read 1, 4, 9 from the leaf, then 12 up to the
    centre.  Weight sum 12(n-4)."""
    center, arms = _y_parts(t)
    if len(arms[0]) != 1 or len(arms[1]) < 3:
        raise ValueError("need arm lengths (1, a, b) with a, b >= 3")
    w = [0] * t.n
    w[center] = 16
    w[arms[0][0]] = 4
    for arm in arms[1:]:
        for v in arm[:-3]:
            w[v] = 12
        w[arm[-3]], w[arm[-2]], w[arm[-1]] = 9, 4, 1
    return w


# ---------------------------------------------------------------------------
# bounds


def markov_log_bound(t_m: Tree, c: MarkovChain) -> float:
    m = t_m.n
    if m < 3:
        raise ValueError("the entropy bound needs m >= 3")
    ent = entropies(c)
    ell = len(t_m.leaves)
    return ent.h_q + ell * ent.h_d_given_q + (m - 1 - ell) * ent.h_p_given_q


def markov_lower_bound(t_m: Tree, g: Graph, c: MarkovChain) -> float:
    if c.graph is not g and c.graph != g:
        raise ChainError("chain lives on a different graph")
    return math.exp(markov_log_bound(t_m, c))


@dataclass(frozen=True)
class SpectralData:
    eigenvalue: float
    vector: tuple[float, ...]
    entropy: float
    iterations: int
    residual: float


def spectral_data(g: Graph, tol: float = 1e-10, max_iter: int = 100_000) -> SpectralData:
    """Perron pair by power iteration on A + I (the shift kills the -lambda
    eigenvalue of bipartite graphs, which would otherwise stall the method)."""
    if g.n == 0 or not g.is_connected():
        raise ValueError("spectral data needs a nonempty connected graph")
    if g.n == 1:
        return SpectralData(0.0, (1.0,), 0.0, 0, 0.0)
    indptr, indices = g.csr

    def apply_a(x):
        pref = np.concatenate(([0.0], np.cumsum(x[indices])))
        return pref[indptr[1:]] - pref[indptr[:-1]]

    y = np.full(g.n, 1.0 / math.sqrt(g.n))
    for it in range(1, max_iter + 1):
        z = apply_a(y) + y
        z /= np.linalg.norm(z)
        ay = apply_a(z)
        lam = float(z @ ay)
        res = float(np.max(np.abs(ay - lam * z)))
        y = z
        if res <= tol:
            break
    else:
        raise RuntimeError(f"power iteration did not converge in {max_iter} steps")
    q = y * y
    ent = float(-np.sum(q[q > 0] * np.log(q[q > 0])))
    return SpectralData(lam, tuple(float(v) for v in y), ent, it, res)


def spectral_chain(g: Graph, data: SpectralData | None = None) -> MarkovChain:
    """p_ij = y_j / (lambda y_i), q_i = y_i^2."""
    data = data or spectral_data(g)
    y, lam = data.vector, data.eigenvalue
    kernel = {(i, j): y[j] / (lam * y[i]) for i in range(g.n) for j in g.adj[i]}
    return MarkovChain(g, kernel, tuple(v * v for v in y))


@dataclass(frozen=True)
class SpectralBound:
    eigenvalue: float
    entropy: float
    log_lower: float
    log_path_upper: float

    @property
    def lower(self) -> float:
        return math.exp(self.log_lower)

    @property
    def path_upper(self) -> float:
        return math.exp(self.log_path_upper)


def spectral_bound(t_m: Tree, g: Graph, data: SpectralData | None = None) -> SpectralBound:
    data = data or spectral_data(g)
    lam, m = data.eigenvalue, t_m.n
    log_lam = math.log(lam) if lam > 0 else -math.inf
    lift = (m - 1) * log_lam if m > 1 else 0.0
    return SpectralBound(lam, data.entropy, data.entropy + lift, math.log(g.n) + lift)


def log_degree_bound(t_m: Tree, g: Graph) -> float:
    e = g.edge_count
    if e == 0:
        raise ValueError("graph has no edges")
    if t_m.n < 2:
        raise ValueError("need m >= 2")
    log_c = sum(d * math.log(d) for d in g.degrees if d > 0) / (2 * e)
    return math.log(2 * e) + (t_m.n - 2) * log_c


def degree_bound(t_m: Tree, g: Graph) -> float:
    """2e * C^(m-2) with C = (prod d_i^d_i)^(1/2e)."""
    return math.exp(log_degree_bound(t_m, g))


@dataclass(frozen=True)
class SidorenkoResult:
    hom: int
    density: Fraction
    edge_density_power: Fraction
    holds: bool


def sidorenko_check(t_m: Tree, g: Graph) -> SidorenkoResult:
    """t(T_m, G) >= t(K_2, G)^(m-1), compared exactly as rationals."""
    if g.n == 0:
        raise ValueError("graph must be nonempty")
    m, n = t_m.n, g.n
    h = hom_count(t_m, g)
    dens = Fraction(h, n**m)
    edge = Fraction(2 * g.edge_count, n * n) ** (m - 1)
    return SidorenkoResult(h, dens, edge, dens >= edge)
