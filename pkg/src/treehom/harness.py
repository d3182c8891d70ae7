"""Check registry: exhaustive desk-scale verification of the extremal
inequalities, plus reproduction of the numeric counterexamples.

Every check walks a deterministic instance space described by a
:class:`SweepSpec` and returns a :class:`CheckReport`.  Reports serialise to
JSON with sorted keys; wall time is optional so reruns can be compared
byte for byte.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from .bounds import degree_chain, log_degree_bound, log_int, markov_log_bound, spectral_bound, spectral_data
from .enumpose import enumerate_trees
from .graphcore import (
    Graph,
    Tree,
    Y,
    canonical_code,
    diameter,
    doublestar,
    e7,
    format_graph,
    format_tree,
    glue,
    induced_subgraph,
    is_isomorphic,
    layered,
    parse_graph,
    path,
    rooted_code,
    star,
    tree_metrics,
    wiener_index,
)
from .homcount import (
    closed_form,
    g_product,
    hom_count,
    hom_cycle,
    hom_parity_split,
    hom_vector,
    is_symmetric_bi_unimodal,
    is_symmetric_unimodal,
    log_concave_alternating,
    correlation_pair,
)
from .transforms import LSSwitchSpec, enumerate_kc_moves, kc_apply, ls_switch, rooted_subtree

__all__ = [
    "SweepSpec",
    "CheckReport",
    "CHECKS",
    "REPRO",
    "run_check",
    "reproduce_counterexample",
    "special_double_starlike",
    "layered_hom",
    "small_graphs",
    "load_fixture",
    "FIXTURES",
]

MAX_STORED_VIOLATIONS = 25

FIXTURES = (
    "walkthrough",
    "counter2_before",
    "counter2_after",
    "counter3_before",
    "counter3_after",
    "s4_branch",
    "doublestar10",
    "e7_layered_16_1_19",
)


def load_fixture(name: str) -> Tree:
    """Stored witness tree shipped with the package."""
    from importlib.resources import files

    if name not in FIXTURES:
        raise KeyError(name)
    return parse_graph(files("treehom").joinpath("fixtures", f"{name}.tree").read_text())


class UnknownCheck(KeyError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    """Instance-space bounds.  ``m_max`` bounds source trees, ``n_max``
    target trees/paths, ``graph_max`` the general (non-tree) targets."""

    m_max: int = 7
    n_max: int = 8
    graph_max: int = 5
    hom_budget: int = 5_000_000

    def __post_init__(self):
        if min(self.m_max, self.n_max, self.graph_max) < 1:
            raise ValueError("sweep bounds must be positive")
        if self.graph_max > 7:
            raise ValueError("general-graph targets are available up to 7 vertices")


@dataclass
class CheckReport:
    id: str
    status: str = "pass"
    gating: bool = True
    instances: int = 0
    violation_count: int = 0
    violations: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    seconds: float = 0.0

    def violation(self, source, target, **values) -> None:
        self.violation_count += 1
        if len(self.violations) < MAX_STORED_VIOLATIONS:
            self.violations.append({"source": _ser(source), "target": _ser(target), "values": _jsonable(values)})

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "id": self.id,
            "status": self.status,
            "gating": self.gating,
            "instances": self.instances,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "witnesses": self.witnesses,
            "notes": _jsonable(self.notes),
        }
        if include_timing:
            out["seconds"] = round(self.seconds, 3)
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _ser(obj):
    if isinstance(obj, Tree):
        return format_tree(obj)
    if isinstance(obj, Graph):
        return format_graph(obj)
    if isinstance(obj, (tuple, list)):
        return [_ser(x) for x in obj]
    return obj


def _jsonable(obj):
    # exact integers travel as decimal strings
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, (Tree, Graph)):
        return _ser(obj)
    return str(obj)


# ---------------------------------------------------------------------------
# instance spaces and caches


@lru_cache(maxsize=None)
def _trees(n: int) -> tuple[Tree, ...]:
    return tuple(enumerate_trees(n))


def _trees_upto(n_max: int, n_min: int = 1) -> list[Tree]:
    return [t for n in range(n_min, n_max + 1) for t in _trees(n)]


@lru_cache(maxsize=None)
def _path(n: int) -> Tree:
    return path(n)


@lru_cache(maxsize=None)
def _star(n: int) -> Tree:
    return star(n)


@lru_cache(maxsize=1 << 20)
def hom(h: Tree, g: Graph) -> int:
    if g.n == 0:
        return 1 if h.n == 0 else 0
    return hom_count(h, g)


@lru_cache(maxsize=None)
def _code(t: Tree) -> bytes:
    return canonical_code(t)


@lru_cache(maxsize=None)
def small_graphs(n: int, connected: bool = False) -> tuple[Graph, ...]:
    """All graphs on exactly n <= 7 vertices up to isomorphism (graph atlas)."""
    import networkx as nx

    out = []
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() != n:
            continue
        if connected and n > 0 and not nx.is_connected(g):
            continue
        out.append(Graph(n, list(g.edges())))
    return tuple(out)


def _graphs_upto(n_max: int, connected: bool = False) -> list[Graph]:
    return [g for n in range(1, n_max + 1) for g in small_graphs(n, connected)]


def _kc_images(t: Tree, parity: str | None = None) -> list[Tree]:
    """Distinct (up to isomorphism) results of nontrivial KC moves."""
    seen, out = set(), []
    for mv in enumerate_kc_moves(t):
        if mv.trivial:
            continue
        if parity == "even" and mv.odd or parity == "odd" and not mv.odd:
            continue
        res = kc_apply(t, mv)
        c = _code(res)
        if c not in seen:
            seen.add(c)
            out.append(res)
    return out


def _is_starlike(t: Tree) -> bool:
    return sum(1 for d in t.degrees if d > 2) <= 1


def _rooted_classes(max_n: int) -> list[Tree]:
    """One rooted tree per rooted isomorphism class with <= max_n vertices."""
    out, seen = [], set()
    for t in _trees_upto(max_n):
        for r in range(t.n):
            key = (t.n, rooted_code(t, r))
            if key not in seen:
                seen.add(key)
                out.append(t.with_root(r))
    return out


def _rooted_subtrees(t: Tree) -> list[Tree]:
    """All rooted subtrees of ``t`` sharing its root, deduplicated up to
    rooted isomorphism."""
    root = t.root
    others = [v for v in range(t.n) if v != root]
    seen, out = set(), []
    for k in range(len(others) + 1):
        for extra in itertools.combinations(others, k):
            keep = {root, *extra}
            try:
                sub, _ = rooted_subtree(t, root, keep)
            except ValueError:
                continue
            key = rooted_code(sub, 0)
            if key not in seen:
                seen.add(key)
                out.append(sub)
    return out


def special_double_starlike(n: int) -> Tree:
    """Path on n-8 vertices whose two ends are each the middle of a P5."""
    if n < 10:
        raise ValueError("needs n >= 10")
    core = n - 8
    edges = [(i, i + 1) for i in range(core - 1)]
    nxt = core
    for end in (0, core - 1):
        a, b, c, d = nxt, nxt + 1, nxt + 2, nxt + 3
        edges += [(end, a), (a, b), (end, c), (c, d)]
        nxt += 4
    return Tree(n, edges)


def layered_hom(h: Tree, k1: int, k2: int, k3: int) -> int:
    """hom(h, T(k1,k2,k3)) through the level quotient of the layered tree.

    All vertices on one level are equivalent, so the tree-walk runs on
    4-entry level vectors; the neighbour sum at level l weights each
    neighbouring level by its multiplicity.
    """
    order, parent = h.traversal(0)
    acc: dict[int, list[int]] = {}
    for x in reversed(order):
        vec = acc.pop(x, None) or [1, 1, 1, 1]
        p = parent[x]
        if p < 0:
            return vec[0] + k1 * vec[1] + k1 * k2 * vec[2] + k1 * k2 * k3 * vec[3]
        step = [k1 * vec[1], vec[0] + k2 * vec[2], vec[1] + k3 * vec[3], vec[2]]
        if p in acc:
            acc[p] = [a * b for a, b in zip(acc[p], step)]
        else:
            acc[p] = step
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# registry

CHECKS: dict[str, tuple[Callable[[SweepSpec, CheckReport], None], bool, str]] = {}


def _register(cid: str, gating: bool = True, doc: str = ""):
    def deco(fn):
        CHECKS[cid] = (fn, gating, doc or (fn.__doc__ or "").strip())
        return fn

    return deco


def run_check(cid: str, sweep: SweepSpec | None = None) -> CheckReport:
    if cid not in CHECKS:
        raise UnknownCheck(cid)
    sweep = sweep or SweepSpec()
    fn, gating, _ = CHECKS[cid]
    rep = CheckReport(cid, gating=gating)
    t0 = time.perf_counter()
    fn(sweep, rep)
    rep.seconds = time.perf_counter() - t0
    if rep.violation_count and rep.status == "pass":
        rep.status = "fail"
    if rep.status == "fail" and rep.violations and not rep.witnesses:
        rep.witnesses = [rep.violations[0]]
    return rep


# --- KC monotonicity --------------------------------------------------------


def _kc_sweep(sweep, rep, parity, source_filter):
    sources = [h for h in _trees_upto(sweep.m_max) if source_filter(h)]
    for t in _trees_upto(sweep.n_max, 2):
        for tp in _kc_images(t, parity):
            for h in sources:
                rep.instances += 1
                a, b = hom(h, t), hom(h, tp)
                if b < a:
                    rep.violation(h, [t, tp], before=a, after=b)


@_register("kc-even")
def _kc_even(sweep, rep):
    """hom(H, KC(T)) >= hom(H, T) for nontrivial even moves and every tree H."""
    _kc_sweep(sweep, rep, "even", lambda h: True)


@_register("kc-odd-starlike")
def _kc_odd(sweep, rep):
    """hom(H, KC(T)) >= hom(H, T) for nontrivial odd moves and starlike H."""
    _kc_sweep(sweep, rep, "odd", _is_starlike)


@_register("kc-walks")
def _kc_walks(sweep, rep):
    """hom(P_m, KC(T)) >= hom(P_m, T) for every nontrivial move."""
    _kc_sweep(sweep, rep, None, lambda h: len(h.leaves) <= 2)


@_register("into-paths-i")
def _into_paths_i(sweep, rep):
    """hom(T, P_n) <= hom(KC(T), P_n) when n is even or diam(T) <= n-1."""
    uncovered = 0
    example = None
    for t in _trees_upto(sweep.m_max, 2):
        dt = diameter(t)
        for tp in _kc_images(t):
            for n in range(2, sweep.n_max + 1):
                a, b = hom(t, _path(n)), hom(tp, _path(n))
                if n % 2 == 0 or dt <= n - 1:
                    rep.instances += 1
                    if b < a:
                        rep.violation([t, tp], _path(n), before=a, after=b)
                elif b < a:
                    uncovered += 1
                    if example is None:
                        example = {"before": format_tree(t), "after": format_tree(tp), "n": n, "values": [a, b]}
    rep.notes["drops_outside_hypothesis"] = uncovered
    rep.notes["drop_example"] = example


@_register("into-paths-ii")
def _into_paths_ii(sweep, rep):
    """hom(P_m, P_n) <= hom(T_m, P_n) <= hom(S_m, P_n)."""
    for m in range(1, sweep.m_max + 1):
        for n in range(1, sweep.n_max + 1):
            lo, hi = hom(_path(m), _path(n)), hom(_star(m), _path(n))
            for t in _trees(m):
                rep.instances += 1
                v = hom(t, _path(n))
                if not lo <= v <= hi:
                    rep.violation(t, _path(n), path=lo, tree=v, star=hi)


def _general_targets(sweep, connected=False) -> list[Graph]:
    return _graphs_upto(sweep.graph_max, connected) + _trees_upto(sweep.n_max)


@_register("star-max")
def _star_max(sweep, rep):
    """hom(T_m, G) <= hom(S_m, G) for small graphs and trees G."""
    targets = _general_targets(sweep)
    for m in range(1, sweep.m_max + 1):
        for g in targets:
            top = hom(_star(m), g)
            for t in _trees(m):
                rep.instances += 1
                v = hom(t, g)
                if v > top:
                    rep.violation(t, g, tree=v, star=top)


@_register("to-stars")
def _to_stars(sweep, rep):
    """hom(P_m, S_n) <= hom(T_m, S_n) <= hom(S_m, S_n), strict on the right for T != S_m."""
    for m in range(1, sweep.m_max + 1):
        for n in range(2, sweep.n_max + 1):
            s = _star(n)
            lo, hi = hom(_path(m), s), hom(_star(m), s)
            for t in _trees(m):
                rep.instances += 1
                v = hom(t, s)
                strict_needed = m >= 4 and n >= 3 and not is_isomorphic(t, _star(m))
                if not lo <= v <= hi or (strict_needed and v == hi):
                    rep.violation(t, s, path=lo, tree=v, star=hi)


@_register("cycle-extremal")
def _cycle_extremal(sweep, rep):
    """hom(C_m, P_n) <= hom(C_m, T_n) <= hom(C_m, S_n)."""
    for m in range(3, sweep.m_max + 1):
        for n in range(1, sweep.n_max + 1):
            lo, hi = hom_cycle(m, _path(n)), hom_cycle(m, _star(n))
            for t in _trees(n):
                rep.instances += 1
                v = hom_cycle(m, t)
                if not lo <= v <= hi:
                    rep.violation(m, t, path=lo, tree=v, star=hi)


@_register("cycle-vs-tree")
def _cycle_vs_tree(sweep, rep):
    """hom(T_m, G) >= hom(C_m, G) for connected G."""
    for g in _general_targets(sweep, connected=True):
        for m in range(3, sweep.m_max + 1):
            c = hom_cycle(m, g)
            for t in _trees(m):
                rep.instances += 1
                v = hom(t, g)
                if v < c:
                    rep.violation(t, g, tree=v, cycle=c)


@_register("end-extremal")
def _end_extremal(sweep, rep):
    """|End(P_n)| <= |End(T_n)| <= |End(S_n)|, strict on the right for T != S_n."""
    ends = {}
    for n in range(1, sweep.n_max + 1):
        lo, hi = hom(_path(n), _path(n)), hom(_star(n), _star(n))
        if n >= 2 and hi != closed_form("star-endo", n):
            rep.violation(_star(n), _star(n), engine=hi, closed_form=closed_form("star-endo", n))
        ends[n] = [lo, hi]
        for t in _trees(n):
            rep.instances += 1
            v = hom(t, t)
            strict_needed = not is_isomorphic(t, _star(n))
            if not lo <= v <= hi or (strict_needed and v == hi):
                rep.violation(t, t, path=lo, tree=v, star=hi)
    rep.notes["end_path_star"] = ends


# --- section 6 machinery -----------------------------------------------------


@_register("g-path")
def _g_path(sweep, rep):
    """g(T_m, P_n) >= g(P_m, P_n)."""
    for m in range(1, sweep.m_max + 1):
        for n in range(2, sweep.n_max + 1):
            base = g_product(_path(m), _path(n))
            for t in _trees(m):
                rep.instances += 1
                v = g_product(t, _path(n))
                if v < base:
                    rep.violation(t, _path(n), tree=v, path=base)


def _hom0_small(t: Tree, n: int) -> int:
    u = min(t.small_class)
    return hom_parity_split(t, u, n)[0]


@_register("s-hom")
def _s_hom(sweep, rep):
    """hom_0(T_m(S), P_n) >= hom_0(P_m(S), P_n) for odd m and odd n."""
    for m in range(3, sweep.m_max + 1, 2):
        for n in range(3, sweep.n_max + 1, 2):
            base = _hom0_small(_path(m), n)
            for t in _trees(m):
                rep.instances += 1
                v = _hom0_small(t, n)
                if v < base:
                    rep.violation(t, _path(n), tree=v, path=base)


@_register("01-path")
def _01_path(sweep, rep):
    """hom_0(P_m(S), P_n) >= hom_1(P_m(S), P_n) for odd m and odd n."""
    for m in range(3, sweep.m_max + 1, 2):
        p = _path(m)
        u = min(p.small_class)
        for n in range(3, sweep.n_max + 1, 2):
            rep.instances += 1
            h0, h1 = hom_parity_split(p, u, n)
            if h0 < h1:
                rep.violation(p, _path(n), hom0=h0, hom1=h1)


@_register("correlation")
def _correlation(sweep, rep):
    """a_i b_j >= a_j b_i for a rooted tree (a) and a rooted subtree (b), odd n."""
    for t1 in _rooted_classes(sweep.m_max):
        subs = _rooted_subtrees(t1)
        for n in range(3, sweep.n_max + 1, 2):
            a = hom_vector(t1, t1.root, _path(n))
            for t2 in subs:
                rep.instances += 1
                b = hom_vector(t2, 0, _path(n))
                if not correlation_pair(a, b):
                    rep.violation([t1, t2], _path(n), a=a, b=b)


@_register("log-concavity")
def _log_concavity(sweep, rep):
    """a_i a_j <= a_{i+1} a_{j-1} for i < j of opposite parity, rooted vectors into P_n."""
    for t in _rooted_classes(sweep.m_max):
        for n in range(2, sweep.n_max + 1):
            rep.instances += 1
            a = hom_vector(t, t.root, _path(n))
            if not log_concave_alternating(a):
                rep.violation(t, _path(n), vector=a)


@_register("bi-unimodal")
def _bi_unimodal(sweep, rep):
    """Rooted vectors into P_n: symmetric bi-unimodal for odd n, symmetric unimodal for even n."""
    for t in _rooted_classes(sweep.m_max):
        for n in range(1, sweep.n_max + 1):
            rep.instances += 1
            a = hom_vector(t, t.root, _path(n))
            ok = is_symmetric_bi_unimodal(a) if n % 2 else is_symmetric_unimodal(a)
            if not ok:
                rep.violation(t, _path(n), vector=a)


@_register("averaging")
def _averaging(sweep, rep):
    """hom(T,P_n) = (hom(T,P_{n-1}) + hom(T,P_{n+1}))/2 when diam(T) <= n-1;
    the identity must fail somewhere outside that hypothesis."""
    control = None
    for t in _trees_upto(sweep.m_max):
        dt = diameter(t)
        for n in range(2, sweep.n_max + 1):
            lhs = 2 * hom(t, _path(n))
            rhs = hom(t, _path(n - 1)) + hom(t, _path(n + 1))
            if dt <= n - 1:
                rep.instances += 1
                if lhs != rhs:
                    rep.violation(t, _path(n), twice_mid=lhs, sum_sides=rhs)
            elif lhs != rhs and control is None:
                control = {"tree": format_tree(t), "n": n, "twice_mid": lhs, "sum_sides": rhs}
    rep.notes["negative_control"] = control
    if control is None:
        rep.status = "fail"
        rep.notes["error"] = "negative control not found: identity never failed beyond the diameter bound"


def _ls_specs(core_max: int = 5, attach_max: int = 3):
    """Deterministic stream of valid LS-switch specifications."""
    pairs = []
    for t1 in _rooted_classes(attach_max):
        for t2 in _rooted_subtrees(t1):
            pairs.append((t1, t2))
    for r in _trees_upto(core_max, 3):
        done = set()
        for u, v in itertools.combinations(range(r.n), 2):
            if r.distance(u, v) % 2:
                continue
            if canonical_code(r, (u, v)) != canonical_code(r, (v, u)):
                continue
            key = canonical_code(r, (u, v))
            if key in done:
                continue
            done.add(key)
            for (t1, t2), (t3, t4) in itertools.product(pairs, repeat=2):
                yield LSSwitchSpec(r, u, v, t1, t2, t3, t4)


@_register("ls-switch")
def _ls_switch(sweep, rep):
    """LS-switch: hom_k(T'(u),P_n) >= hom_k(T(u),P_n), hom(H,T') >= hom(H,T), Wiener strictly drops."""
    hs = _trees_upto(min(sweep.m_max, 6))
    for spec in _ls_specs():
        t, tp = ls_switch(spec)
        for n in range(3, sweep.n_max + 1, 2):
            rep.instances += 1
            a, b = hom_parity_split(t, spec.u, n), hom_parity_split(tp, spec.u, n)
            if b[0] < a[0] or b[1] < a[1]:
                rep.violation([t, tp], _path(n), before=a, after=b)
        for h in hs:
            rep.instances += 1
            if hom(h, tp) < hom(h, t):
                rep.violation(h, [t, tp], before=hom(h, t), after=hom(h, tp))
        if not is_isomorphic(t, tp):
            rep.instances += 1
            if wiener_index(tp) >= wiener_index(t):
                rep.violation([t, tp], None, wiener_before=wiener_index(t), wiener_after=wiener_index(tp))


# --- section 3/5 -------------------------------------------------------------


def _attach_rooted(r: Tree, at: int, branch: Tree) -> Tree:
    return glue(r, at, branch, branch.root)[0]


@_register("symmetrization")
def _symmetrization(sweep, rep):
    """2 hom(A,G) <= hom(B,G) + hom(C,G); and 2W(A) > W(B) + W(C) for single-edge J, K."""
    targets = _general_targets(sweep)
    rooted = _rooted_classes(3)
    k2 = Tree(2, [(0, 1)], root=0)
    for r in _trees_upto(max(1, sweep.m_max - 2)):
        seen = set()
        for u in range(r.n):
            for v in range(r.n):
                key = canonical_code(r, (u, v))
                if key in seen:
                    continue
                seen.add(key)
                if u != v:
                    a = _attach_rooted(_attach_rooted(r, u, k2), v, k2)
                    b = _attach_rooted(_attach_rooted(r, u, k2), u, k2)
                    c = _attach_rooted(_attach_rooted(r, v, k2), v, k2)
                    rep.instances += 1
                    if not 2 * wiener_index(a) > wiener_index(b) + wiener_index(c):
                        rep.violation([a, b, c], None, wiener=[wiener_index(a), wiener_index(b), wiener_index(c)])
                for j, k in itertools.product(rooted, repeat=2):
                    if r.n + j.n + k.n - 2 > sweep.m_max:
                        continue
                    a = _attach_rooted(_attach_rooted(r, u, j), v, k)
                    b = _attach_rooted(_attach_rooted(r, u, j), u, j)
                    c = _attach_rooted(_attach_rooted(r, v, k), v, k)
                    for g in targets:
                        rep.instances += 1
                        ha, hb, hc = hom(a, g), hom(b, g), hom(c, g)
                        if 2 * ha > hb + hc:
                            rep.violation([a, b, c], g, A=ha, B=hb, C=hc)


@_register("inclusion-exclusion-fact")
def _inclusion_exclusion(sweep, rep):
    """hom(H,G) >= hom(H,G1) + hom(H,G2) - hom(H,G1 cap G2) for induced G1, G2 covering G."""
    sources = _trees_upto(sweep.m_max)
    targets = _graphs_upto(min(sweep.graph_max, 5)) + _trees_upto(sweep.n_max)
    for g in targets:
        full = (1 << g.n) - 1
        subs = [induced_subgraph(g, [i for i in range(g.n) if mask >> i & 1]) for mask in range(full + 1)]
        for h in sources:
            counts = [hom(h, s) for s in subs]
            whole = counts[full]
            # enumerate G1 by mask, G2 must cover the complement of G1
            for m1 in range(full + 1):
                rest = full ^ m1
                sub = m1
                while True:
                    m2 = rest | sub
                    rep.instances += 1
                    if whole < counts[m1] + counts[m2] - counts[m1 & m2]:
                        rep.violation(h, g, G1=m1, G2=m2, whole=whole)
                    if sub == 0:
                        break
                    sub = (sub - 1) & m1


@_register("geq4-lower")
def _geq4_lower(sweep, rep):
    """hom(T_m, T_n) >= (n-2) 2^(m-1) + 2 when T_n has >= 4 leaves; special
    double starlike targets (n = 10, 12, 14) satisfy >= (n-1) 2^(m-1)."""
    for n in range(1, sweep.n_max + 1):
        for tn in _trees(n):
            if len(tn.leaves) < 4:
                continue
            for tm in _trees_upto(sweep.m_max):
                rep.instances += 1
                bound = (n - 2) * 2 ** (tm.n - 1) + 2
                v = hom(tm, tn)
                if v < bound:
                    rep.violation(tm, tn, hom=v, bound=bound)
    for n in (10, 12, 14):
        tn = special_double_starlike(n)
        for tm in _trees_upto(max(sweep.m_max, 8)):
            rep.instances += 1
            bound = (n - 1) * 2 ** (tm.n - 1)
            v = hom(tm, tn)
            if v < bound:
                rep.violation(tm, tn, hom=v, bound=bound)


def _allowed_exception(tn: Tree) -> bool:
    n = tn.n
    return n % 2 == 0 and n >= 4 and is_isomorphic(tn, Y(1, 1, n - 3))


@_register("minimality-exceptions")
def _minimality(sweep, rep):
    """hom(T_m, T_n) < hom(T_m, P_n) only for T_n = Y(1,1,n-3) with n even."""
    hit = {}
    for n in range(1, sweep.n_max + 1):
        pn = _path(n)
        for tn in _trees(n):
            for tm in _trees_upto(sweep.m_max):
                rep.instances += 1
                a, b = hom(tm, tn), hom(tm, pn)
                if a < b:
                    key = format_tree(tn)
                    hit[key] = hit.get(key, 0) + 1
                    if not _allowed_exception(tn):
                        rep.violation(tm, tn, target=a, path=b)
    rep.notes["exception_targets"] = hit


@_register("conjecture-1-9", gating=False)
def _conjecture(sweep, rep):
    """Open: hom(T_m, P_n) <= hom(T_m, T_n) for n >= 5.  Never gates."""
    for n in range(5, sweep.n_max + 1):
        pn = _path(n)
        for tn in _trees(n):
            for tm in _trees_upto(sweep.m_max):
                rep.instances += 1
                a, b = hom(tm, tn), hom(tm, pn)
                if a < b:
                    rep.violation(tm, tn, target=a, path=b)


# --- summary tables ----------------------------------------------------------


def _le(rep, label, small, big, src, tgt):
    rep.instances += 1
    if small > big:
        rep.violation(src, tgt, relation=label, smaller=small, larger=big)


def _both_directions(rep, label, pairs):
    """Record one witness per strict direction for an incomparable cell."""
    less = more = None
    for x, y, src, tgt in pairs:
        if less is None and x < y:
            less = {"source": _ser(src), "target": _ser(tgt), "left": str(x), "right": str(y)}
        if more is None and x > y:
            more = {"source": _ser(src), "target": _ser(tgt), "left": str(x), "right": str(y)}
        if less and more:
            break
    rep.notes[label] = {"left_smaller": less, "left_larger": more}
    return less is not None and more is not None


def _grid_relations(rep, pm, tm, sm, pn, tn, sn, star_cell):
    """The eight <= cells shared by both summary tables (rows then columns)."""
    h = hom
    _le(rep, "P row left", h(pm, pn), h(pm, tn), pm, tn)
    _le(rep, "P row right", h(pm, tn), h(pm, sn), pm, tn)
    _le(rep, "S row left", h(sm, pn), h(sm, tn), sm, tn)
    _le(rep, "S row right", h(sm, tn), h(sm, sn), sm, tn)
    _le(rep, "P column upper", h(pm, pn), h(tm, pn), tm, pn)
    _le(rep, "P column lower", h(tm, pn), h(sm, pn), tm, pn)
    _le(rep, "T column lower", h(tm, tn), h(sm, tn), tm, tn)
    _le(rep, "S column upper", h(pm, sn), h(tm, sn), tm, sn)
    _le(rep, "S column lower", h(tm, sn), h(sm, sn), tm, sn)
    star_cell(h(tm, pn), h(tm, tn))


@_register("table1")
def _table1(sweep, rep):
    """Same-size table: every <= cell, the X cell witnessed both ways, the ? cell reported only."""
    question, x_pairs = [], []
    for n in range(1, sweep.n_max + 1):
        p, s = _path(n), _star(n)
        for t in _trees(n):
            _grid_relations(rep, p, t, s, p, t, s, lambda a, b, t=t: _le(rep, "T row left", a, b, t, t))
            if hom(p, t) > hom(t, t) and len(question) < MAX_STORED_VIOLATIONS:
                question.append(format_tree(t))
            x_pairs.append((hom(t, t), hom(t, s), t, s))
    ds = doublestar(5)
    x_pairs.append((hom(ds, ds), hom(ds, star(10)), ds, star(10)))
    if not _both_directions(rep, "X: hom(T,T) vs hom(T,S)", x_pairs):
        rep.status = "fail"
    rep.notes["open cell: hom(P,T) > hom(T,T) at"] = question


@_register("table2")
def _table2(sweep, rep):
    """Mixed-size table: every <= cell, the (*) cell with its known exceptions,
    both X cells witnessed both ways."""
    x_upper, x_right = [], []
    excluded = 0

    def star_cell(a, b, tm, tn):
        nonlocal excluded
        if a > b and _allowed_exception(tn):
            excluded += 1
            return
        _le(rep, "(*) T row left", a, b, tm, tn)

    for m in range(1, sweep.m_max + 1):
        pm, sm = _path(m), _star(m)
        for n in range(1, sweep.n_max + 1):
            pn, sn = _path(n), _star(n)
            for tm in _trees(m):
                for tn in _trees(n):
                    _grid_relations(rep, pm, tm, sm, pn, tn, sn, lambda a, b: star_cell(a, b, tm, tn))
                    x_upper.append((hom(pm, tn), hom(tm, tn), tm, tn))
                    x_right.append((hom(tm, tn), hom(tm, sn), tm, tn))
    # paths beating E7 need a large layered target, outside any desk sweep
    k = (16, 1, 19)
    x_upper.append((layered_hom(path(7), *k), layered_hom(e7(), *k), e7(), layered(*k)))
    ds = doublestar(5)
    x_right.append((hom(ds, ds), hom(ds, star(10)), ds, ds))
    ok1 = _both_directions(rep, "X: hom(P_m,T_n) vs hom(T_m,T_n)", x_upper)
    ok2 = _both_directions(rep, "X: hom(T_m,T_n) vs hom(T_m,S_n)", x_right)
    rep.notes["excluded (*) instances"] = excluded
    if not (ok1 and ok2):
        rep.status = "fail"


# --- entropy bounds ----------------------------------------------------------


@_register("entropy-bounds")
def _entropy_bounds(sweep, rep):
    """Spectral, degree and degree-chain Markov bounds never exceed the exact count."""
    slack = 1e-9
    worst = tight = 0.0
    for g in _graphs_upto(7, connected=True):
        if g.n < 2:
            continue
        data = spectral_data(g)
        chain = degree_chain(g)
        regular = len(set(g.degrees)) == 1
        for t in _trees_upto(sweep.m_max, 3):
            rep.instances += 1
            lh = log_int(hom(t, g))
            sb = spectral_bound(t, g, data).log_lower
            db = log_degree_bound(t, g)
            mb = markov_log_bound(t, chain)
            worst = max(worst, sb - lh, db - lh, mb - lh)
            if max(sb, db, mb) > lh + slack:
                rep.violation(t, g, log_hom=lh, spectral=sb, degree=db, markov=mb)
            if regular:
                # every bound collapses to n d^(m-1) on a d-regular target
                rep.instances += 1
                gap = max(abs(math.expm1(b - lh)) for b in (sb, db, mb))
                tight = max(tight, gap)
                if gap > 1e-9:
                    rep.violation(t, g, relation="regular tightness", log_hom=lh, spectral=sb, degree=db, markov=mb)
    rep.notes["max_log_excess"] = worst
    rep.notes["max_relative_gap_on_regular_targets"] = tight


# ---------------------------------------------------------------------------
# counterexample reproduction


def _repro_doublestar(rep: CheckReport) -> None:
    k = 5
    ds, s = doublestar(k), star(2 * k)
    into_star = hom(ds, s)
    self_hom = hom(ds, ds)
    formula = closed_form("doublestar-into-star", k)
    lower = 2 * (k - 1) ** (2 * (k - 1))
    moves = [mv for mv in enumerate_kc_moves(ds) if not mv.trivial and is_isomorphic(kc_apply(ds, mv), s)]
    rep.notes.update(
        {
            "hom(S*10,S10)": into_star,
            "closed_form": formula,
            "hom(S*10,S*10)": self_hom,
            "paper_lower": lower,
            "kc_move_to_star": [moves[0].x, moves[0].y] if moves else None,
        }
    )
    rep.witnesses = [format_tree(ds)]
    ok = into_star == formula == 118098 and self_hom > into_star and self_hom >= lower and moves
    rep.status = "pass" if ok else "fail"


def _search_kc_pair(n: int, value: Callable[[Tree], int], before: int, after: int, parity=None):
    for t in _trees(n):
        if value(t) != before:
            continue
        for tp in _kc_images(t, parity):
            if value(tp) == after:
                return t, tp
    return None


def _repro_pair(rep, n, value, before, after, parity, space):
    found = _search_kc_pair(n, value, before, after, parity)
    rep.instances = len(_trees(n))
    if found is None:
        rep.status = "fail"
        rep.notes["searched"] = space
        return
    t, tp = found
    rep.witnesses = [format_tree(t), format_tree(tp)]
    rep.notes["values"] = [value(t), value(tp)]
    rep.status = "pass"


def _repro_counter2(rep):
    _repro_pair(
        rep, 6, lambda t: hom(t, _path(3)), 20, 16, "odd",
        "all 6-vertex trees, nontrivial odd KC moves, target P3",
    )


def _repro_counter3(rep):
    _repro_pair(
        rep, 8, lambda t: hom(t, t), 17190, 10430, None,
        "all 8-vertex trees, all nontrivial KC moves, endomorphism counts",
    )


def _repro_e7(rep, k_max: int = 32):
    grid = sorted(
        itertools.product(range(1, k_max + 1), repeat=3),
        key=lambda k: (1 + k[0] + k[0] * k[1] + k[0] * k[1] * k[2], k),
    )
    p7, e = path(7), e7()
    for k in grid:
        rep.instances += 1
        a, b = layered_hom(p7, *k), layered_hom(e, *k)
        if a > b:
            t = layered(*k)
            exact_a, exact_b = hom_count(p7, t), hom_count(e, t)
            rep.notes.update({"k": list(k), "vertices": t.n, "hom(P7,T)": exact_a, "hom(E7,T)": exact_b})
            rep.witnesses = [format_tree(t)]
            rep.status = "pass" if exact_a == a and exact_b == b and exact_a > exact_b else "fail"
            return
    rep.status = "fail"
    rep.notes["searched"] = f"T(k1,k2,k3) with 1 <= k_i <= {k_max}"


def _glue_copies(branch: Tree, k: int) -> Tree:
    out = Tree(1, [])
    for _ in range(k):
        out = glue(out, 0, branch, branch.root)[0]
    return out


def _repro_s4(rep):
    s4, p4 = star(4), path(4)
    want_s, want_p = (9, 9, 9, 9), (4, 10, 10, 4)
    branch = None
    for t in _rooted_classes(6):
        if t.n != 5:
            continue
        vs = hom_vector(t, t.root, s4)
        vp = hom_vector(t, t.root, p4)
        if vs == want_s and vp == want_p:
            branch = t
            break
    if branch is None:
        rep.status = "fail"
        rep.notes["searched"] = "rooted trees with at most 6 vertices"
        return
    k = 7
    big = _glue_copies(branch, k)
    into_p, into_s = hom_count(big, p4), hom_count(big, s4)
    first_k = next(
        (j for j in range(1, 11) if 2 * 4**j + 2 * 10**j > 4 * 9**j),
        None,
    )
    rep.witnesses = [format_tree(branch), format_tree(big)]
    rep.notes.update(
        {
            "branch_root": branch.root,
            "hom(T,P4)": into_p,
            "hom(T,S4)": into_s,
            "closed_P4": 2 * 4**k + 2 * 10**k,
            "closed_S4": 4 * 9**k,
            "smallest_k": first_k,
        }
    )
    ok = into_p == 20_032_768 and into_s == 19_131_876 and into_p > into_s and first_k == 7
    rep.status = "pass" if ok else "fail"


REPRO: dict[str, Callable[[CheckReport], None]] = {
    "doublestar": _repro_doublestar,
    "counter2": _repro_counter2,
    "counter3": _repro_counter3,
    "e7": _repro_e7,
    "s4": _repro_s4,
}


def reproduce_counterexample(cid: str) -> CheckReport:
    if cid not in REPRO:
        raise UnknownCheck(cid)
    rep = CheckReport(cid)
    t0 = time.perf_counter()
    REPRO[cid](rep)
    rep.seconds = time.perf_counter() - t0
    return rep
