"""Command-line front end.  Exit codes: 0 success, 1 check failure, 2 bad input."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bounds import ChainError, chain_from_weights, degree_bound, markov_lower_bound, spectral_bound
from .enumpose import build_kc_poset, enumerate_trees, export_dot, tree_line
from .graphcore import Graph, GraphParseError, Tree, parse_graph
from .harness import CHECKS, REPRO, SweepSpec, reproduce_counterexample, run_check
from .homcount import hom_count, hom_cycle, hom_vector, vector_to_json


class InputError(Exception):
    pass


def _load(path: str, one_based: bool) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_graph(text, one_based=one_based)
    except GraphParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_tree(path: str, one_based: bool) -> Tree:
    g = _load(path, one_based)
    if not isinstance(g, Tree):
        try:
            g = Tree.from_graph(g)
        except ValueError as exc:
            raise InputError(f"{path} is not a tree: {exc}") from None
    return g


def _cmd_count(a) -> int:
    t = _load_tree(a.tree, a.one_based)
    g = _load(a.graph, a.one_based)
    if a.vector:
        if not 0 <= a.root < t.n:
            raise InputError(f"root {a.root} out of range")
        print(json.dumps(vector_to_json(hom_vector(t, a.root, g))))
    else:
        print(hom_count(t, g))
    return 0


def _cmd_endo(a) -> int:
    t = _load_tree(a.tree, a.one_based)
    print(hom_count(t, t))
    return 0


def _cmd_cycle(a) -> int:
    g = _load(a.graph, a.one_based)
    if a.m < 3:
        raise InputError("cycle length must be at least 3")
    print(hom_cycle(a.m, g))
    return 0


def _cmd_enumerate(a) -> int:
    try:
        trees = enumerate_trees(a.n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if a.list:
        for t in trees:
            print(tree_line(t))
    else:
        print(len(trees))
    return 0


def _cmd_poset(a) -> int:
    try:
        p = build_kc_poset(a.n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    Path(a.dot).write_text(export_dot(p))
    print(f"{len(p.codes)} nodes, {len(p.hasse_edges)} covering edges -> {a.dot}")
    return 0


def _parse_chain(path: str) -> list[str]:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, dict) or not isinstance(data.get("weights"), list):
        raise InputError(f'{path}: expected an object {{"weights": [...]}}')
    return [str(w) for w in data["weights"]]


def _cmd_bound(a) -> int:
    t = _load_tree(a.tree, a.one_based)
    g = _load(a.graph, a.one_based)
    out = {"exact": str(hom_count(t, g))}
    try:
        if a.kind == "spectral":
            b = spectral_bound(t, g)
            out.update(lower=b.lower, eigenvalue=b.eigenvalue, entropy=b.entropy)
        elif a.kind == "degree":
            out["lower"] = degree_bound(t, g)
        else:
            if a.chain is None:
                raise InputError("markov bound needs --chain")
            if not isinstance(g, Tree):
                raise InputError("weight chains are defined on tree targets")
            chain = chain_from_weights(g, _parse_chain(a.chain))
            out["lower"] = markov_lower_bound(t, g, chain)
    except (ChainError, ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None
    print(json.dumps(out, sort_keys=True))
    return 0


def _emit(rep, as_json: bool, timing: bool) -> None:
    if as_json:
        print(rep.to_json(include_timing=timing))
    else:
        print(f"{rep.id}: {rep.status} ({rep.instances} instances, {rep.violation_count} violations)")
        for v in rep.violations[:3]:
            print("  violation:", json.dumps(v, sort_keys=True))


def _cmd_verify(a) -> int:
    try:
        sweep = SweepSpec(m_max=a.m_max, n_max=a.n_max, graph_max=a.graph_max)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    ids = [c for c, (_, gating, _) in CHECKS.items() if gating] if a.id == "all" else [a.id]
    if any(c not in CHECKS for c in ids):
        raise InputError(f"unknown check {a.id!r}; known: all, {', '.join(CHECKS)}")
    failed = False
    for cid in ids:
        rep = run_check(cid, sweep)
        _emit(rep, a.json, not a.no_timing)
        failed |= rep.status == "fail"
    return 1 if failed else 0


def _cmd_repro(a) -> int:
    if a.id not in REPRO:
        raise InputError(f"unknown counterexample {a.id!r}; known: {', '.join(REPRO)}")
    rep = reproduce_counterexample(a.id)
    print(rep.to_json(include_timing=not a.no_timing))
    return 0 if rep.status == "pass" else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treehom", description="Exact tree homomorphism counts and extremal checks.")
    ap.add_argument("--one-based", action="store_true", help="input files use 1-based vertex labels")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("count", help="hom(T, G)")
    p.add_argument("--tree", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--vector", action="store_true", help="print the hom-vector at --root")
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("endo", help="|End(T)|")
    p.add_argument("--tree", required=True)
    p.set_defaults(fn=_cmd_endo)

    p = sub.add_parser("cycle", help="hom(C_m, G)")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--graph", required=True)
    p.set_defaults(fn=_cmd_cycle)

    p = sub.add_parser("enumerate", help="count or list unlabeled trees")
    p.add_argument("n", type=int)
    p.add_argument("--list", action="store_true", help="one tree per line: n u-v u-v ...")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("poset", help="KC poset as a DOT file")
    p.add_argument("n", type=int)
    p.add_argument("--dot", required=True)
    p.set_defaults(fn=_cmd_poset)

    p = sub.add_parser("bound", help="entropy lower bounds next to the exact count")
    p.add_argument("kind", choices=["spectral", "degree", "markov"])
    p.add_argument("--tree", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--chain", help='JSON file {"weights": ["p/q", ...]} (markov only)')
    p.set_defaults(fn=_cmd_bound)

    p = sub.add_parser("verify", help="run a registry check ('all' runs every gating check)")
    p.add_argument("id")
    p.add_argument("--m-max", type=int, default=7)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--graph-max", type=int, default=5)
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-timing", action="store_true", help="omit wall time so reports compare byte for byte")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("repro", help="reproduce a stored counterexample")
    p.add_argument("id")
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(fn=_cmd_repro)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
