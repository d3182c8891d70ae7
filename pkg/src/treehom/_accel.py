"""Hot integer kernels with a numba path and a numpy/pure-Python fallback.

Set ``TREEHOM_DISABLE_NUMBA=1`` to force the fallback path (useful for
debugging and for comparing the two paths in ``benchmarks/``).  Every kernel
here works on int64 and is only called when the caller has proved that no
intermediate value can reach 2**62.
"""

from __future__ import annotations

import os

import numpy as np

INT64_SAFE = 1 << 62

_disabled = os.environ.get("TREEHOM_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _disabled:
        raise ImportError
    from numba import njit as _njit

    NUMBA_ENABLED = True
except ImportError:  # pragma: no cover - exercised through the env flag
    _njit = None
    NUMBA_ENABLED = False


def maybe_njit(fn):
    """``numba.njit(cache=True)`` when enabled, otherwise the function itself."""
    if NUMBA_ENABLED:
        return _njit(cache=True)(fn)
    return fn


# ---------------------------------------------------------------------------
# tree-walk DP


def _hom_vector_loops(order, parent, indptr, indices, n_target):
    m = order.shape[0]
    acc = np.ones((m, n_target), dtype=np.int64)
    for k in range(m - 1, 0, -1):
        x = order[k]
        p = parent[x]
        for i in range(n_target):
            s = 0
            for e in range(indptr[i], indptr[i + 1]):
                s += acc[x, indices[e]]
            acc[p, i] *= s
    return acc[order[0]].copy()


def _hom_vector_numpy(order, parent, indptr, indices, n_target):
    m = order.shape[0]
    acc = np.ones((m, n_target), dtype=np.int64)
    for k in range(m - 1, 0, -1):
        x = order[k]
        # neighbour sums via prefix sums over the CSR gather
        pref = np.zeros(indices.shape[0] + 1, dtype=np.int64)
        np.cumsum(acc[x][indices], out=pref[1:])
        acc[parent[x]] *= pref[indptr[1:]] - pref[indptr[:-1]]
    return acc[order[0]].copy()


if NUMBA_ENABLED:
    hom_vector_kernel = maybe_njit(_hom_vector_loops)
else:
    hom_vector_kernel = _hom_vector_numpy


# ---------------------------------------------------------------------------
# brute-force oracle


def _brute_force_loops(n_src, n_tgt, eu, ev, adjmat, total):
    digits = np.zeros(n_src, dtype=np.int64)
    count = 0
    for _ in range(total):
        ok = True
        for e in range(eu.shape[0]):
            if adjmat[digits[eu[e]], digits[ev[e]]] == 0:
                ok = False
                break
        if ok:
            count += 1
        j = 0
        while j < n_src:
            digits[j] += 1
            if digits[j] < n_tgt:
                break
            digits[j] = 0
            j += 1
    return count


def _brute_force_numpy(n_src, n_tgt, eu, ev, adjmat, total, chunk=1 << 18):
    count = 0
    powers = n_tgt ** np.arange(n_src, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        maps = (idx[:, None] // powers[None, :]) % n_tgt
        ok = np.ones(idx.shape[0], dtype=bool)
        for a, b in zip(eu, ev):
            ok &= adjmat[maps[:, a], maps[:, b]] != 0
        count += int(ok.sum())
    return count


if NUMBA_ENABLED:
    brute_force_kernel = maybe_njit(_brute_force_loops)
else:
    brute_force_kernel = _brute_force_numpy


# ---------------------------------------------------------------------------
# Pruefer decoding + integer canonical code (tree-count oracle)


def _prufer_decode(seq, n, parent_out):
    """Edges of the labeled tree with the given Pruefer sequence, written as
    ``parent_out[k] = (u, v)`` pairs in a (n-1, 2) array."""
    degree = np.ones(n, dtype=np.int64)
    for x in seq:
        degree[x] += 1
    k = 0
    for x in seq:
        for leaf in range(n):
            if degree[leaf] == 1:
                parent_out[k, 0] = leaf
                parent_out[k, 1] = x
                k += 1
                degree[leaf] -= 1
                degree[x] -= 1
                break
    u = -1
    for v in range(n):
        if degree[v] == 1:
            if u < 0:
                u = v
            else:
                parent_out[k, 0] = u
                parent_out[k, 1] = v
    return parent_out


def _bits_code(n, adj_ptr, adj_idx, root):
    """Balanced-parenthesis code of the tree rooted at ``root`` packed into an
    integer ('(' = 1, ')' = 0).  Children are concatenated in descending
    (length, code) order; needs 2n <= 62."""
    order = np.empty(n, dtype=np.int64)
    par = np.full(n, -1, dtype=np.int64)
    seen = np.zeros(n, dtype=np.bool_)
    order[0] = root
    seen[root] = True
    head, tail = 0, 1
    while head < tail:
        x = order[head]
        head += 1
        for e in range(adj_ptr[x], adj_ptr[x + 1]):
            y = adj_idx[e]
            if not seen[y]:
                seen[y] = True
                par[y] = x
                order[tail] = y
                tail += 1
    code = np.zeros(n, dtype=np.int64)
    length = np.zeros(n, dtype=np.int64)
    kid_codes = np.zeros(n, dtype=np.int64)
    kid_lens = np.zeros(n, dtype=np.int64)
    for k in range(n - 1, -1, -1):
        x = order[k]
        cnt = 0
        for e in range(adj_ptr[x], adj_ptr[x + 1]):
            y = adj_idx[e]
            if par[y] == x:
                kid_codes[cnt] = code[y]
                kid_lens[cnt] = length[y]
                cnt += 1
        # insertion sort by (length, code) descending
        for i in range(1, cnt):
            c, ln = kid_codes[i], kid_lens[i]
            j = i - 1
            while j >= 0 and (kid_lens[j] < ln or (kid_lens[j] == ln and kid_codes[j] < c)):
                kid_codes[j + 1] = kid_codes[j]
                kid_lens[j + 1] = kid_lens[j]
                j -= 1
            kid_codes[j + 1] = c
            kid_lens[j + 1] = ln
        v = np.int64(1)
        total = 1
        for i in range(cnt):
            v = (v << kid_lens[i]) | kid_codes[i]
            total += kid_lens[i]
        code[x] = v << 1
        length[x] = total + 1
    return code[root]


def _free_tree_code(n, edges):
    deg = np.zeros(n, dtype=np.int64)
    for k in range(n - 1):
        deg[edges[k, 0]] += 1
        deg[edges[k, 1]] += 1
    ptr = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        ptr[v + 1] = ptr[v] + deg[v]
    fill = ptr[:-1].copy()
    idx = np.zeros(2 * (n - 1), dtype=np.int64)
    for k in range(n - 1):
        a, b = edges[k, 0], edges[k, 1]
        idx[fill[a]] = b
        fill[a] += 1
        idx[fill[b]] = a
        fill[b] += 1
    # subtree sizes from vertex 0 to find the centroid(s)
    order = np.empty(n, dtype=np.int64)
    par = np.full(n, -1, dtype=np.int64)
    seen = np.zeros(n, dtype=np.bool_)
    order[0] = 0
    seen[0] = True
    head, tail = 0, 1
    while head < tail:
        x = order[head]
        head += 1
        for e in range(ptr[x], ptr[x + 1]):
            y = idx[e]
            if not seen[y]:
                seen[y] = True
                par[y] = x
                order[tail] = y
                tail += 1
    size = np.ones(n, dtype=np.int64)
    for k in range(n - 1, 0, -1):
        size[par[order[k]]] += size[order[k]]
    best = n + 1
    for x in range(n):
        worst = n - size[x]
        for e in range(ptr[x], ptr[x + 1]):
            y = idx[e]
            if y != par[x] and size[y] > worst:
                worst = size[y]
        if worst < best:
            best = worst
    out = np.int64(-1)
    for x in range(n):
        worst = n - size[x]
        for e in range(ptr[x], ptr[x + 1]):
            y = idx[e]
            if y != par[x] and size[y] > worst:
                worst = size[y]
        if worst == best:
            c = _bits_code(n, ptr, idx, x)
            if c > out:
                out = c
    return out


def _prufer_class_codes(n):
    """Canonical integer code of every labeled tree on ``n >= 3`` vertices."""
    total = n ** (n - 2)
    codes = np.empty(total, dtype=np.int64)
    seq = np.zeros(n - 2, dtype=np.int64)
    edges = np.zeros((n - 1, 2), dtype=np.int64)
    for t in range(total):
        r = t
        for i in range(n - 2):
            seq[i] = r % n
            r //= n
        _prufer_decode(seq, n, edges)
        codes[t] = _free_tree_code(n, edges)
    return codes


# rebinding matters: jitted callers resolve these globals at compile time
_prufer_decode = maybe_njit(_prufer_decode)
_bits_code = maybe_njit(_bits_code)
_free_tree_code = maybe_njit(_free_tree_code)
_prufer_class_codes = maybe_njit(_prufer_class_codes)

prufer_decode = _prufer_decode
free_tree_code = _free_tree_code


def prufer_class_codes(n: int) -> np.ndarray:
    if not 3 <= n <= 31:
        raise ValueError("Pruefer oracle supports 3 <= n <= 31")
    return _prufer_class_codes(n)
