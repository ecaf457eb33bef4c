"""Reference backend: numpy for the grid sweeps, Python-int bitsets for the
exact solvers. Semantics here are the contract; the compiled backend must
return identical results."""

from __future__ import annotations

import numpy as np


def _box_geometry(lo, hi):
    lo = np.asarray(lo, dtype=np.int64)
    hi = np.asarray(hi, dtype=np.int64)
    shape = hi - lo + 1
    if np.any(shape <= 0):
        raise ValueError("empty box")
    strides = np.ones(len(shape), dtype=np.int64)
    for i in range(len(shape) - 2, -1, -1):
        strides[i] = strides[i + 1] * shape[i + 1]
    return lo, hi, shape, strides


def _diff_pairs(lo, hi, diffs):
    """Yield (u_idx, v_idx) index arrays for each difference vector.

    Vertices are the integer points of the box in lexicographic order; a
    difference d pairs u with u + d whenever both ends stay inside.
    """
    lo, hi, shape, strides = _box_geometry(lo, hi)
    n = len(shape)
    diffs = np.asarray(diffs, dtype=np.int64)
    if diffs.size == 0:
        return
    for d in diffs:
        starts = np.maximum(0, -d)
        stops = np.minimum(shape - 1, shape - 1 - d)
        if np.any(starts > stops):
            continue
        axes = [np.arange(starts[i], stops[i] + 1) * strides[i] for i in range(n)]
        u = axes[0]
        for a in axes[1:]:
            u = (u[:, None] + a[None, :]).ravel()
        v = u + int(np.dot(d, strides))
        yield u, v


def box_edges(lo, hi, diffs) -> np.ndarray:
    """Edge list (E, 2) of the box graph, rows sorted lexicographically.

    diffs must already be deduplicated to one representative per +-pair
    (lexicographically positive), which also guarantees u < v per row.
    """
    chunks = [np.stack([u, v], axis=1) for u, v in _diff_pairs(lo, hi, diffs)]
    if not chunks:
        return np.empty((0, 2), dtype=np.int64)
    edges = np.concatenate(chunks, axis=0)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return edges[order]


def conflict_pairs(colours, lo, hi, diffs) -> np.ndarray:
    """Rows (u, v) with colours[u] == colours[v] over the same edge set."""
    colours = np.asarray(colours)
    bad = []
    for u, v in _diff_pairs(lo, hi, diffs):
        mask = colours[u] == colours[v]
        if mask.any():
            bad.append(np.stack([u[mask], v[mask]], axis=1))
    if not bad:
        return np.empty((0, 2), dtype=np.int64)
    out = np.concatenate(bad, axis=0)
    order = np.lexsort((out[:, 1], out[:, 0]))
    return out[order]


def _adjacency_bitsets(n: int, edges) -> list[int]:
    adj = [0] * n
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise ValueError("loop edge")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _greedy_clique(n: int, adj: list[int]) -> list[int]:
    order = sorted(range(n), key=lambda v: (-bin(adj[v]).count("1"), v))
    clique: list[int] = []
    mask = ~0
    for v in order:
        if mask & (1 << v):
            clique.append(v)
            mask &= adj[v]
    return clique


def dsatur_chromatic(n: int, edges, lower: int = 1):
    """Exact chromatic number by DSATUR branch and bound.

    Returns (chi, colouring) with colouring a list of ints in range(chi).
    Vertices are picked by (saturation, degree, -index) descending; candidate
    colours ascend, so the result is deterministic.
    """
    if n == 0:
        return 0, []
    adj = _adjacency_bitsets(n, edges)
    if all(a == 0 for a in adj):
        return max(1, lower), [0] * n

    degree = [bin(a).count("1") for a in adj]
    clique = _greedy_clique(n, adj)
    lower = max(lower, len(clique))

    colour = [-1] * n
    # neighbour_colours[v] = bitset of colours used on v's neighbours
    neighbour_colours = [0] * n
    best_colour: list[int] | None = None
    best_k = n + 1

    def greedy_bound() -> None:
        nonlocal best_colour, best_k
        col = [-1] * n
        sat = [0] * n
        for _ in range(n):
            v = max(
                (u for u in range(n) if col[u] < 0),
                key=lambda u: (bin(sat[u]).count("1"), degree[u], -u),
            )
            c = 0
            while sat[v] >> c & 1:
                c += 1
            col[v] = c
            m = adj[v]
            while m:
                w = (m & -m).bit_length() - 1
                sat[w] |= 1 << c
                m &= m - 1
        k = max(col) + 1
        if k < best_k:
            best_k, best_colour = k, col

    greedy_bound()
    if best_k == lower:
        return best_k, list(best_colour or [])

    def assign(v: int, c: int) -> list[int]:
        colour[v] = c
        touched = []
        m = adj[v]
        bit = 1 << c
        while m:
            w = (m & -m).bit_length() - 1
            if not neighbour_colours[w] & bit:
                neighbour_colours[w] |= bit
                touched.append(w)
            m &= m - 1
        return touched

    def unassign(v: int, c: int, touched: list[int]) -> None:
        colour[v] = -1
        bit = 1 << c
        for w in touched:
            neighbour_colours[w] &= ~bit

    def search(coloured: int, used: int) -> None:
        nonlocal best_colour, best_k
        if used >= best_k:
            return
        if coloured == n:
            best_k, best_colour = used, colour.copy()
            return
        v = max(
            (u for u in range(n) if colour[u] < 0),
            key=lambda u: (bin(neighbour_colours[u]).count("1"), degree[u], -u),
        )
        cap = min(used + 1, best_k - 1)
        for c in range(cap):
            if neighbour_colours[v] >> c & 1:
                continue
            touched = assign(v, c)
            search(coloured + 1, max(used, c + 1))
            unassign(v, c, touched)
            if best_k <= max(lower, used):
                return

    # pre-colour the seed clique: its colours are forced up to symmetry
    pre: list[tuple[int, int, list[int]]] = []
    for i, v in enumerate(clique):
        pre.append((v, i, assign(v, i)))
    search(len(clique), len(clique))
    for v, c, touched in reversed(pre):
        unassign(v, c, touched)

    assert best_colour is not None
    return best_k, best_colour


def max_independent_set(n: int, edges):
    """Exact maximum independent set by branch and bound on bitsets.

    Returns (size, members) with members a sorted tuple of vertex indices.
    """
    if n == 0:
        return 0, ()
    adj = _adjacency_bitsets(n, edges)
    full = (1 << n) - 1
    best_size = 0
    best_set = 0

    def search(candidates: int, chosen: int, size: int) -> None:
        nonlocal best_size, best_set
        if size + bin(candidates).count("1") <= best_size:
            return
        if candidates == 0:
            best_size, best_set = size, chosen
            return
        # pivot on the candidate with the most candidate-neighbours
        m, v, vdeg = candidates, -1, -1
        while m:
            u = (m & -m).bit_length() - 1
            d = bin(adj[u] & candidates).count("1")
            if d > vdeg:
                v, vdeg = u, d
            m &= m - 1
        if vdeg == 0:
            best_if_all = size + bin(candidates).count("1")
            if best_if_all > best_size:
                best_size, best_set = best_if_all, chosen | candidates
            return
        bit = 1 << v
        search(candidates & ~(adj[v] | bit), chosen | bit, size + 1)
        search(candidates & ~bit, chosen, size)

    search(full, 0, 0)
    members = tuple(v for v in range(n) if best_set >> v & 1)
    return best_size, members
