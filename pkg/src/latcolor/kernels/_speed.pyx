# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled mirrors of the reference kernels.

Same inputs, same outputs, same tie-breaking as _pure; the equivalence test
holds the two backends against each other. The exact solvers here use
one-word bitsets, so instances wider than 64 vertices delegate to _pure.
"""

import numpy as np

from latcolor.kernels import _pure

cdef unsigned long long _ONE = 1

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _popcount(unsigned long long x) nogil:
    return __builtin_popcountll(x)


def _geometry(lo, hi):
    lo_a = np.asarray(lo, dtype=np.int64)
    hi_a = np.asarray(hi, dtype=np.int64)
    shape = hi_a - lo_a + 1
    if np.any(shape <= 0):
        raise ValueError("empty box")
    strides = np.ones(len(shape), dtype=np.int64)
    for i in range(len(shape) - 2, -1, -1):
        strides[i] = strides[i + 1] * shape[i + 1]
    return shape, strides


def _pairs_for_diff(long long[:] shape, long long[:] strides, long long[:] d):
    """Index pairs (u, u + d) staying inside the box, in odometer order."""
    cdef int n = shape.shape[0]
    cdef long long[::1] starts = np.empty(n, dtype=np.int64)
    cdef long long[::1] stops = np.empty(n, dtype=np.int64)
    cdef long long count = 1
    cdef int i
    cdef long long delta = 0
    for i in range(n):
        starts[i] = -d[i] if d[i] < 0 else 0
        stops[i] = shape[i] - 1 - d[i] if d[i] > 0 else shape[i] - 1
        if starts[i] > stops[i]:
            return None
        count *= stops[i] - starts[i] + 1
        delta += d[i] * strides[i]
    out = np.empty((count, 2), dtype=np.int64)
    cdef long long[:, ::1] ov = out
    cdef long long[::1] off = starts.copy()
    cdef long long u = 0
    for i in range(n):
        u += off[i] * strides[i]
    cdef long long row = 0
    cdef int ax
    while True:
        ov[row, 0] = u
        ov[row, 1] = u + delta
        row += 1
        ax = n - 1
        while ax >= 0:
            if off[ax] < stops[ax]:
                off[ax] += 1
                u += strides[ax]
                break
            u -= (off[ax] - starts[ax]) * strides[ax]
            off[ax] = starts[ax]
            ax -= 1
        if ax < 0:
            return out


def box_edges(lo, hi, diffs):
    shape, strides = _geometry(lo, hi)
    diffs_a = np.asarray(diffs, dtype=np.int64)
    chunks = []
    if diffs_a.size:
        for k in range(diffs_a.shape[0]):
            pairs = _pairs_for_diff(shape, strides, diffs_a[k])
            if pairs is not None:
                chunks.append(pairs)
    if not chunks:
        return np.empty((0, 2), dtype=np.int64)
    edges = np.concatenate(chunks, axis=0)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return edges[order]


def conflict_pairs(colours, lo, hi, diffs):
    shape, strides = _geometry(lo, hi)
    colours_a = np.ascontiguousarray(colours, dtype=np.int64)
    diffs_a = np.asarray(diffs, dtype=np.int64)
    cdef long long[::1] col = colours_a
    cdef long long[:, ::1] pv
    bad = []
    if diffs_a.size:
        for k in range(diffs_a.shape[0]):
            pairs = _pairs_for_diff(shape, strides, diffs_a[k])
            if pairs is None:
                continue
            pv = pairs
            keep = np.empty(pv.shape[0], dtype=np.bool_)
            _mark_conflicts(col, pv, keep)
            if keep.any():
                bad.append(pairs[keep])
    if not bad:
        return np.empty((0, 2), dtype=np.int64)
    out = np.concatenate(bad, axis=0)
    order = np.lexsort((out[:, 1], out[:, 0]))
    return out[order]


cdef void _mark_conflicts(long long[::1] col, long long[:, ::1] pairs,
                          unsigned char[::1] keep) nogil:
    cdef long long i
    for i in range(pairs.shape[0]):
        keep[i] = col[pairs[i, 0]] == col[pairs[i, 1]]


def dsatur_chromatic(n, edges, lower=1):
    if n > 64:
        return _pure.dsatur_chromatic(n, edges, lower)
    solver = _Dsatur(int(n), edges, int(lower))
    return solver.run()


def max_independent_set(n, edges):
    if n > 64:
        return _pure.max_independent_set(n, edges)
    solver = _Mis(int(n), edges)
    return solver.run()


cdef class _Dsatur:
    cdef int n, best_k, lower
    cdef unsigned long long[64] adj
    cdef unsigned long long[64] nc
    cdef int[64] degree
    cdef int[64] colour
    cdef int[64] best_colour
    cdef list clique

    def __init__(self, int n, edges, int lower):
        cdef int i, u, v
        self.n = n
        for i in range(n):
            self.adj[i] = 0
        for e in edges:
            u = e[0]
            v = e[1]
            if u == v:
                raise ValueError("loop edge")
            self.adj[u] |= _ONE << v
            self.adj[v] |= _ONE << u
        for i in range(n):
            self.degree[i] = _popcount(self.adj[i])
            self.colour[i] = -1
            self.nc[i] = 0
        order = sorted(range(n), key=lambda w: (-self.degree[w], w))
        self.clique = []
        cdef unsigned long long mask = ~(<unsigned long long>0)
        for v in order:
            if mask & (_ONE << v):
                self.clique.append(v)
                mask &= self.adj[v]
        self.lower = max(lower, len(self.clique))
        self.best_k = n + 1

    cdef void _greedy(self):
        cdef int i, v, c, best, w
        cdef unsigned long long m
        cdef unsigned long long[64] sat
        cdef int[64] col
        for i in range(self.n):
            sat[i] = 0
            col[i] = -1
        for _ in range(self.n):
            v = -1
            for i in range(self.n):
                if col[i] >= 0:
                    continue
                if v < 0 or (_popcount(sat[i]), self.degree[i], -i) > \
                        (_popcount(sat[v]), self.degree[v], -v):
                    v = i
            c = 0
            while (sat[v] >> c) & 1:
                c += 1
            col[v] = c
            m = self.adj[v]
            while m:
                w = __builtin_ctzll(m)
                sat[w] |= _ONE << c
                m &= m - 1
        best = 0
        for i in range(self.n):
            if col[i] + 1 > best:
                best = col[i] + 1
        if best < self.best_k:
            self.best_k = best
            for i in range(self.n):
                self.best_colour[i] = col[i]

    cdef void _search(self, int coloured, int used):
        cdef int i, v, c, cap, w
        cdef unsigned long long m, touched, bit
        if used >= self.best_k:
            return
        if coloured == self.n:
            self.best_k = used
            for i in range(self.n):
                self.best_colour[i] = self.colour[i]
            return
        v = -1
        for i in range(self.n):
            if self.colour[i] >= 0:
                continue
            if v < 0 or (_popcount(self.nc[i]), self.degree[i], -i) > \
                    (_popcount(self.nc[v]), self.degree[v], -v):
                v = i
        cap = used + 1
        if self.best_k - 1 < cap:
            cap = self.best_k - 1
        for c in range(cap):
            if (self.nc[v] >> c) & 1:
                continue
            bit = _ONE << c
            self.colour[v] = c
            touched = 0
            m = self.adj[v]
            while m:
                w = __builtin_ctzll(m)
                if not self.nc[w] & bit:
                    self.nc[w] |= bit
                    touched |= _ONE << w
                m &= m - 1
            self._search(coloured + 1, used if used > c + 1 else c + 1)
            self.colour[v] = -1
            m = touched
            while m:
                w = __builtin_ctzll(m)
                self.nc[w] &= ~bit
                m &= m - 1
            if self.best_k <= (self.lower if self.lower > used else used):
                return

    def run(self):
        cdef int i, v, c, w
        cdef unsigned long long m
        if self.n == 0:
            return 0, []
        all_iso = True
        for i in range(self.n):
            if self.adj[i]:
                all_iso = False
                break
        if all_iso:
            return max(1, self.lower), [0] * self.n
        self._greedy()
        if self.best_k == self.lower:
            return self.best_k, [self.best_colour[i] for i in range(self.n)]
        for c, v in enumerate(self.clique):
            self.colour[v] = c
            m = self.adj[v]
            while m:
                w = __builtin_ctzll(m)
                self.nc[w] |= _ONE << c
                m &= m - 1
        self._search(len(self.clique), len(self.clique))
        return self.best_k, [self.best_colour[i] for i in range(self.n)]


cdef class _Mis:
    cdef int n, best_size
    cdef unsigned long long best_set
    cdef unsigned long long[64] adj

    def __init__(self, int n, edges):
        cdef int i, u, v
        self.n = n
        for i in range(n):
            self.adj[i] = 0
        for e in edges:
            u = e[0]
            v = e[1]
            if u == v:
                raise ValueError("loop edge")
            self.adj[u] |= _ONE << v
            self.adj[v] |= _ONE << u
        self.best_size = 0
        self.best_set = 0

    cdef void _search(self, unsigned long long candidates,
                      unsigned long long chosen, int size):
        cdef unsigned long long m, bit
        cdef int u, v, d, vdeg
        if size + _popcount(candidates) <= self.best_size:
            return
        if candidates == 0:
            self.best_size = size
            self.best_set = chosen
            return
        m = candidates
        v = -1
        vdeg = -1
        while m:
            u = __builtin_ctzll(m)
            d = _popcount(self.adj[u] & candidates)
            if d > vdeg:
                v = u
                vdeg = d
            m &= m - 1
        if vdeg == 0:
            if size + _popcount(candidates) > self.best_size:
                self.best_size = size + _popcount(candidates)
                self.best_set = chosen | candidates
            return
        bit = _ONE << v
        self._search(candidates & ~(self.adj[v] | bit), chosen | bit, size + 1)
        self._search(candidates & ~bit, chosen, size)

    def run(self):
        if self.n == 0:
            return 0, ()
        self._search((_ONE << self.n) - 1 if self.n < 64 else ~(<unsigned long long>0),
                     0, 0)
        members = tuple(v for v in range(self.n) if (self.best_set >> v) & 1)
        return self.best_size, members
