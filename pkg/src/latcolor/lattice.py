"""Lattice windows, difference vectors and distance graphs.

Distances are never floats. The condition for an edge between u and v is the
exact integer identity sum |u_i - v_i|**alpha == D, so a graph is determined
by (alpha, D) plus the vertex set, and adjacency reduces to translating a
precomputed set of difference vectors.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from latcolor import kernels
from latcolor.numtheory import decompositions

DEFAULT_VERTEX_CAP = 200_000


class VertexCapError(ValueError):
    """Requested graph exceeds the configured vertex cap."""


@dataclass(frozen=True)
class Window:
    """The box [lo, hi]^dim, optionally restricted to a parity sublattice."""

    dim: int
    lo: int
    hi: int
    sublattice: str | None = None  # None | "even-sum" | "odd-sum"

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.lo > self.hi:
            raise ValueError("lo must not exceed hi")
        if self.sublattice not in (None, "even-sum", "odd-sum"):
            raise ValueError("unknown sublattice filter")

    @property
    def side(self) -> int:
        return self.hi - self.lo + 1

    def n_box_points(self) -> int:
        return self.side**self.dim

    def points(self):
        rng = range(self.lo, self.hi + 1)
        for p in itertools.product(rng, repeat=self.dim):
            if self._passes(p):
                yield p

    def _passes(self, p: tuple[int, ...]) -> bool:
        if self.sublattice is None:
            return True
        want = 0 if self.sublattice == "even-sum" else 1
        return sum(p) % 2 == want


@dataclass
class DistanceGraph:
    """Finite graph whose edges realise the forbidden power-distance exactly.

    edges is an (E, 2) int64 array of vertex indices, each row u < v, rows
    sorted lexicographically; no self-loops by construction.
    """

    vertices: list[tuple[int, ...]]
    edges: np.ndarray
    alpha: int
    D: int
    kind: str
    params: dict = field(default_factory=dict)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return int(self.edges.shape[0])

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edges]

    def to_dimacs(self) -> str:
        lines = [f"p edge {self.n_vertices} {self.n_edges}"]
        for u, v in self.edges:
            lines.append(f"e {int(u) + 1} {int(v) + 1}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "forbidden": {"alpha": self.alpha, "D": self.D},
            "params": self.params,
            "vertices": [list(p) for p in self.vertices],
            "edges": [[int(u), int(v)] for u, v in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _distinct_permutations(items: tuple[int, ...]):
    """All distinct orderings of a multiset, in lexicographic order."""
    pool = sorted(items)
    n = len(pool)
    counts: dict[int, int] = {}
    for x in pool:
        counts[x] = counts.get(x, 0) + 1
    values = sorted(counts)

    def rec(acc: list[int]):
        if len(acc) == n:
            yield tuple(acc)
            return
        for v in values:
            if counts[v]:
                counts[v] -= 1
                acc.append(v)
                yield from rec(acc)
                acc.pop()
                counts[v] += 1

    yield from rec([])


def difference_vectors(dim: int, alpha: int, D: int) -> list[tuple[int, ...]]:
    """All v in Z^dim with sum |v_i|**alpha = D, sorted lexicographically."""
    if dim < 1:
        raise ValueError("dim must be positive")
    out: set[tuple[int, ...]] = set()
    for dec in decompositions(D, alpha, max_len=dim):
        padded = dec.coefficients + (0,) * (dim - dec.length)
        out.update(_distinct_permutations(padded))
    return sorted(out)


def half_difference_vectors(dim: int, alpha: int, D: int) -> list[tuple[int, ...]]:
    """One representative per +-pair: vectors whose first nonzero entry is > 0."""
    return [v for v in difference_vectors(dim, alpha, D) if v > tuple(-x for x in v)]


def build_window_graph(
    w: Window, alpha: int, D: int, vertex_cap: int = DEFAULT_VERTEX_CAP
) -> DistanceGraph:
    """Distance graph on the window, built by translating difference vectors."""
    if w.n_box_points() > vertex_cap:
        raise VertexCapError(
            f"window has {w.n_box_points()} box points, cap is {vertex_cap}"
        )
    lo = (w.lo,) * w.dim
    hi = (w.hi,) * w.dim
    diffs = half_difference_vectors(w.dim, alpha, D)
    edges = kernels.box_edges(lo, hi, np.array(diffs, dtype=np.int64).reshape(len(diffs), w.dim))
    box = list(itertools.product(range(w.lo, w.hi + 1), repeat=w.dim))
    params: dict = {"window": [w.lo, w.hi], "dim": w.dim}
    if w.sublattice is None:
        vertices = box
    else:
        params["sublattice"] = w.sublattice
        mask = np.fromiter((w._passes(p) for p in box), dtype=bool, count=len(box))
        new_index = np.cumsum(mask) - 1
        keep = mask[edges[:, 0]] & mask[edges[:, 1]]
        edges = new_index[edges[keep]]
        vertices = [p for p, ok in zip(box, mask) if ok]
    return DistanceGraph(vertices, edges, alpha, D, kind="window", params=params)


def build_hamming_slice_graph(
    n: int, weight: int, forbidden_intersection: int
) -> DistanceGraph:
    """Weight-`weight` 0/1 vectors; edges join supports meeting in exactly
    forbidden_intersection coordinates (squared distance 2(weight - that))."""
    if not 0 < weight <= n:
        raise ValueError("need 0 < weight <= n")
    supports = list(itertools.combinations(range(n), weight))
    vertices = []
    for s in supports:
        v = [0] * n
        for i in s:
            v[i] = 1
        vertices.append(tuple(v))
    sets = [frozenset(s) for s in supports]
    pairs = [
        (i, j)
        for i in range(len(sets))
        for j in range(i + 1, len(sets))
        if len(sets[i] & sets[j]) == forbidden_intersection
    ]
    edges = np.array(pairs, dtype=np.int64).reshape(len(pairs), 2)
    D = 2 * (weight - forbidden_intersection)
    return DistanceGraph(
        vertices,
        edges,
        alpha=2,
        D=D,
        kind="hamming-slice",
        params={"n": n, "weight": weight, "intersection": forbidden_intersection},
    )


def modular_graph(
    n: int,
    modulus: int,
    forbidden_residue: int,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
) -> DistanceGraph:
    """Graph on all of (Z_modulus)^n; u ~ v iff sum (u_i-v_i)^2 = residue mod modulus.

    Squares of residues do not depend on the representative, so differences
    are taken in [0, modulus).
    """
    if modulus not in (3, 5):
        raise ValueError("modulus must be 3 or 5")
    N = modulus**n
    if N > vertex_cap:
        raise VertexCapError(f"{N} vertices, cap is {vertex_cap}")
    r = forbidden_residue % modulus
    idx = np.arange(N).reshape((modulus,) * n)
    chunks = []
    for d in itertools.product(range(modulus), repeat=n):
        if all(x == 0 for x in d):
            continue
        if sum(x * x for x in d) % modulus != r:
            continue
        shifted = idx
        for axis, x in enumerate(d):
            if x:
                shifted = np.roll(shifted, -x, axis=axis)
        u = idx.ravel()
        v = shifted.ravel()
        keep = u < v
        chunks.append(np.stack([u[keep], v[keep]], axis=1))
    if chunks:
        edges = np.concatenate(chunks, axis=0)
        order = np.lexsort((edges[:, 1], edges[:, 0]))
        edges = edges[order]
    else:
        edges = np.empty((0, 2), dtype=np.int64)
    vertices = list(itertools.product(range(modulus), repeat=n))
    return DistanceGraph(
        vertices,
        edges,
        alpha=2,
        D=r,
        kind="modular",
        params={"modulus": modulus, "n": n},
    )


@dataclass(frozen=True)
class ScaledLattice:
    """Rational points cleared to a common denominator.

    D is the scaled forbidden squared distance scale**2 * l when that is an
    integer; None marks an empty conflict set (no two points of (1/scale)Z^n
    can realise the distance at all).
    """

    scale: int
    points: tuple[tuple[int, ...], ...]
    D: int | None


def rational_to_scaled_lattice(points, l) -> ScaledLattice:
    """Clear denominators: map Q^n points to Z^n and rescale the forbidden
    squared distance l to scale**2 * l."""
    pts = [tuple(Fraction(c) for c in p) for p in points]
    scale = 1
    for p in pts:
        for c in p:
            scale = scale * c.denominator // math.gcd(scale, c.denominator)
    scaled = tuple(
        tuple(int(c * scale) for c in p) for p in pts
    )
    Dq = Fraction(l) * scale * scale
    D = int(Dq) if Dq.denominator == 1 else None
    return ScaledLattice(scale, scaled, D)
