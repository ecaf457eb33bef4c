"""Ground-truth verification engines.

Finite side: replay a colouring scheme over every edge of a distance
graph, or over a full modular space, and certify (non-)bipartiteness of
finite graphs.  Infinite side: breadth-first searches on the lattice
itself, producing odd-closed-walk certificates for even forbidden
values and chain certificates whose steps are signed coordinate
permutations of a primitive vector.

Every certificate is replayable: `replay_certificate` re-checks each
edge from the serialised form alone.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Sequence

import numpy as np

from .lattice import DistanceGraph, difference_vectors
from .numtheory import three_square_representations

Point = tuple

_CHUNK = 200_000


# ---------------------------------------------------------------------------
# properness replay


@dataclass(frozen=True)
class PropernessReport:
    scheme_name: str
    graph_kind: str
    vertex_count: int
    edge_count: int
    conflict_pairs: tuple[tuple[Point, Point], ...]
    colours_used: int
    elapsed: float

    @property
    def proper(self) -> bool:
        return not self.conflict_pairs

    def to_json_dict(self) -> dict:
        # elapsed stays out: serialised reports are byte-stable across runs
        return {
            "scheme": self.scheme_name,
            "graph": self.graph_kind,
            "vertices": self.vertex_count,
            "edges": self.edge_count,
            "colours_used": self.colours_used,
            "proper": self.proper,
            "conflicts": [[list(u), list(v)] for u, v in self.conflict_pairs],
        }


def check_properness(scheme, graph: DistanceGraph,
                     transform: Optional[Callable[[Point], Point]] = None,
                     ) -> PropernessReport:
    """Replay `scheme` over every edge of `graph`.

    `transform` maps graph vertices into the scheme's domain (used for
    scaled integer models of rational windows); identity when absent.
    """
    if graph.vertices and len(graph.vertices[0]) != scheme.dim:
        raise ValueError(
            f"scheme of dimension {scheme.dim} cannot colour "
            f"{len(graph.vertices[0])}-dimensional vertices")
    t0 = time.perf_counter()
    if transform is None:
        colours = [scheme.colour_index(v) for v in graph.vertices]
    else:
        colours = [scheme.colour_index(transform(v)) for v in graph.vertices]
    conflicts = sorted(
        (graph.vertices[u], graph.vertices[v])
        for u, v in graph.edges
        if colours[u] == colours[v]
    )
    return PropernessReport(
        scheme_name=scheme.name,
        graph_kind=graph.kind,
        vertex_count=len(graph.vertices),
        edge_count=int(graph.edges.shape[0]),
        conflict_pairs=tuple(conflicts),
        colours_used=len(set(colours)),
        elapsed=time.perf_counter() - t0,
    )


def check_modular_properness(scheme, modulus: int, residue: int,
                             max_conflicts: int = 50) -> PropernessReport:
    """Exhaustive properness over the full space (Z_modulus)^dim.

    Edges join x and x+d for every nonzero d with sum(d_i^2) = residue
    mod modulus.  Each unordered pair is seen twice (once via d, once
    via -d), hence the halved edge count.
    """
    n = scheme.dim
    t0 = time.perf_counter()
    pts = list(itertools.product(range(modulus), repeat=n))
    colours = np.fromiter(
        (scheme.colour_index(p) for p in pts), dtype=np.int64, count=len(pts)
    ).reshape((modulus,) * n)
    conflicts = set()
    edge_dirs = 0
    axes = tuple(range(n))
    for d in pts[1:]:
        if sum(x * x for x in d) % modulus != residue:
            continue
        edge_dirs += 1
        clash = colours == np.roll(colours, shift=tuple(-x for x in d), axis=axes)
        if clash.any() and len(conflicts) < max_conflicts:
            for idx in np.argwhere(clash)[:max_conflicts]:
                u = tuple(int(i) for i in idx)
                v = tuple((a + b) % modulus for a, b in zip(u, d))
                conflicts.add(tuple(sorted((u, v))))
    return PropernessReport(
        scheme_name=scheme.name,
        graph_kind=f"mod{modulus}^{n}/residue{residue}",
        vertex_count=modulus ** n,
        edge_count=modulus ** n * edge_dirs // 2,
        conflict_pairs=tuple(sorted(conflicts)[:max_conflicts]),
        colours_used=len(set(colours.ravel().tolist())),
        elapsed=time.perf_counter() - t0,
    )


def check_rational_pairs(scheme, l: int, trials: int, seed: int = 0,
                         max_q: int = 11) -> PropernessReport:
    """Sample pairs of rational points at exact squared distance `l`.

    Differences are built as u/q with u an integer vector of squared
    norm l*q^2; sample points draw denominators from the same pool.
    Schemes restricted to odd denominators only see odd q.
    """
    odd_only = scheme.name in ("q_odd", "q3")
    rng = random.Random(seed)
    t0 = time.perf_counter()
    qs = [q for q in range(1, max_q + 1) if not (odd_only and q % 2 == 0)]
    conflicts = []
    checked = 0
    dry = 0
    while checked < trials and dry < 200:
        q = rng.choice(qs)
        reps = three_square_representations(l * q * q)
        if not reps:
            dry += 1
            continue
        rep = list(rng.choice(reps))
        rng.shuffle(rep)
        u = [x * rng.choice((-1, 1)) for x in rep]
        while len(u) < scheme.dim:
            u.insert(rng.randrange(len(u) + 1), 0)
        d = tuple(Fraction(x, q) for x in u[:scheme.dim])
        x = tuple(
            Fraction(rng.randint(-30, 30), rng.choice(qs))
            for _ in range(scheme.dim)
        )
        y = tuple(a + b for a, b in zip(x, d))
        checked += 1
        if scheme.colour_index(x) == scheme.colour_index(y):
            conflicts.append(tuple(sorted((x, y))))
    return PropernessReport(
        scheme_name=scheme.name,
        graph_kind=f"rational-sample/l={l}/seed={seed}",
        vertex_count=2 * checked,
        edge_count=checked,
        conflict_pairs=tuple(sorted(conflicts)),
        colours_used=0,
        elapsed=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# finite-graph bipartiteness


@dataclass(frozen=True)
class OddCycleSearch:
    """Exactly one of the two fields is set.

    `cycle`: vertex tuples of a shortest odd cycle, closing edge implied.
    `two_colouring`: 0/1 per vertex, parallel to the graph's vertex list.
    """

    cycle: Optional[tuple[Point, ...]]
    two_colouring: Optional[tuple[int, ...]]


def _adjacency(n: int, edges) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[int(u)].append(int(v))
        adj[int(v)].append(int(u))
    return adj


def find_odd_cycle(graph: DistanceGraph) -> OddCycleSearch:
    """Shortest odd cycle by BFS layering, else a 2-colouring witness."""
    n = len(graph.vertices)
    adj = _adjacency(n, graph.edges)
    side = [-1] * n
    bipartite = True
    for root in range(n):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = [root]
        while queue:
            nxt = []
            for u in queue:
                for w in adj[u]:
                    if side[w] < 0:
                        side[w] = side[u] ^ 1
                        nxt.append(w)
                    elif side[w] == side[u]:
                        bipartite = False
            queue = nxt
    if bipartite:
        return OddCycleSearch(cycle=None, two_colouring=tuple(side))

    # shortest odd cycle: one truncated BFS per root; a same-level edge
    # at depth d closes a cycle of length 2*(d - level(lca)) + 1
    best: Optional[list[int]] = None
    for root in range(n):
        depth_cap = (len(best) - 1) // 2 if best is not None else n
        level = {root: 0}
        parent = {root: -1}
        queue = [root]
        d = 0
        while queue and d < depth_cap:
            nxt = []
            for u in queue:
                for w in adj[u]:
                    if w not in level:
                        level[w] = d + 1
                        parent[w] = u
                        nxt.append(w)
            queue = nxt
            d += 1
        for u, v in graph.edges:
            u, v = int(u), int(v)
            if u not in level or level[u] != level.get(v, -1):
                continue
            pu, pv = u, v
            left, right = [pu], [pv]
            while pu != pv:
                pu, pv = parent[pu], parent[pv]
                left.append(pu)
                right.append(pv)
            cycle = left[:-1] + list(reversed(right))
            if best is None or len(cycle) < len(best):
                best = cycle
    assert best is not None and len(best) % 2 == 1
    return OddCycleSearch(
        cycle=tuple(graph.vertices[i] for i in best), two_colouring=None
    )


# ---------------------------------------------------------------------------
# lattice-side breadth-first searches


def signed_permutations(vec: Sequence[int]) -> tuple[Point, ...]:
    """All images of `vec` under coordinate permutations and sign flips."""
    out = set()
    for perm in itertools.permutations(vec):
        for signs in itertools.product((1, -1), repeat=len(vec)):
            out.add(tuple(s * x for s, x in zip(signs, perm)))
    return tuple(sorted(out))


def _pack_array(pts: np.ndarray, offset: int, base: int) -> np.ndarray:
    weights = base ** np.arange(pts.shape[1], dtype=np.int64)
    return (pts.astype(np.int64) + offset) @ weights


def _pack_one(p: Point, offset: int, base: int) -> int:
    return sum((x + offset) * base ** i for i, x in enumerate(p))


def _unpack_array(packed: np.ndarray, dim: int, offset: int,
                  base: int) -> np.ndarray:
    coords = np.empty((packed.shape[0], dim), dtype=np.int64)
    rem = packed.copy()
    for i in range(dim - 1, -1, -1):
        w = base ** i
        coords[:, i] = rem // w
        rem -= coords[:, i] * w
    return coords - offset


def _levels_bfs(dirs: np.ndarray, max_len: int, offset: int,
                stop: Callable[[set, int], bool]) -> list[set]:
    """Level sets of a BFS from the origin with parity-split dedup.

    levels[k] holds packed points first reached at walk length k among
    walks of parity k mod 2, so a point may appear at one even and one
    odd level.  Expansion runs in chunks to bound memory.
    """
    dim = dirs.shape[1]
    base = 2 * offset + 1
    origin = np.zeros((1, dim), dtype=np.int64)
    levels = [set(_pack_array(origin, offset, base).tolist())]
    visited = [set(levels[0]), set()]
    frontier = origin
    for depth in range(1, max_len + 1):
        pieces = []
        for i in range(0, frontier.shape[0], _CHUNK):
            chunk = frontier[i:i + _CHUNK]
            nxt = (chunk[:, None, :] + dirs[None, :, :]).reshape(-1, dim)
            nxt = nxt[np.all(np.abs(nxt) <= offset, axis=1)]
            pieces.append(_pack_array(nxt, offset, base))
        packed = np.unique(np.concatenate(pieces)) if pieces else np.empty(
            0, dtype=np.int64)
        seen = visited[depth % 2]
        if seen:
            seen_arr = np.fromiter(seen, dtype=np.int64, count=len(seen))
            packed = packed[~np.isin(packed, seen_arr)]
        level = set(packed.tolist())
        levels.append(level)
        visited[depth % 2] |= level
        if not level or stop(level, depth):
            return levels
        frontier = _unpack_array(packed, dim, offset, base)
    return levels


def _reconstruct(levels: list[set], end: Point, dirs_sorted: list[Point],
                 offset: int) -> list[Point]:
    """Walk back from `end` at the final level to the origin."""
    dim = len(end)
    base = 2 * offset + 1
    steps: list[Point] = []
    cur = end
    for depth in range(len(levels) - 1, 0, -1):
        for d in dirs_sorted:
            prev = tuple(a - b for a, b in zip(cur, d))
            if (max(abs(x) for x in prev) <= offset
                    and _pack_one(prev, offset, base) in levels[depth - 1]):
                steps.append(d)
                cur = prev
                break
        else:
            raise AssertionError("BFS reconstruction lost its trail")
    steps.reverse()
    return steps


def shortest_odd_closed_walk(diffs: Sequence[Point],
                             max_len: int = 15) -> Optional[list[Point]]:
    """Steps of a shortest odd closed walk through the origin, or None.

    A shortest odd closed walk is automatically a simple cycle: a
    repeated vertex would split off a shorter odd closed walk.  The
    origin can only reappear at odd levels (even-parity dedup holds it
    at level 0), so any reappearance closes an odd walk.
    """
    if not diffs:
        return None
    dirs_sorted = sorted(tuple(d) for d in diffs)
    dirs = np.array(dirs_sorted, dtype=np.int64)
    dim = dirs.shape[1]
    offset = max_len * int(np.abs(dirs).max()) + 1
    base = 2 * offset + 1
    origin_packed = _pack_one((0,) * dim, offset, base)

    levels = _levels_bfs(dirs, max_len, offset,
                         stop=lambda lvl, depth: origin_packed in lvl)
    hit = next((k for k in range(1, len(levels))
                if origin_packed in levels[k]), None)
    if hit is None:
        return None
    assert hit % 2 == 1
    return _reconstruct(levels[: hit + 1], (0,) * dim, dirs_sorted, offset)


@dataclass(frozen=True)
class OddCycleCertificate:
    points: tuple[Point, ...]
    alpha: int
    D: int

    def check(self) -> bool:
        k = len(self.points)
        if k < 3 or k % 2 == 0 or len(set(self.points)) != k:
            return False
        for i in range(k):
            u, v = self.points[i], self.points[(i + 1) % k]
            if sum(abs(a - b) ** self.alpha for a, b in zip(u, v)) != self.D:
                return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "kind": "odd_cycle",
            "alpha": self.alpha,
            "D": self.D,
            "points": [list(p) for p in self.points],
        }


@dataclass(frozen=True)
class ChainCertificate:
    steps: tuple[Point, ...]
    start: Point
    end: Point
    primitive: Point
    length_parity: int

    def points(self) -> list[Point]:
        pts = [self.start]
        for s in self.steps:
            pts.append(tuple(a + b for a, b in zip(pts[-1], s)))
        return pts

    def check(self) -> bool:
        allowed = set(signed_permutations(self.primitive))
        if any(s not in allowed for s in self.steps):
            return False
        if self.points()[-1] != self.end:
            return False
        return self.length_parity == len(self.steps) % 2

    def translated(self, offset: Point) -> "ChainCertificate":
        def shift(p):
            return tuple(a + b for a, b in zip(p, offset))

        return ChainCertificate(self.steps, shift(self.start), shift(self.end),
                                self.primitive, self.length_parity)

    def scaled(self, factor: int) -> "ChainCertificate":
        def mul(p):
            return tuple(factor * a for a in p)

        return ChainCertificate(tuple(mul(s) for s in self.steps),
                                mul(self.start), mul(self.end),
                                mul(self.primitive), self.length_parity)

    def to_json_dict(self) -> dict:
        return {
            "kind": "chain",
            "primitive": list(self.primitive),
            "start": list(self.start),
            "end": list(self.end),
            "steps": [list(s) for s in self.steps],
            "length_parity": self.length_parity,
        }


def find_chain(primitive: Point, target: Point, max_len: int,
               parity: Optional[int] = None) -> Optional[ChainCertificate]:
    """Chain from the origin to `target` whose steps are signed
    coordinate permutations of `primitive`.

    Requires dimension 3, gcd 1 and even coordinate sum for the
    primitive.  With `parity` set, only chains of that length parity
    are considered (shortest such within `max_len`).  Absence within
    the step budget never claims nonexistence.
    """
    primitive = tuple(primitive)
    target = tuple(target)
    if len(primitive) != 3 or len(target) != 3:
        raise ValueError("chains live in dimension 3")
    if gcd(*primitive) != 1:
        raise ValueError("primitive coordinates must have gcd 1")
    if sum(primitive) % 2 != 0:
        raise ValueError("primitive must have even coordinate sum")
    if parity not in (None, 0, 1):
        raise ValueError("parity must be 0, 1 or None")
    if sum(target) % 2 != 0:
        # steps preserve the even-coordinate-sum sublattice
        return None

    dirs_sorted = list(signed_permutations(primitive))
    dirs = np.array(dirs_sorted, dtype=np.int64)
    span = max(max(abs(x) for x in primitive), max(abs(x) for x in target), 1)
    offset = max_len * span + 1
    base = 2 * offset + 1
    target_packed = _pack_one(target, offset, base)

    levels = _levels_bfs(
        dirs, max_len, offset,
        stop=lambda lvl, depth: target_packed in lvl
        and (parity is None or depth % 2 == parity),
    )
    hit = next(
        (k for k in range(1, len(levels))
         if target_packed in levels[k]
         and (parity is None or k % 2 == parity)),
        None,
    )
    if hit is None:
        return None
    steps = _reconstruct(levels[: hit + 1], target, dirs_sorted, offset)
    return ChainCertificate(
        steps=tuple(steps),
        start=(0, 0, 0),
        end=target,
        primitive=primitive,
        length_parity=len(steps) % 2,
    )


# ---------------------------------------------------------------------------
# 2-colourability of the dimension-3 lattice for even forbidden values


@dataclass(frozen=True)
class TwoColourabilityVerdict:
    status: str  # "NOT_2_COLOURABLE" or "UNKNOWN"
    D: int
    reduced: int
    scale: int
    certificate: Optional[OddCycleCertificate]

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "D": self.D,
            "reduced": self.reduced,
            "scale": self.scale,
            "certificate": None if self.certificate is None
            else self.certificate.to_json_dict(),
        }


def two_colourability_verdict(D: int, max_len: int = 15) -> TwoColourabilityVerdict:
    """Constructive non-2-colourability in dimension 3 for even D.

    Strips factors of 4, searches for a shortest odd closed walk at the
    reduced value, and scales the resulting cycle back up.  A reduced
    value that is odd, or a failed bounded search, yields UNKNOWN: the
    search never claims 2-colourability.
    """
    if D <= 0 or D % 2 != 0:
        raise ValueError("verdict applies to even forbidden values only")
    if not difference_vectors(3, 2, D):
        raise ValueError("forbidden value admits no difference vectors")
    reduced, scale = D, 1
    while reduced % 4 == 0:
        reduced //= 4
        scale *= 2
    if reduced % 2 != 0:
        return TwoColourabilityVerdict("UNKNOWN", D, reduced, scale, None)
    steps = shortest_odd_closed_walk(difference_vectors(3, 2, reduced), max_len)
    if steps is None:
        return TwoColourabilityVerdict("UNKNOWN", D, reduced, scale, None)
    pts = [(0, 0, 0)]
    for s in steps[:-1]:
        pts.append(tuple(a + b for a, b in zip(pts[-1], s)))
    shift = [min(p[i] for p in pts) for i in range(3)]
    pts = [tuple(scale * (a - b) for a, b in zip(p, shift)) for p in pts]
    cert = OddCycleCertificate(points=tuple(pts), alpha=2, D=D)
    assert cert.check()
    return TwoColourabilityVerdict("NOT_2_COLOURABLE", D, reduced, scale, cert)


# ---------------------------------------------------------------------------
# replay


def replay_certificate(obj: dict) -> tuple[bool, str]:
    """Re-check a serialised certificate edge by edge."""
    kind = obj.get("kind")
    if kind == "odd_cycle":
        cert = OddCycleCertificate(
            points=tuple(tuple(p) for p in obj["points"]),
            alpha=int(obj["alpha"]),
            D=int(obj["D"]),
        )
        if cert.check():
            return True, f"odd cycle of length {len(cert.points)} verified"
        return False, "odd cycle failed edge or parity re-check"
    if kind == "chain":
        cert = ChainCertificate(
            steps=tuple(tuple(s) for s in obj["steps"]),
            start=tuple(obj["start"]),
            end=tuple(obj["end"]),
            primitive=tuple(obj["primitive"]),
            length_parity=int(obj["length_parity"]),
        )
        if cert.check():
            return True, f"chain of length {len(cert.steps)} verified"
        return False, "chain failed signed-permutation or telescoping re-check"
    return False, f"unknown certificate kind {kind!r}"
