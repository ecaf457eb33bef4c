"""Lower-bound machinery and exact solvers.

Exact chromatic and independence numbers on desk-scale graphs, critical
configuration ratios (triples and Frankl-Wilson), the dimension-3
spindle family driven by Eisenstein witnesses, and the even-value
status scan that cross-checks every claim against a certificate.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Optional

from . import kernels
from .lattice import DistanceGraph, build_hamming_slice_graph, difference_vectors
from .numtheory import (
    all_eisenstein_witnesses,
    eisenstein_witness,
    is_prime_power,
    is_sum_of_three_squares,
)
from .verify import (
    ChainCertificate,
    find_chain,
    signed_permutations,
    two_colourability_verdict,
)

Point = tuple

DEFAULT_SOLVER_CAP = 60


class SolverCapExceeded(RuntimeError):
    """The graph is larger than the exact-solver vertex budget."""


def _solver_cap(cap: Optional[int]) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("LATCOLOR_SOLVER_CAP")
    return int(env) if env else DEFAULT_SOLVER_CAP


def exact_chromatic(graph: DistanceGraph, limit: Optional[int] = None,
                    cap: Optional[int] = None) -> Optional[int]:
    """Exact chromatic number, or None when it exceeds `limit`."""
    n = graph.n_vertices
    budget = _solver_cap(cap)
    if n > budget:
        raise SolverCapExceeded(f"{n} vertices, solver cap is {budget}")
    chi, _ = kernels.dsatur_chromatic(n, graph.edges)
    if limit is not None and chi > limit:
        return None
    return chi


def exact_independence(graph: DistanceGraph, cap: Optional[int] = None) -> int:
    """Exact maximum independent set size."""
    n = graph.n_vertices
    budget = _solver_cap(cap)
    if n > budget:
        raise SolverCapExceeded(f"{n} vertices, solver cap is {budget}")
    size, _ = kernels.max_independent_set(n, graph.edges)
    return size


# ---------------------------------------------------------------------------
# critical configurations


@dataclass(frozen=True)
class CriticalConfiguration:
    """M points whose independent subsets have size at most D_bound."""

    kind: str
    n: int
    weight: int
    forbidden_intersection: int
    M: int
    D_bound: int
    ratio: Fraction

    def graph(self) -> DistanceGraph:
        return build_hamming_slice_graph(self.n, self.weight,
                                         self.forbidden_intersection)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "weight": self.weight,
            "forbidden_intersection": self.forbidden_intersection,
            "M": self.M,
            "D_bound": self.D_bound,
            "ratio": [self.ratio.numerator, self.ratio.denominator],
        }


def triple_configuration(n: int) -> CriticalConfiguration:
    """All weight-3 vectors; forbidden pairs share exactly one coordinate
    (squared distance 4), so an independent family has size at most n."""
    if n < 4:
        raise ValueError("need n >= 4")
    return CriticalConfiguration(
        kind="triple",
        n=n,
        weight=3,
        forbidden_intersection=1,
        M=comb(n, 3),
        D_bound=n,
        ratio=Fraction(comb(n, 3), n),
    )


def triple_configuration_bound(n: int, validate: Optional[bool] = None) -> Fraction:
    """The ratio C(n,3)/n; for n <= 9 the denominator is solver-checked."""
    config = triple_configuration(n)
    if validate is None:
        validate = n <= 9
    if validate:
        g = config.graph()
        alpha = exact_independence(g, cap=g.n_vertices)
        if alpha > config.D_bound:
            raise AssertionError(
                f"independence {alpha} exceeds the claimed bound {n}")
    return config.ratio


def frankl_wilson_configuration(n: int, p: int) -> CriticalConfiguration:
    if is_prime_power(p) is None:
        raise ValueError("p must be a prime power")
    if n < 2 * p - 1:
        raise ValueError("need n >= 2p - 1")
    return CriticalConfiguration(
        kind="frankl-wilson",
        n=n,
        weight=2 * p - 1,
        forbidden_intersection=p - 1,
        M=comb(n, 2 * p - 1),
        D_bound=comb(n, p - 1),
        ratio=Fraction(comb(n, 2 * p - 1), comb(n, p - 1)),
    )


def frankl_wilson_bound(n: int, p: int) -> Fraction:
    """Exact binomial ratio C(n, 2p-1) / C(n, p-1) for prime-power p."""
    return frankl_wilson_configuration(n, p).ratio


# ---------------------------------------------------------------------------
# spindles


def _norm(p: Point, alpha: int = 2) -> int:
    return sum(abs(x) ** alpha for x in p)


def _sub(u: Point, v: Point) -> Point:
    return tuple(a - b for a, b in zip(u, v))


def _canonical_isometries():
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            yield perm, signs


def _apply(iso, p: Point) -> Point:
    perm, signs = iso
    return tuple(s * p[i] for s, i in zip(signs, perm))


@dataclass(frozen=True)
class SpindleCertificate:
    """Seven points: two rigid triangle pairs sharing the apex, plus a
    bridge between the tips.

    The bridge is a direct forbidden-distance edge, a chain certificate
    whose primitive is the tip displacement, or conditional when neither
    was found within bounds (the implied bound then rests on unproven
    chain existence)."""

    points: tuple[Point, ...]  # A, B, C, D, B', C', D'
    alpha: int
    forbidden: int
    m: int
    witness: Optional[tuple[int, int]]
    bridge_kind: str  # "edge" | "chain" | "conditional"
    chain: Optional[ChainCertificate]
    implied_bound: int
    conditional: bool
    scale: int
    note: str = ""

    def to_json_dict(self) -> dict:
        return {
            "kind": "spindle",
            "alpha": self.alpha,
            "forbidden": self.forbidden,
            "m": self.m,
            "witness": list(self.witness) if self.witness else None,
            "points": [list(p) for p in self.points],
            "bridge_kind": self.bridge_kind,
            "chain": self.chain.to_json_dict() if self.chain else None,
            "implied_bound": self.implied_bound,
            "conditional": self.conditional,
            "scale": self.scale,
            "note": self.note,
        }


def verify_spindle(cert: SpindleCertificate) -> bool:
    """Re-check every triangle edge and the bridge from the data alone."""
    if len(cert.points) != 7:
        return False
    a, b, c, d, bp, cp, dp = cert.points
    tri = [(a, b), (a, c), (b, c), (b, d), (c, d),
           (a, bp), (a, cp), (bp, cp), (bp, dp), (cp, dp)]
    if any(_norm(_sub(u, v), cert.alpha) != cert.forbidden for u, v in tri):
        return False
    if cert.bridge_kind == "edge":
        return _norm(_sub(d, dp), cert.alpha) == cert.forbidden
    if cert.bridge_kind == "chain":
        ch = cert.chain
        if ch is None or not ch.check():
            return False
        if tuple(ch.primitive) != _sub(dp, d):
            return False
        return _norm(ch.end, cert.alpha) == cert.forbidden
    return cert.bridge_kind == "conditional"


def spindle_from_json(obj: dict) -> SpindleCertificate:
    chain = None
    if obj.get("chain"):
        ch = obj["chain"]
        chain = ChainCertificate(
            steps=tuple(tuple(s) for s in ch["steps"]),
            start=tuple(ch["start"]),
            end=tuple(ch["end"]),
            primitive=tuple(ch["primitive"]),
            length_parity=int(ch["length_parity"]),
        )
    return SpindleCertificate(
        points=tuple(tuple(p) for p in obj["points"]),
        alpha=int(obj["alpha"]),
        forbidden=int(obj["forbidden"]),
        m=int(obj["m"]),
        witness=tuple(obj["witness"]) if obj.get("witness") else None,
        bridge_kind=obj["bridge_kind"],
        chain=chain,
        implied_bound=int(obj["implied_bound"]),
        conditional=bool(obj["conditional"]),
        scale=int(obj["scale"]),
        note=obj.get("note", ""),
    )


def _spindle_triangle(a: int, b: int):
    A = (0, 0, 0)
    B = (a, b, a + b)
    C = (-b, a + b, a)
    D = (a - b, a + 2 * b, 2 * a + b)
    return A, B, C, D


def _witness_orbit(w: tuple[int, int]) -> frozenset:
    # unit rotations (a,b) -> (-b, a+b) and the swap (a,b) -> (b,a) generate
    # the isometry classes of witness triangles; at most 12 pairs per orbit
    orbit = {w}
    frontier = [w]
    while frontier:
        a, b = frontier.pop()
        for img in ((-b, a + b), (b, a)):
            if img not in orbit:
                orbit.add(img)
                frontier.append(img)
    return frozenset(orbit)


def _witnesses_in_order(m: int):
    """One representative per isometry orbit, canonical witness first."""
    canonical = eisenstein_witness(m)
    out = []
    taken: set = set()
    if canonical is not None:
        out.append((canonical.a, canonical.b))
        taken |= _witness_orbit(out[0])
    rest = sorted(((w.a, w.b) for w in all_eisenstein_witnesses(m)),
                  key=lambda w: (w[0] < 0 or w[1] < 0, w))
    for w in rest:
        if w not in taken:
            out.append(w)
            taken |= _witness_orbit(w)
    return out


def _first_isometry_with_image(src: Point, image: Point):
    for iso in _canonical_isometries():
        if _apply(iso, src) == image:
            return iso
    raise AssertionError("image is not a signed permutation of the source")


def _scaled_spindle(sub: SpindleCertificate, s: int, m: int) -> SpindleCertificate:
    mul = lambda p: tuple(s * x for x in p)
    return SpindleCertificate(
        points=tuple(mul(p) for p in sub.points),
        alpha=sub.alpha,
        forbidden=sub.forbidden * s * s,
        m=m,
        witness=None if sub.witness is None
        else (s * sub.witness[0], s * sub.witness[1]),
        bridge_kind=sub.bridge_kind,
        chain=sub.chain.scaled(s) if sub.chain else None,
        implied_bound=sub.implied_bound,
        conditional=sub.conditional,
        scale=s * sub.scale,
        note=(sub.note + "; " if sub.note else "")
        + f"scaled by {s} from the m={sub.m} certificate",
    )


@lru_cache(maxsize=None)
def construct_spindle_z3(m: int, max_len: int = 12) -> Optional[SpindleCertificate]:
    """Spindle for forbidden value 2m from an Eisenstein witness of m.

    Bridge preference: a direct edge between tip images under signed
    permutations, else the shortest chain bridge over all unit-gcd tip
    displacements (iterative deepening, ties by smaller displacement),
    else recursion through square factors, else a conditional
    certificate.  Returns None when m has no witness.
    """
    wits = _witnesses_in_order(m)
    if not wits:
        return None
    forbidden = 2 * m

    def build(wit, gD, bridge_kind, chain, conditional, note=""):
        A, B, C, D = _spindle_triangle(*wit)
        iso = _first_isometry_with_image(D, gD)
        return SpindleCertificate(
            points=(A, B, C, D, _apply(iso, B), _apply(iso, C), gD),
            alpha=2,
            forbidden=forbidden,
            m=m,
            witness=wit,
            bridge_kind=bridge_kind,
            chain=chain,
            implied_bound=4,
            conditional=conditional,
            scale=1,
            note=note,
        )

    # 1. direct edge between tip images
    for wit in wits:
        _, _, _, D = _spindle_triangle(*wit)
        for gD in signed_permutations(D):
            if gD != D and _norm(_sub(gD, D)) == forbidden:
                return build(wit, gD, "edge", None, False)

    # 2. chain bridges: shortest wins, ties broken by witness preference,
    #    then by smaller and lexicographically earlier displacement
    candidates = []
    for wi, wit in enumerate(wits):
        _, B, _, D = _spindle_triangle(*wit)
        for gD in signed_permutations(D):
            v = _sub(gD, D)
            if gD == D or gcd(*v) != 1:
                continue
            candidates.append((wi, _norm(v), v, wit, B, gD))
    candidates.sort(key=lambda t: t[:3])
    for length in range(1, max_len + 1):
        for _, nv, v, wit, B, gD in candidates:
            # L steps of norm nv cannot reach farther than L*sqrt(nv)
            if length * length * nv < forbidden:
                continue
            if length * max(map(abs, v)) < max(map(abs, B)):
                continue
            chain = find_chain(v, B, length)
            if chain is not None and len(chain.steps) == length:
                return build(wit, gD, "chain", chain, False)

    # 3. recurse through square factors
    for s in (2, 3, 5, 7):
        if m % (s * s) == 0:
            sub = construct_spindle_z3(m // (s * s), max_len)
            if sub is not None:
                return _scaled_spindle(sub, s, m)

    # 4. conditional: report the preferred displacement without a chain
    if candidates:
        _, _, v, wit, _, gD = candidates[0]
        return build(wit, gD, "conditional", None, True,
                     note=f"no bridge chain within {max_len} steps")
    wit = wits[0]
    _, _, _, D = _spindle_triangle(*wit)
    gD = next(g for g in signed_permutations(D) if g != D)
    return build(wit, gD, "conditional", None, True,
                 note="every tip displacement has gcd > 1")


def search_spindle(dim: int, alpha: int, D: int,
                   radius: int) -> Optional[SpindleCertificate]:
    """Exhaustive search for a seven-point spindle with a direct edge
    bridge inside the coordinate box [-radius, radius]^dim.

    Deterministic: the lexicographically first certificate wins."""
    vecs = [v for v in difference_vectors(dim, alpha, D)
            if all(abs(x) <= radius for x in v)]
    vecset = set(vecs)
    rhombi = []
    for i, B in enumerate(vecs):
        for C in vecs[i + 1:]:
            if _sub(B, C) not in vecset:
                continue
            tip = tuple(b + c for b, c in zip(B, C))
            if all(abs(x) <= radius for x in tip):
                rhombi.append((B, C, tip))
    for i, (B, C, tip) in enumerate(rhombi):
        for Bp, Cp, tip2 in rhombi[i + 1:]:
            if _norm(_sub(tip, tip2), alpha) != D:
                continue
            return SpindleCertificate(
                points=((0,) * dim, B, C, tip, Bp, Cp, tip2),
                alpha=alpha,
                forbidden=D,
                m=D // 2 if alpha == 2 and D % 2 == 0 else 0,
                witness=None,
                bridge_kind="edge",
                chain=None,
                implied_bound=4,
                conditional=False,
                scale=1,
                note=f"box search, radius {radius}",
            )
    return None


# ---------------------------------------------------------------------------
# even-value status scan


def _reduce_by_four(D: int) -> tuple[int, int]:
    reduced, scale = D, 1
    while reduced % 4 == 0:
        reduced //= 4
        scale *= 2
    return reduced, scale


def classify_even(D: int, walk_max_len: int = 15,
                  chain_max_len: int = 12) -> dict:
    """Status row for an even forbidden value in dimension 3.

    Statuses: "=1" (no realising vectors), "=2" (odd reduced value:
    bipartite via parity), "=3" (odd cycle plus the 3-colour scheme),
    ">=4" (spindle; conditional bridges flagged), "open" (neither the
    3-colour residue class nor the spindle family applies)."""
    if D <= 0 or D % 2 != 0:
        raise ValueError("classification covers even values")
    reduced, scale = _reduce_by_four(D)
    row: dict = {"D": D, "reduced": reduced, "scale": scale,
                 "conditional": False}
    if not is_sum_of_three_squares(reduced):
        row["status"] = "=1"
        row["evidence"] = {"reason": "no difference vectors at any scale"}
        return row
    if reduced % 2 == 1:
        row["status"] = "=2"
        row["evidence"] = {
            "upper": "parity scheme on the reduced value, 2 colours",
            "lower": "edge set is nonempty",
        }
        return row
    verdict = two_colourability_verdict(D, max_len=walk_max_len)
    cycle = verdict.certificate
    lower3 = {"odd_cycle_length": None if cycle is None else len(cycle.points)}
    if cycle is not None:
        lower3["certificate"] = cycle.to_json_dict()
    if reduced % 12 == 10 and cycle is not None:
        row["status"] = "=3"
        row["evidence"] = {
            "upper": "mod-6 scheme, 3 colours",
            "lower": lower3,
        }
        return row
    spindle = construct_spindle_z3(reduced // 2, max_len=chain_max_len)
    if spindle is not None:
        row["status"] = ">=4"
        row["conditional"] = spindle.conditional
        row["evidence"] = {
            "upper": "universal scheme, 4 colours",
            "lower": {
                "spindle_bridge": spindle.bridge_kind,
                "spindle_scale": spindle.scale,
                "certificate": spindle.to_json_dict(),
            },
        }
        return row
    row["status"] = "open"
    row["evidence"] = {
        "upper": "universal scheme, 4 colours",
        "lower": lower3,
        "reason": "no 3-colour residue class and no Eisenstein witness",
    }
    return row


def conjecture_scan(m_max: int, walk_max_len: int = 15,
                    chain_max_len: int = 12) -> list[dict]:
    """Status rows for every even D up to m_max (desk scale)."""
    if m_max > 200:
        raise ValueError("scan is desk-scale: m_max <= 200")
    return [classify_even(D, walk_max_len, chain_max_len)
            for D in range(2, m_max + 1, 2)]
