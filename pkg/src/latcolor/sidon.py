"""Sidon-type sets in finite abelian groups and their violation checkers.

A B_m set has no nontrivial solution of a_1+...+a_m = a_{m+1}+...+a_{2m};
trivial means the two sides coincide as multisets. The generalised checks
(GSIDON, GGSIDON) take signed coefficient vectors over distinct elements.
Everything is exhaustive and deterministic: searches report the
lexicographically smallest violation or None.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from latcolor.numtheory import primitive_root

SIDON = "SIDON"
GSIDON = "GSIDON"
GGSIDON = "GGSIDON"


@dataclass(frozen=True)
class CyclicProductGroup:
    """Direct product of cyclic groups Z_m1 x ... x Z_mk."""

    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.moduli or any(m < 1 for m in self.moduli):
            raise ValueError("moduli must be positive")

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        n = 1
        for m in self.moduli:
            n *= m
        return n

    def reduce(self, x) -> tuple[int, ...]:
        return tuple(int(c) % m for c, m in zip(x, self.moduli))

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def scale(self, k: int, a) -> tuple[int, ...]:
        return tuple((k * x) % m for x, m in zip(a, self.moduli))

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank


@dataclass(frozen=True)
class SidonSystem:
    """Distinguished elements of a group, with their claimed B_m order.

    integer_lift carries the elements as plain integers when the system came
    from a one-dimensional construction (required by shift_and_extend).
    """

    group: CyclicProductGroup
    elements: tuple[tuple[int, ...], ...]
    order_m: int
    integer_lift: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("elements must be pairwise distinct")
        if self.integer_lift is not None and len(self.integer_lift) != len(
            self.elements
        ):
            raise ValueError("integer_lift length mismatch")

    @property
    def n(self) -> int:
        return len(self.elements)

    def to_json_dict(self) -> dict:
        out = {
            "moduli": list(self.group.moduli),
            "elements": [list(e) for e in self.elements],
            "order_m": self.order_m,
        }
        if self.integer_lift is not None:
            out["integer_lift"] = list(self.integer_lift)
        return out


@dataclass(frozen=True)
class EquationInstance:
    """A vanishing combination sum coefficients[i] * elements[assignment[i]]."""

    kind: str
    coefficients: tuple[int, ...]
    assignment: tuple[int, ...]


def paper_sidon_m2(p: int) -> SidonSystem:
    """The exponential set {(k, a^k mod p) : k = 1..p-1} in Z_{p-1} x Z_p.

    a is the smallest primitive root. The first coordinate lives mod p-1
    (the order of a): with modulus p instead, wraparound creates difference
    collisions among four distinct elements from p = 7 on, e.g.
    (1,3)-(4,4) = (6,1)-(2,2) in Z_7 x Z_7. In Z_{p-1} x Z_p any four
    distinct elements have pairwise distinct differences.
    """
    if p < 3:
        raise ValueError("p must be a prime >= 3")
    a = primitive_root(p)
    elements = tuple((k, pow(a, k, p)) for k in range(1, p))
    return SidonSystem(CyclicProductGroup((p - 1, p)), elements, order_m=2)


def paper_shifted_embedding(p: int) -> SidonSystem:
    """The spaced set {(4k-3, a^k mod p)} inside Z_{16p+1} x Z_{4p+1}.

    The spacing keeps every signed quadruple sum inside (-16p, 16p) in the
    first coordinate and (-4p, 4p) in the second, so vanishing in the group
    is vanishing over Z.
    """
    if p < 3:
        raise ValueError("p must be a prime >= 3")
    a = primitive_root(p)
    elements = tuple((4 * k - 3, pow(a, k, p)) for k in range(1, p))
    return SidonSystem(
        CyclicProductGroup((16 * p + 1, 4 * p + 1)), elements, order_m=2
    )


def _multiset_sums_distinct(xs: list[int], m: int) -> bool:
    sums = [sum(c) for c in itertools.combinations_with_replacement(xs, m)]
    return len(sums) == len(set(sums))


def greedy_bm_set(n: int, m: int) -> SidonSystem:
    """Greedy B_m set of n nonnegative integers (Mian-Chowla style).

    Starts at 0 and keeps the smallest integer that leaves all m-element
    multiset sums distinct. Solution-free by construction; packaged in the
    cyclic group of order 2*(m+1)*max+1 so the integers represent themselves.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1, m >= 1")
    xs: list[int] = [0]
    candidate = 1
    while len(xs) < n:
        if _multiset_sums_distinct(xs + [candidate], m):
            xs.append(candidate)
        candidate += 1
    modulus = 2 * (m + 1) * max(xs) + 1
    return SidonSystem(
        CyclicProductGroup((modulus,)),
        tuple((x,) for x in xs),
        order_m=m,
        integer_lift=tuple(xs),
    )


def shift_and_extend(s: SidonSystem, m: int) -> SidonSystem:
    """Shift an integer system so min/max > (m-2)/m, re-house in Z_{2f}.

    shift is the minimal integer making the ratio strict with min >= 1;
    f = (shifted max)*(m+1)+1 strictly exceeds (m+1) times the max element.
    """
    if s.integer_lift is not None:
        xs = list(s.integer_lift)
    elif s.group.rank == 1:
        xs = [e[0] for e in s.elements]
    else:
        raise ValueError("system has no one-dimensional integer lift")
    lo, hi = min(xs), max(xs)
    # smallest t with m*(lo+t) > (m-2)*(hi+t), i.e. 2t > (m-2)*hi - m*lo
    t = ((m - 2) * hi - m * lo) // 2 + 1
    t = max(t, 1 - lo)
    shifted = [x + t for x in xs]
    f = max(shifted) * (m + 1) + 1
    return SidonSystem(
        CyclicProductGroup((2 * f,)),
        tuple((x % (2 * f),) for x in shifted),
        order_m=m,
        integer_lift=tuple(shifted),
    )


def _group_combination(s: SidonSystem, coeffs, indices) -> tuple[int, ...]:
    acc = s.group.zero
    for c, i in zip(coeffs, indices):
        acc = s.group.add(acc, s.group.scale(c, s.elements[i]))
    return acc


def _sidon_violation(s: SidonSystem) -> EquationInstance | None:
    m = s.order_m
    idx = range(s.n)
    for left in itertools.combinations_with_replacement(idx, m):
        for right in itertools.combinations_with_replacement(idx, m):
            if sorted(left) == sorted(right):
                continue  # trivial: both sides the same multiset
            val = _group_combination(s, (1,) * m + (-1,) * m, left + right)
            if val == s.group.zero:
                return EquationInstance(SIDON, (1,) * m + (-1,) * m, left + right)
    return None


def _signed_vectors(total: int, length: int):
    """Nonzero-coefficient vectors of the given length with sum |c_i| = total,
    in lexicographic order."""
    if length == 0:
        if total == 0:
            yield ()
        return
    for first_abs in range(1, total - length + 2):
        for sign in (-1, 1):
            for rest in _signed_vectors(total - first_abs, length - 1):
                yield (sign * first_abs,) + rest


def _general_violation(
    s: SidonSystem, kind: str, coeff_bound: int
) -> EquationInstance | None:
    """First violation in the canonical enumeration order (k, mass, coeffs,
    indices, each ascending); deterministic by construction."""
    m = s.order_m
    for k in range(1, min(coeff_bound, s.n) + 1):
        for total in range(k, coeff_bound + 1):
            if total % 2:
                continue  # both families require even coefficient mass
            for coeffs in _signed_vectors(total, k):
                csum = sum(coeffs)
                if kind == GSIDON and (csum != 0 or total >= 2 * m):
                    continue
                if kind == GGSIDON and csum == 0:
                    continue
                for indices in itertools.combinations(range(s.n), k):
                    if _group_combination(s, coeffs, indices) == s.group.zero:
                        return EquationInstance(kind, coeffs, indices)
    return None


def find_equation_violation(
    s: SidonSystem, kinds, coeff_bound: int = 8
) -> EquationInstance | None:
    """Smallest nontrivial vanishing instance among the requested kinds, or None."""
    hits = []
    for kind in sorted(kinds):
        if kind == SIDON:
            hit = _sidon_violation(s)
        elif kind in (GSIDON, GGSIDON):
            hit = _general_violation(s, kind, coeff_bound)
        else:
            raise ValueError(f"unknown equation kind {kind!r}")
        if hit is not None:
            hits.append(hit)
    if not hits:
        return None
    return min(hits, key=lambda e: (e.assignment, e.coefficients, e.kind))


def has_distinct_difference_property(s: SidonSystem) -> bool:
    """True iff a-b != c-d in the group for all four pairwise distinct elements."""
    seen: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for i in range(s.n):
        for j in range(s.n):
            if i == j:
                continue
            d = s.group.add(s.elements[i], s.group.scale(-1, s.elements[j]))
            for (a, b) in seen.get(d, ()):
                if len({a, b, i, j}) == 4:
                    return False
            seen.setdefault(d, []).append((i, j))
    return True


@dataclass(frozen=True)
class EmbeddingLemmaReport:
    holds: bool
    first_coordinate_bound: int
    second_coordinate_bound: int
    violation: tuple[tuple[int, ...], tuple[int, ...]] | None  # (signs, indices)


def check_embedding_lemma(s: SidonSystem, p: int) -> EmbeddingLemmaReport:
    """Exhaustively confirm: no four distinct elements admit a vanishing
    signed sum, and all signed quadruple sums stay within (16p, 4p) bounds."""
    max1 = max2 = 0
    violation = None
    for indices in itertools.combinations(range(s.n), 4):
        pts = [s.elements[i] for i in indices]
        for signs in itertools.product((1, -1), repeat=4):
            x = sum(sg * pt[0] for sg, pt in zip(signs, pts))
            y = sum(sg * pt[1] for sg, pt in zip(signs, pts))
            max1 = max(max1, abs(x))
            max2 = max(max2, abs(y))
            if s.group.reduce((x, y)) == s.group.zero and violation is None:
                violation = (signs, indices)
    holds = violation is None and max1 <= 16 * p and max2 <= 4 * p
    return EmbeddingLemmaReport(holds, max1, max2, violation)
