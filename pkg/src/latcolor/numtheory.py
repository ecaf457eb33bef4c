"""Elementary number theory behind the lattice colourings.

Everything here is desk scale (inputs up to about 10**9), so the plain tools
are the right ones: trial division, explicit bounded searches, exact integer
arithmetic. No probabilistic shortcuts; absence results are exhaustive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> dict[int, int]:
    """Factorisation by trial division, as {prime: exponent}."""
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_sum_of_two_squares(k: int) -> bool:
    """True iff k = x^2 + y^2 has an integer solution.

    Classical criterion: every prime factor congruent to 3 mod 4 occurs to an
    even power. k = 0 counts (0 = 0 + 0).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return True
    return all(e % 2 == 0 for p, e in prime_factors(k).items() if p % 4 == 3)


def is_sum_of_three_squares(k: int) -> bool:
    """True iff k = x^2 + y^2 + z^2, i.e. k is not of the form 4^a(8b+7)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    while k % 4 == 0 and k > 0:
        k //= 4
    return k % 8 != 7


def has_primitive_three_square_representation(k: int) -> bool:
    """True iff k = x^2+y^2+z^2 with gcd(x, y, z) = 1 (k mod 8 in {1,2,3,5,6})."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return k % 8 in (1, 2, 3, 5, 6)


def three_square_representations(k: int) -> list[tuple[int, int, int]]:
    """All x >= y >= z >= 0 with x^2 + y^2 + z^2 = k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    reps = []
    for x in range(math.isqrt(k), -1, -1):
        r1 = k - x * x
        for y in range(min(x, math.isqrt(r1)), -1, -1):
            r2 = r1 - y * y
            z = math.isqrt(r2)
            if z * z == r2 and z <= y:
                reps.append((x, y, z))
    return sorted(reps)


@dataclass(frozen=True)
class Decomposition:
    """A multiset of nonzero signed integers with sum |c_i|^alpha = target.

    Canonical form: coefficients sorted by decreasing |c|, positives before
    negatives among equal magnitudes. Zero coefficients are never stored.
    """

    coefficients: tuple[int, ...]
    alpha: int
    target: int

    def __post_init__(self) -> None:
        if any(c == 0 for c in self.coefficients):
            raise ValueError("zero coefficients are not stored")
        if sum(abs(c) ** self.alpha for c in self.coefficients) != self.target:
            raise ValueError("coefficients do not hit the target")

    @property
    def length(self) -> int:
        return len(self.coefficients)


def _magnitude_multisets(D: int, alpha: int, max_len: int) -> list[tuple[int, ...]]:
    """Non-increasing tuples of magnitudes m with sum m^alpha = D, len <= max_len."""
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, cap: int, slots: int, acc: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(acc))
            return
        if slots == 0:
            return
        m = min(cap, _root_floor(remaining, alpha))
        while m >= 1:
            acc.append(m)
            rec(remaining - m**alpha, m, slots - 1, acc)
            acc.pop()
            m -= 1

    rec(D, D if alpha == 1 else _root_floor(D, alpha), max_len, [])
    return out


def _root_floor(n: int, alpha: int) -> int:
    if alpha == 1:
        return n
    if alpha == 2:
        return math.isqrt(n)
    r = round(n ** (1.0 / alpha))
    while r**alpha > n:
        r -= 1
    while (r + 1) ** alpha <= n:
        r += 1
    return r


@lru_cache(maxsize=4096)
def decompositions(D: int, alpha: int = 2, max_len: int = 8) -> tuple[Decomposition, ...]:
    """All canonical signed decompositions of D into at most max_len powers.

    Signs are enumerated per magnitude group: a group of k equal magnitudes
    contributes k+1 canonical sign patterns (j minus signs, j = 0..k).
    D = 0 yields exactly the empty decomposition.
    """
    if D < 0 or alpha < 1 or max_len < 0:
        raise ValueError("need D >= 0, alpha >= 1, max_len >= 0")
    results: list[Decomposition] = []
    for mags in _magnitude_multisets(D, alpha, max_len):
        groups: list[tuple[int, int]] = []
        for m in mags:
            if groups and groups[-1][0] == m:
                groups[-1] = (m, groups[-1][1] + 1)
            else:
                groups.append((m, 1))
        signed: list[list[int]] = [[]]
        for m, k in groups:
            nxt = []
            for prefix in signed:
                for minus in range(k + 1):
                    nxt.append(prefix + [m] * (k - minus) + [-m] * minus)
            signed = nxt
        for coeffs in signed:
            results.append(Decomposition(tuple(coeffs), alpha, D))
    results.sort(key=lambda d: d.coefficients)
    return tuple(results)


MOD6_ADMISSIBLE_TRIPLES = frozenset(
    {(0, 1, 3), (0, 3, 5), (2, 3, 3), (3, 3, 4)}
)


def mod6_residue_classes(m: int) -> set[tuple[int, int, int]]:
    """Sorted mod-6 residue triples of the three-square representations of m.

    Intended for m ≡ 10 (mod 12), where every representation lands in
    MOD6_ADMISSIBLE_TRIPLES; computed for any representable m.
    """
    return {
        tuple(sorted((x % 6, y % 6, z % 6)))
        for (x, y, z) in three_square_representations(m)
    }


@dataclass(frozen=True)
class EisensteinWitness:
    """A pair (a, b) with a^2 + ab + b^2 = m."""

    a: int
    b: int
    m: int

    def __post_init__(self) -> None:
        if self.a * self.a + self.a * self.b + self.b * self.b != self.m:
            raise ValueError("not a witness")


def eisenstein_bound(m: int) -> int:
    """Any witness of m has |a|, |b| <= ceil(sqrt(4m/3))."""
    return math.isqrt((4 * m) // 3) + 1


def eisenstein_witness(m: int) -> EisensteinWitness | None:
    """First (a, b), a >= 1, b >= 0 with a^2+ab+b^2 = m, scanning a then b.

    Nonnegative pairs are enough: a^2-ab+b^2 = (a-b)^2+(a-b)b+b^2, and a
    witness (0, b) mirrors to (b, 0); so absence here is absence everywhere
    within the |a|,|b| <= ceil(sqrt(4m/3)) bound.
    """
    if m < 1:
        raise ValueError("m must be positive")
    bound = eisenstein_bound(m)
    for a in range(1, bound + 1):
        # a^2 + ab + b^2 = m  =>  b = (-a + sqrt(4m - 3a^2)) / 2
        disc = 4 * m - 3 * a * a
        if disc < 0:
            break
        r = math.isqrt(disc)
        if r * r == disc and (r - a) % 2 == 0 and r >= a:
            return EisensteinWitness(a, (r - a) // 2, m)
    return None


def all_eisenstein_witnesses(m: int) -> list[EisensteinWitness]:
    """Every integer pair (a, b), signs included, with a^2+ab+b^2 = m, sorted."""
    if m < 1:
        raise ValueError("m must be positive")
    bound = eisenstein_bound(m)
    out = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if a * a + a * b + b * b == m:
                out.append(EisensteinWitness(a, b, m))
    return sorted(out, key=lambda w: (w.a, w.b))


def primitive_root(p: int) -> int:
    """Smallest primitive root mod the prime p (1 for p = 2)."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if p == 2:
        return 1
    qs = list(prime_factors(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


def is_prime_power(q: int) -> tuple[int, int] | None:
    """(p, e) with p prime and p**e = q, or None."""
    if q < 2:
        return None
    fac = prime_factors(q)
    if len(fac) != 1:
        return None
    [(p, e)] = fac.items()
    return (p, e)


def smallest_prime_at_least(n: int) -> int:
    p = max(2, n)
    while not is_prime(p):
        p += 1
    return p
