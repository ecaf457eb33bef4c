"""Colouring constructions for lattices with a forbidden power-distance.

Each construction is packaged as a ColouringScheme: a total deterministic
point -> colour map with a declared colour budget.  Properness is never
assumed here; the verify module checks it on concrete windows, and the
registry only pairs schemes with the (alpha, D) families they were built
for.

Colour values keep the natural shape of the construction (an integer or a
small tuple); colour_index() flattens them deterministically into
range(colour_bound) for CSV export and solver cross-checks.
"""

from __future__ import annotations

import csv
import itertools
from fractions import Fraction
from math import isqrt, lcm

from . import numtheory, sidon

__all__ = [
    "ColouringScheme",
    "parity_colouring",
    "universal_z3_colouring",
    "mod6_z3_colouring",
    "z4_cube_colouring",
    "z4_4l_colouring",
    "scale_reduction",
    "scaled_colouring",
    "linear_sqrt2_colouring",
    "quadratic_distance2_colouring",
    "scalar_product_colouring_general",
    "z3n_colouring",
    "z5n_colouring",
    "q_odd_colouring",
    "q3_dim3_colouring",
    "q4_colouring",
    "scheme_candidates",
    "best_scheme",
    "scheme_from_name",
    "write_colour_csv",
]


class ColouringScheme:
    """A named point -> colour map with a declared colour budget.

    domain is "int" (Z^dim), "mod" (Z_modulus^dim, evaluated on residues)
    or "rat" (rational coordinates accepted as Fractions or ints).
    admissible(alpha, D) states the forbidden family the construction is
    built for; for "mod" schemes D is the forbidden residue class.
    """

    def __init__(self, name, dim, colour_bound, params, colour_fn,
                 admissible_fn, index_fn=None, domain="int"):
        self.name = name
        self.dim = dim
        self.colour_bound = colour_bound
        self.params = dict(params)
        self.domain = domain
        self._colour = colour_fn
        self._admissible = admissible_fn
        self._index = index_fn

    def __repr__(self):
        return (f"ColouringScheme({self.name!r}, dim={self.dim}, "
                f"colours={self.colour_bound})")

    def colour(self, point):
        if len(point) != self.dim:
            raise ValueError(
                f"{self.name} expects {self.dim} coordinates, got {len(point)}")
        return self._colour(point)

    def encode(self, value) -> int:
        """Flatten a colour value to an integer index."""
        idx = self._index(value) if self._index is not None else int(value)
        if not 0 <= idx < self.colour_bound:
            raise RuntimeError(
                f"{self.name} emitted index {idx} outside range({self.colour_bound})")
        return idx

    def colour_index(self, point) -> int:
        return self.encode(self.colour(point))

    def colour_window(self, vertices) -> list[int]:
        return [self.colour_index(v) for v in vertices]

    def admissible(self, alpha: int, D: int) -> bool:
        return bool(self._admissible(alpha, D))

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "colour_bound": self.colour_bound,
            "domain": self.domain,
            "params": self.params,
        }


def _radix_index(radices):
    def enc(value):
        idx = 0
        for v, r in zip(value, radices):
            idx = idx * r + v
        return idx

    return enc


def write_colour_csv(scheme: ColouringScheme, vertices, fileobj) -> None:
    """Write one row per vertex: coordinates, then the colour index."""
    writer = csv.writer(fileobj)
    writer.writerow([f"x{i + 1}" for i in range(scheme.dim)] + ["colour"])
    for v in vertices:
        writer.writerow([str(c) for c in v] + [scheme.colour_index(v)])


# -- integer-lattice constructions ------------------------------------------

def parity_colouring(dim: int) -> ColouringScheme:
    """2 colours: (sum of coordinates) mod 2.

    Proper whenever D is odd: an odd power-distance forces an odd number of
    odd coordinate differences, so the coordinate sum flips parity.
    """
    if dim < 1:
        raise ValueError("dim must be positive")

    def fn(pt):
        return sum(pt) % 2

    def adm(alpha, D):
        return alpha >= 1 and D % 2 == 1

    return ColouringScheme("parity", dim, 2, {"modulus": 2}, fn, adm)


def universal_z3_colouring() -> ColouringScheme:
    """4 colours on Z^3 for D = 2 mod 4: ((y+z) mod 2, z mod 2).

    D = 2 mod 4 forces exactly two odd entries in every forbidden
    difference; equality of both components would leave at most one.
    """

    def fn(pt):
        _, y, z = pt
        return ((y + z) % 2, z % 2)

    def adm(alpha, D):
        return alpha == 2 and D % 4 == 2

    return ColouringScheme("universal_z3", 3, 4, {}, fn, adm,
                           index_fn=_radix_index((2, 2)))


def mod6_z3_colouring() -> ColouringScheme:
    """3 colours on Z^3 for D = 10 mod 12: floor(((x+y+z) mod 6) / 2).

    For such D the coordinate sum of a forbidden difference is 2 or 4
    mod 6 (even, nonzero mod 3), which always changes the halved residue.
    """

    def fn(pt):
        return (sum(pt) % 6) // 2

    def adm(alpha, D):
        return alpha == 2 and D % 12 == 10

    return ColouringScheme("mod6_z3", 3, 3, {"modulus": 6}, fn, adm)


def z4_cube_colouring(dim: int = 4) -> ColouringScheme:
    """4 colours on Z^4 (8 on Z^5) for D = 2 mod 4, via parity XOR pairs.

    With p_i = x_i mod 2 the colour is (p1^p2, p1^p3), plus p5 in dim 5.
    Forbidden differences flip exactly two parities, and every weight-2
    flip changes the colour (the map's kernel is {0000, 1111}).
    """
    if dim not in (4, 5):
        raise ValueError("dim must be 4 or 5")

    def fn(pt):
        p = [x % 2 for x in pt]
        base = (p[0] ^ p[1], p[0] ^ p[2])
        return base if dim == 4 else base + (p[4],)

    def adm(alpha, D):
        return alpha == 2 and D % 4 == 2

    bound = 4 if dim == 4 else 8
    radices = (2, 2) if dim == 4 else (2, 2, 2)
    return ColouringScheme("z4_cube", dim, bound, {}, fn, adm,
                           index_fn=_radix_index(radices))


def z4_4l_colouring() -> ColouringScheme:
    """4 colours on Z^4 for D = 4 mod 8: (x1 mod 2, sum(floor(x_i/2)) mod 2).

    Forbidden differences have either four odd entries (first component
    flips) or four even entries halving to an odd-sum vector (second
    component flips). Floors are taken toward minus infinity.
    """

    def fn(pt):
        return (pt[0] % 2, sum(x // 2 for x in pt) % 2)

    def adm(alpha, D):
        return alpha == 2 and D % 8 == 4

    return ColouringScheme("z4_4l", 4, 4, {}, fn, adm,
                           index_fn=_radix_index((2, 2)))


def scale_reduction(dim: int, D: int, alpha: int = 2) -> int:
    """Fully reduce a forbidden value whose differences are all even.

    dim 3: while D = 0 mod 4, replace D by D/4 (every representation of a
    multiple of 4 as three squares is all-even). dim 4: while D = 0 mod 8,
    replace D by D/4. Other cases are returned unchanged. Each division
    halves the spatial scale; see scaled_colouring.
    """
    if alpha != 2 or D <= 0:
        return D
    if dim == 3:
        while D % 4 == 0:
            D //= 4
    elif dim == 4:
        while D % 8 == 0:
            D //= 4
    return D


def scaled_colouring(base: ColouringScheme, scale: int, D: int) -> ColouringScheme:
    """Adapt a scheme for the reduced forbidden value to the original D.

    colour(x) = base(floor(x / scale)). Valid because every difference at
    the original D is scale times a difference at the reduced value, and
    such steps preserve coordinate residues mod scale.
    """
    if scale < 2:
        raise ValueError("scale must be >= 2")

    def fn(pt):
        return base.colour(tuple(x // scale for x in pt))

    def adm(alpha, DD):
        return alpha == 2 and DD == D

    params = {"scale": scale, "base": base.to_json_dict()}
    return ColouringScheme(f"{base.name}_scaled{scale}", base.dim,
                           base.colour_bound, params, fn, adm,
                           index_fn=base.encode)


def linear_sqrt2_colouring(n: int, compressed: bool = True) -> ColouringScheme:
    """2n-1 colours on Z^n for D = 2, via <x, (1,3,...,2n-1)> mod (4n-2).

    Forbidden differences change the scalar product by a nonzero even
    amount mod 4n-2, so halving the residue (compressed form) still
    separates them; compressed=False keeps the raw 4n-2 residues.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    weights = tuple(range(1, 2 * n, 2))
    modulus = 4 * n - 2

    def fn(pt):
        s = sum(x * w for x, w in zip(pt, weights)) % modulus
        return s // 2 if compressed else s

    def adm(alpha, D):
        return alpha == 2 and D == 2

    bound = 2 * n - 1 if compressed else modulus
    return ColouringScheme("linear_sqrt2", n, bound,
                           {"weights": list(weights), "modulus": modulus,
                            "compressed": compressed},
                           fn, adm)


def quadratic_distance2_colouring(n: int) -> ColouringScheme:
    """O(p^2) colours on Z^n for D = 4, p the smallest prime with p-1 >= n.

    Coordinates are reduced mod p and used as multipliers of the spaced
    distinguished elements q_j inside Z_{16p+1} x Z_{4p+1}; forbidden
    differences produce short signed combinations that never vanish there.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    p = numtheory.smallest_prime_at_least(n + 1)
    emb = sidon.paper_shifted_embedding(p)
    qs = emb.elements[:n]
    m1, m2 = emb.group.moduli

    def fn(pt):
        a = b = 0
        for x, (q1, q2) in zip(pt, qs):
            s = x % p
            a = (a + s * q1) % m1
            b = (b + s * q2) % m2
        return (a, b)

    def adm(alpha, D):
        return alpha == 2 and D == 4

    return ColouringScheme("quadratic_distance2", n, m1 * m2,
                           {"p": p, "weights": [list(q) for q in qs],
                            "moduli": [m1, m2]},
                           fn, adm, index_fn=_radix_index((m1, m2)))


def _vanishing_assignment(lift, m, alpha):
    """First (coefficients, indices) with sum c_i * lift[j_i] == 0, or None.

    Runs over every decomposition coefficient vector of D = 2m under the
    given alpha and every assignment to distinct lift positions.
    """
    n = len(lift)
    D = 2 * m
    for dec in numtheory.decompositions(D, alpha, max_len=min(n, D)):
        coeffs = dec.coefficients
        for idx in itertools.permutations(range(n), len(coeffs)):
            if sum(c * lift[i] for c, i in zip(coeffs, idx)) == 0:
                return coeffs, idx
    return None


def scalar_product_colouring_general(n: int, m: int, alpha: int = 2,
                                     system: sidon.SidonSystem | None = None,
                                     ) -> ColouringScheme:
    """Q colours on Z^n for D = 2m: colour = sum(x_j * X_j) mod Q.

    X_j is a shifted B_m integer lift and Q = 2m * max(X) + 1. A forbidden
    difference c has sum |c_j| <= 2m, so its weighted sum lies in (-Q, Q)
    and colour equality would force exact vanishing over Z; the
    constructor checks every decomposition coefficient vector against the
    lift and, when building its own lift, keeps enlarging the shift until
    none vanishes. Balanced vectors are shift-invariant and already killed
    by the B_m property, imbalanced ones grow with the shift, so the loop
    terminates.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1, m >= 1")
    if alpha not in (1, 2):
        raise ValueError("alpha must be 1 or 2")
    if system is not None:
        if system.integer_lift is None:
            raise ValueError("system has no integer lift")
        if len(system.integer_lift) < n:
            raise ValueError(f"system has {len(system.integer_lift)} elements, need {n}")
        lift = list(system.integer_lift[:n])
        hit = _vanishing_assignment(lift, m, alpha)
        if hit is not None:
            raise ValueError(
                f"lift admits a vanishing combination {hit[0]} at positions {hit[1]}")
    else:
        base = sidon.shift_and_extend(sidon.greedy_bm_set(n, m), m)
        lift = list(base.integer_lift)
        while _vanishing_assignment(lift, m, alpha) is not None:
            lift = [x + 1 for x in lift]
    q = 2 * m * max(lift) + 1

    def fn(pt):
        return sum(x * w for x, w in zip(pt, lift)) % q

    def adm(a, DD):
        return a == alpha and DD == 2 * m

    return ColouringScheme("scalar_general", n, q,
                           {"m": m, "alpha": alpha, "lift": list(lift),
                            "modulus": q},
                           fn, adm)


# -- modular-lattice constructions -------------------------------------------

def z3n_colouring(n: int) -> ColouringScheme:
    """Colours Z_3^n against forbidden residue 1 (squared length mod 3).

    Layout: (n-2) mod 3 leading coordinates kept verbatim, then the base
    pair colour (x_i + x_{i+1}) mod 3, then per 3-block (a,b,c) the pair
    (b-a, c-a) mod 3. Colour-equal differences have squared length 0 or 2
    mod 3, never 1. For n = 2+3k the bound is 3^(2k+1) exactly.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    r = (n - 2) % 3
    k = (n - 2 - r) // 3

    def fn(pt):
        parts = [pt[i] % 3 for i in range(r)]
        parts.append((pt[r] + pt[r + 1]) % 3)
        for b in range(r + 2, n, 3):
            a, s, t = pt[b] % 3, pt[b + 1] % 3, pt[b + 2] % 3
            parts.append(((s - a) % 3, (t - a) % 3))
        return parts[0] if len(parts) == 1 else tuple(parts)

    def enc(value):
        if isinstance(value, int):
            return value
        idx = 0
        for part in value:
            if isinstance(part, tuple):
                idx = idx * 9 + part[0] * 3 + part[1]
            else:
                idx = idx * 3 + part
        return idx

    def adm(alpha, residue):
        return alpha == 2 and residue % 3 == 1

    bound = 3 ** (r + 1) * 9 ** k
    return ColouringScheme("z3n", n, bound,
                           {"modulus": 3, "singletons": r, "blocks": k},
                           fn, adm, index_fn=enc, domain="mod")


def z5n_colouring(n: int) -> ColouringScheme:
    """Colours Z_5^n against any nonzero forbidden residue mod 5.

    Coordinate pairs map to (a - 2b) mod 5; an odd trailing coordinate is
    kept verbatim. A colour-equal difference satisfies a = 2b per pair, so
    its squared length is 5 b^2 = 0 mod 5 pairwise and 0 on the tail.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    pairs = n // 2
    tail = n % 2

    def fn(pt):
        vals = [(pt[2 * i] - 2 * pt[2 * i + 1]) % 5 for i in range(pairs)]
        if tail:
            vals.append(pt[-1] % 5)
        return vals[0] if len(vals) == 1 else tuple(vals)

    def enc(value):
        if isinstance(value, int):
            return value
        idx = 0
        for part in value:
            idx = idx * 5 + part
        return idx

    def adm(alpha, residue):
        return alpha == 2 and residue % 5 != 0

    bound = 5 ** (pairs + tail)
    return ColouringScheme("z5n", n, bound, {"modulus": 5}, fn, adm,
                           index_fn=enc, domain="mod")


# -- rational-lattice constructions ------------------------------------------

def _odd_parity(fracs) -> int:
    """Parity of the numerator sum over the least common odd denominator."""
    d = 1
    for f in fracs:
        if f.denominator % 2 == 0:
            raise ValueError("coordinate with even denominator")
        d = lcm(d, f.denominator)
    return sum(f.numerator * (d // f.denominator) for f in fracs) % 2


def _numerator_parities(fracs) -> list[int]:
    d = 1
    for f in fracs:
        d = lcm(d, f.denominator)
    return [f.numerator * (d // f.denominator) % 2 for f in fracs]


def _dyadic_split(x: Fraction) -> tuple[Fraction, Fraction]:
    """x = r + o with r dyadic in [0,1) and o of odd denominator."""
    den = x.denominator
    k = (den & -den).bit_length() - 1
    if k == 0:
        return Fraction(0), x
    two_k = 1 << k
    s = den >> k
    t = (x.numerator * pow(s, -1, two_k)) % two_k
    r = Fraction(t, two_k)
    return r, x - r


def q_odd_colouring(n: int) -> ColouringScheme:
    """2 colours on Q_odd^n (odd denominators only) for odd D.

    Colour = numerator-sum parity over the least common odd denominator.
    A difference of odd squared length over odd denominators has odd
    numerator sum. Points with an even denominator are rejected.
    """
    if n < 1:
        raise ValueError("n must be >= 1")

    def fn(pt):
        return _odd_parity([Fraction(x) for x in pt])

    def adm(alpha, D):
        return alpha == 2 and D % 2 == 1

    return ColouringScheme("q_odd", n, 2, {}, fn, adm, domain="rat")


def q3_dim3_colouring() -> ColouringScheme:
    """2 colours on all of Q^3 for odd D.

    Each coordinate splits as dyadic part + odd-denominator part; the
    colour is the numerator-sum parity of the odd parts. Points at odd
    squared distance share their dyadic parts (three squares summing to
    0 mod 4 are all even, contradicting reduced form), and the remaining
    odd-denominator difference has odd numerator sum.
    """

    def fn(pt):
        odd_parts = [_dyadic_split(Fraction(x))[1] for x in pt]
        return _odd_parity(odd_parts)

    def adm(alpha, D):
        return alpha == 2 and D % 2 == 1

    return ColouringScheme("q3", 3, 2, {}, fn, adm, domain="rat")


def q4_colouring(D: int, dim: int = 4) -> ColouringScheme:
    """4 colours on Q^dim (dim 3 or 4) for odd D, or D = 2 mod 4.

    Odd D ("halves" variant): colour = (first dyadic digit of x1,
    numerator-sum parity of the odd parts). Conflicts either stay inside
    one odd-denominator coset (parity flips) or join cosets differing by
    (1/2,1/2,1/2,1/2) (the digit flips).

    D = 2 mod 4 ("pair_xor" variant): conflicts stay inside one coset and
    flip exactly two numerator parities, so the antipodal XOR pair
    (p1^p2, p1^p3) separates them. dim 3 embeds with a zero fourth
    coordinate.
    """
    if dim not in (3, 4):
        raise ValueError("dim must be 3 or 4")
    if D % 2 == 1:
        variant = "halves"
    elif D % 4 == 2:
        variant = "pair_xor"
    else:
        raise ValueError("forbidden value must be odd or 2 mod 4")

    def fn(pt):
        fr = [Fraction(x) for x in pt]
        if len(fr) == 3:
            fr.append(Fraction(0))
        splits = [_dyadic_split(x) for x in fr]
        odd_parts = [o for _, o in splits]
        if variant == "halves":
            digit = int(2 * splits[0][0])
            return (digit, _odd_parity(odd_parts))
        p = _numerator_parities(odd_parts)
        return (p[0] ^ p[1], p[0] ^ p[2])

    def adm(alpha, DD):
        if alpha != 2:
            return False
        return DD % 2 == 1 if variant == "halves" else DD % 4 == 2

    return ColouringScheme("q4", dim, 4, {"variant": variant, "D": D},
                           fn, adm, index_fn=_radix_index((2, 2)),
                           domain="rat")


# -- registry -----------------------------------------------------------------

#: largest m for which the registry will build a shifted B_m fallback lift
MAX_REGISTRY_M = 6


def scheme_candidates(dim: int, alpha: int, D: int,
                      max_m: int = MAX_REGISTRY_M) -> list[ColouringScheme]:
    """Constructions directly applicable to (Z^dim, alpha, D), unreduced."""
    if D <= 0:
        return []
    out = []
    if D % 2 == 1 and alpha in (1, 2):
        out.append(parity_colouring(dim))
    if alpha == 2:
        if dim == 3:
            if D % 4 == 2:
                out.append(universal_z3_colouring())
            if D % 12 == 10:
                out.append(mod6_z3_colouring())
        if dim == 4:
            if D % 4 == 2:
                out.append(z4_cube_colouring(4))
            if D % 8 == 4:
                out.append(z4_4l_colouring())
        if dim == 5 and D % 4 == 2:
            out.append(z4_cube_colouring(5))
        if D == 2 and dim >= 2:
            out.append(linear_sqrt2_colouring(dim))
        if D == 4 and 3 <= dim <= 4:
            out.append(quadratic_distance2_colouring(dim))
    if D % 2 == 0 and alpha in (1, 2) and 1 <= D // 2 <= max_m:
        out.append(scalar_product_colouring_general(dim, D // 2, alpha))
    return out


def best_scheme(dim: int, alpha: int, D: int,
                max_m: int = MAX_REGISTRY_M) -> ColouringScheme | None:
    """Smallest-budget scheme for (Z^dim, alpha, D), or None.

    Scale reduction is applied first where it helps; ties break on name
    for determinism.
    """
    cands = scheme_candidates(dim, alpha, D, max_m)
    reduced = scale_reduction(dim, D, alpha)
    if reduced != D:
        base = best_scheme(dim, alpha, reduced, max_m)
        if base is not None:
            cands.append(scaled_colouring(base, isqrt(D // reduced), D))
    if not cands:
        return None
    return min(cands, key=lambda s: (s.colour_bound, s.name))


def scheme_from_name(name: str, *, dim: int | None = None,
                     D: int | None = None, m: int | None = None,
                     alpha: int = 2) -> ColouringScheme:
    """Build a scheme by registry name (CLI surface)."""
    if name == "parity":
        return parity_colouring(dim or 3)
    if name == "universal_z3":
        return universal_z3_colouring()
    if name == "mod6_z3":
        return mod6_z3_colouring()
    if name == "z4_cube":
        return z4_cube_colouring(dim or 4)
    if name == "z4_4l":
        return z4_4l_colouring()
    if name == "linear_sqrt2":
        return linear_sqrt2_colouring(dim or 2)
    if name == "quadratic_distance2":
        return quadratic_distance2_colouring(dim or 3)
    if name == "scalar_general":
        if dim is None or m is None:
            raise ValueError("scalar_general needs dim and m")
        return scalar_product_colouring_general(dim, m, alpha)
    if name == "z3n":
        return z3n_colouring(dim or 2)
    if name == "z5n":
        return z5n_colouring(dim or 2)
    if name == "q_odd":
        return q_odd_colouring(dim or 3)
    if name == "q3":
        return q3_dim3_colouring()
    if name == "q4":
        if D is None:
            raise ValueError("q4 needs the forbidden value D")
        return q4_colouring(D, dim or 4)
    raise ValueError(f"unknown scheme {name!r}")
