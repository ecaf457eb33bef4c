from __future__ import annotations

import io
import itertools
import random
from fractions import Fraction

import pytest

from latcolor import coloring as col
from latcolor import lattice as lat
from latcolor import sidon


def _conflicts(scheme, lo, hi, D, alpha=2, scale=None):
    """(edge count, monochromatic edge count) on a window graph."""
    g = lat.build_window_graph(lat.Window(scheme.dim, lo, hi), alpha, D)
    if scale is None:
        cols = [scheme.colour_index(v) for v in g.vertices]
    else:
        cols = [
            scheme.colour_index(tuple(Fraction(c, scale) for c in v))
            for v in g.vertices
        ]
    bad = sum(1 for u, v in g.edges if cols[u] == cols[v])
    return g.edges.shape[0], bad


def _assert_proper(scheme, lo, hi, D, alpha=2, scale=None):
    edges, bad = _conflicts(scheme, lo, hi, D, alpha, scale)
    assert edges > 0, "window carries no forbidden pairs; test is vacuous"
    assert bad == 0


def test_parity_values_and_admissibility():
    s = col.parity_colouring(3)
    assert s.colour((0, 0, 0)) == 0
    assert s.colour((1, 0, 0)) == 1
    assert s.colour((2, 3, 5)) == 0
    assert s.admissible(2, 7) and s.admissible(1, 7)
    assert not s.admissible(2, 10)
    for D in (1, 3, 9, 25):
        _assert_proper(s, -4, 4, D)


def test_parity_separates_any_odd_distance_pair():
    s = col.parity_colouring(3)
    for v in lat.difference_vectors(3, 2, 9):
        assert s.colour(v) != s.colour((0, 0, 0))


def test_universal_z3_values():
    s = col.universal_z3_colouring()
    assert s.colour((0, 0, 0)) == (0, 0)
    assert s.colour((0, 1, 1)) == (0, 1)
    assert s.colour_bound == 4
    for v in lat.difference_vectors(3, 2, 2):
        assert s.colour(v) != s.colour((0, 0, 0))


def test_universal_z3_proper_windows():
    s = col.universal_z3_colouring()
    for D in (2, 6, 10, 14):
        _assert_proper(s, -6, 6, D)
    assert not s.admissible(2, 4)
    assert not s.admissible(2, 9)


def test_mod6_values_and_windows():
    s = col.mod6_z3_colouring()
    assert s.colour((0, 0, 0)) == 0
    assert s.colour((3, 1, 0)) == 2
    for v in lat.difference_vectors(3, 2, 10):
        assert sum(v) % 6 in (2, 4)
    for D in (10, 22, 34):
        _assert_proper(s, -6, 6, D)
    assert s.admissible(2, 46) and not s.admissible(2, 14)


def test_z4_cube_values():
    s = col.z4_cube_colouring(4)
    assert s.colour((0, 0, 0, 0)) == (0, 0)
    assert s.colour((1, 1, 1, 1)) == (0, 0)  # antipodal patterns share colour
    assert s.colour((0, 0, 1, 1)) == (0, 1)
    assert s.colour((0, 1, 0, 1)) == (1, 0)
    assert s.colour((0, 1, 1, 0)) == (1, 1)
    for D in (2, 6, 10):
        _assert_proper(s, -3, 3, D)


def test_z4_cube_dim5():
    s = col.z4_cube_colouring(5)
    assert s.colour_bound == 8
    assert s.colour((0, 0, 0, 0, 1)) == (0, 0, 1)
    for D in (2, 6, 10):
        _assert_proper(s, -2, 2, D)
    with pytest.raises(ValueError):
        col.z4_cube_colouring(3)


def test_z4_4l_values_and_windows():
    s = col.z4_4l_colouring()
    assert s.colour((0, 0, 0, 0)) == (0, 0)
    assert s.colour((2, 0, 0, 0)) == (0, 1)
    # all-odd difference flips the first component
    assert s.colour((1, 1, 1, 1))[0] == 1
    for D in (4, 12, 20):
        _assert_proper(s, -4, 4, D)
    assert s.admissible(2, 36) and not s.admissible(2, 8)


def test_scale_reduction():
    assert col.scale_reduction(3, 40) == 10
    assert col.scale_reduction(4, 16) == 4
    assert col.scale_reduction(3, 10) == 10
    assert col.scale_reduction(3, 160) == 10
    assert col.scale_reduction(4, 32) == 2
    assert col.scale_reduction(5, 16) == 16
    assert col.scale_reduction(3, 40, alpha=1) == 40


def test_scaled_adapter_proper():
    base = col.mod6_z3_colouring()
    s = col.scaled_colouring(base, 2, 40)
    assert s.colour_bound == 3
    _assert_proper(s, -8, 8, 40)
    p2 = col.scaled_colouring(col.parity_colouring(3), 2, 4)
    _assert_proper(p2, -4, 4, 4)


def test_linear_sqrt2_values():
    s = col.linear_sqrt2_colouring(2)
    assert s.colour((0, 0)) == 0
    assert s.colour((1, 1)) == 2
    assert s.colour_bound == 3
    raw = col.linear_sqrt2_colouring(3, compressed=False)
    assert raw.colour_bound == 10
    # diff (1,0,-1) shifts the scalar product by -4, nonzero mod 10
    assert (raw.colour((1, 0, -1)) - raw.colour((0, 0, 0))) % 10 == 6


def test_linear_sqrt2_proper_windows():
    for n in range(2, 7):
        _assert_proper(col.linear_sqrt2_colouring(n), -3, 3, 2)
        _assert_proper(col.linear_sqrt2_colouring(n, compressed=False), -3, 3, 2)


def test_quadratic_distance2_values():
    s = col.quadratic_distance2_colouring(4)
    assert s.params["p"] == 5
    assert s.params["weights"][0] == [1, 2]
    assert s.colour((1, 0, 0, 0)) == (1, 2)
    assert s.colour_bound == 81 * 21
    with pytest.raises(ValueError):
        col.quadratic_distance2_colouring(2)


def test_quadratic_distance2_proper_small_dims():
    for n in (3, 4):
        _assert_proper(col.quadratic_distance2_colouring(n), -2, 2, 4)


def test_quadratic_distance2_not_registered_beyond_dim4():
    # mod-p coordinate wraparound breaks the construction at n=6 (p=7),
    # so the registry only pairs it with dims 3 and 4
    names = [s.name for s in col.scheme_candidates(6, 2, 4)]
    assert "quadratic_distance2" not in names
    names = [s.name for s in col.scheme_candidates(4, 2, 4)]
    assert "quadratic_distance2" in names


def test_scalar_general_lift_frozen():
    s = col.scalar_product_colouring_general(4, 2, alpha=2)
    assert s.params["lift"] == [1, 2, 4, 8]
    assert s.colour_bound == 33
    # alpha=1 admits (2,1,-1) over {1,2,4,8} (2*1+2-4=0), so the
    # constructor keeps shifting until the lift passes
    s1 = col.scalar_product_colouring_general(4, 2, alpha=1)
    assert s1.params["lift"] == [4, 5, 7, 11]
    assert s1.colour_bound == 45


def test_scalar_general_rejects_bad_system():
    sys_ = sidon.SidonSystem(
        sidon.CyclicProductGroup((101,)),
        ((1,), (2,), (4,), (8,)),
        order_m=2,
        integer_lift=(1, 2, 4, 8),
    )
    # fine for alpha=2 ...
    s = col.scalar_product_colouring_general(4, 2, alpha=2, system=sys_)
    assert s.params["lift"] == [1, 2, 4, 8]
    # ... rejected for alpha=1 (vanishing combination exists)
    with pytest.raises(ValueError):
        col.scalar_product_colouring_general(4, 2, alpha=1, system=sys_)


def test_scalar_general_proper_windows():
    for n in (2, 3, 4):
        for m in (1, 2):
            for alpha in (1, 2):
                s = col.scalar_product_colouring_general(n, m, alpha)
                edges, bad = _conflicts(s, -2, 2, 2 * m, alpha)
                assert bad == 0, (n, m, alpha)
                assert s.colour_bound <= 2 * m * max(s.params["lift"]) + 1


def test_scalar_general_m1_proper_up_to_dim8():
    for n in range(2, 9):
        s = col.scalar_product_colouring_general(n, 1, alpha=2)
        lo, hi = (-2, 2) if n <= 5 else (-1, 1)
        _assert_proper(s, lo, hi, 2)


def test_z3n_values():
    assert col.z3n_colouring(2).colour((1, 2)) == 0
    assert col.z3n_colouring(5).colour((0, 0, 0, 1, 2)) == (0, (1, 2))
    assert col.z3n_colouring(3).colour((2, 0, 1)) == (2, 1)
    assert col.z3n_colouring(2).colour_bound == 3
    assert col.z3n_colouring(5).colour_bound == 27
    assert col.z3n_colouring(8).colour_bound == 243


def test_z5n_values():
    assert col.z5n_colouring(2).colour((1, 3)) == 0
    assert col.z5n_colouring(3).colour((1, 3, 4)) == (0, 4)
    assert col.z5n_colouring(2).colour_bound == 5
    assert col.z5n_colouring(5).colour_bound == 125


def _modular_conflicts(scheme, n, mod, residue):
    pts = list(itertools.product(range(mod), repeat=n))
    cols = {p: scheme.colour_index(p) for p in pts}
    bad = 0
    for p in pts:
        for d in pts:
            if all(x == 0 for x in d):
                continue
            if sum(x * x for x in d) % mod != residue:
                continue
            q = tuple((a + b) % mod for a, b in zip(p, d))
            if cols[p] == cols[q]:
                bad += 1
    return bad


def test_z3n_proper_small_full_space():
    for n in (2, 3, 4):
        assert _modular_conflicts(col.z3n_colouring(n), n, 3, 1) == 0
    # residue 2 genuinely escapes this scheme
    assert _modular_conflicts(col.z3n_colouring(2), 2, 3, 2) > 0
    assert not col.z3n_colouring(2).admissible(2, 2)


def test_z5n_proper_small_full_space():
    for n in (2, 3):
        for r in (1, 2, 3, 4):
            assert _modular_conflicts(col.z5n_colouring(n), n, 5, r) == 0, (n, r)
    assert not col.z5n_colouring(2).admissible(2, 5)


def test_q_odd_values():
    s = col.q_odd_colouring(2)
    assert s.colour((Fraction(1, 3), Fraction(2, 5))) == 1
    assert col.q_odd_colouring(2).colour((1, 1)) == 0
    with pytest.raises(ValueError):
        s.colour((Fraction(1, 2), Fraction(0)))


def test_q_odd_unit_distance_pairs_differ():
    s3 = col.q_odd_colouring(3)
    rng = random.Random(11)
    diffs = [
        (Fraction(1, 3), Fraction(2, 3), Fraction(2, 3)),
        (Fraction(2, 7), Fraction(3, 7), Fraction(6, 7)),
        (Fraction(1), Fraction(0), Fraction(0)),
    ]
    for d in diffs:
        assert sum(x * x for x in d) == 1
        for _ in range(20):
            x = tuple(
                Fraction(rng.randint(-9, 9), rng.choice([1, 3, 5, 7, 9]))
                for _ in range(3)
            )
            y = tuple(a + b for a, b in zip(x, d))
            assert s3.colour(x) != s3.colour(y)


def test_q3_values():
    s = col.q3_dim3_colouring()
    assert s.colour((0, 0, 0)) == 0
    assert s.colour((0, 1, 2)) == 1
    assert s.colour((Fraction(1, 2), 0, 0)) == 0
    assert s.colour((Fraction(1, 2), 1, 2)) == 1


def test_q3_proper_scaled_windows():
    s = col.q3_dim3_colouring()
    # window (1/4)[-8,8]^3 at squared distance 5 <-> integer D=80
    _assert_proper(s, -8, 8, 80, scale=4)
    _assert_proper(s, -6, 6, 12, scale=2)  # l=3 at half-integer scale


def test_q4_halves_variant():
    s = col.q4_colouring(5)
    assert s.params["variant"] == "halves"
    assert s.colour((0, 0, 0, 0)) == (0, 0)
    assert s.colour((Fraction(1, 2),) * 4) == (1, 0)
    _assert_proper(s, -4, 4, 20, scale=2)
    assert s.admissible(2, 7) and not s.admissible(2, 10)


def test_q4_pair_xor_variant():
    s = col.q4_colouring(10)
    assert s.params["variant"] == "pair_xor"
    _assert_proper(s, -4, 4, 40, scale=2)
    s3 = col.q4_colouring(10, dim=3)
    _assert_proper(s3, -4, 4, 40, scale=2)
    with pytest.raises(ValueError):
        col.q4_colouring(8)


def test_registry_best_scheme_frozen():
    picks = {
        (3, 2, 10): ("mod6_z3", 3),
        (3, 2, 30): ("universal_z3", 4),
        (3, 2, 40): ("mod6_z3_scaled2", 3),
        (3, 2, 1): ("parity", 2),
        (3, 2, 4): ("parity_scaled2", 2),
        (4, 2, 16): ("z4_4l_scaled2", 4),
        (3, 2, 2): ("universal_z3", 4),
        (2, 2, 2): ("linear_sqrt2", 3),
        (6, 2, 2): ("linear_sqrt2", 11),
        (3, 1, 3): ("parity", 2),
    }
    for (dim, alpha, D), (name, bound) in picks.items():
        s = col.best_scheme(dim, alpha, D)
        assert (s.name, s.colour_bound) == (name, bound), (dim, alpha, D)
    assert col.best_scheme(2, 2, 14) is None


def test_registry_scheme_is_admissible_and_proper():
    rng = random.Random(3)
    for _ in range(25):
        dim = rng.randint(2, 5)
        D = rng.randint(1, 50)
        s = col.best_scheme(dim, 2, D)
        if s is None:
            continue
        assert s.admissible(2, D), (dim, D, s.name)
        lo, hi = (-3, 3) if dim <= 4 else (-2, 2)
        edges, bad = _conflicts(s, lo, hi, D)
        assert bad == 0, (dim, D, s.name)


def test_colour_budget_respected_on_windows():
    cases = [
        (col.universal_z3_colouring(), -6, 6),
        (col.mod6_z3_colouring(), -6, 6),
        (col.z4_cube_colouring(4), -3, 3),
        (col.linear_sqrt2_colouring(4), -3, 3),
        (col.scalar_product_colouring_general(3, 2), -2, 2),
    ]
    for scheme, lo, hi in cases:
        w = lat.Window(scheme.dim, lo, hi)
        vertices = list(itertools.product(range(lo, hi + 1), repeat=scheme.dim))
        used = set(scheme.colour_window(vertices))
        assert len(used) <= scheme.colour_bound
        assert all(0 <= c < scheme.colour_bound for c in used)
        assert w.dim == scheme.dim


def test_translation_invariance_of_conflict_counts():
    # counts must match across translated windows, proper or not
    s = col.universal_z3_colouring()
    for D in (6, 9):  # 9 is inadmissible on purpose
        base = None
        for lo, hi in [(-2, 2), (0, 4), (5, 9), (-9, -5)]:
            g = lat.build_window_graph(lat.Window(3, lo, hi), 2, D)
            cols = [s.colour_index(v) for v in g.vertices]
            bad = sum(1 for u, v in g.edges if cols[u] == cols[v])
            if base is None:
                base = bad
            assert bad == base, (D, lo, hi)


def test_scheme_json_and_csv():
    s = col.universal_z3_colouring()
    d = s.to_json_dict()
    assert d["name"] == "universal_z3"
    assert d["colour_bound"] == 4
    buf = io.StringIO()
    col.write_colour_csv(s, [(0, 0, 0), (0, 1, 1)], buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "x1,x2,x3,colour"
    assert lines[1] == "0,0,0,0"
    assert lines[2] == "0,1,1,1"


def test_scheme_from_name_round_trip():
    assert col.scheme_from_name("parity", dim=4).dim == 4
    assert col.scheme_from_name("mod6_z3").name == "mod6_z3"
    assert col.scheme_from_name("scalar_general", dim=3, m=2).admissible(2, 4)
    assert col.scheme_from_name("q4", D=5).params["variant"] == "halves"
    with pytest.raises(ValueError):
        col.scheme_from_name("nonsense")
    with pytest.raises(ValueError):
        col.scheme_from_name("scalar_general", dim=3)


def test_dimension_mismatch_rejected():
    s = col.universal_z3_colouring()
    with pytest.raises(ValueError):
        s.colour((0, 0))
