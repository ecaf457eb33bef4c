import json

import pytest

from latcolor import coloring as col
from latcolor import lattice as lat
from latcolor import verify as ver


# --- properness replay ------------------------------------------------------


def test_parity_window_report():
    rep = ver.check_properness(
        col.parity_colouring(3),
        lat.build_window_graph(lat.Window(3, 0, 2), 2, 1))
    assert rep.proper
    assert rep.colours_used == 2
    assert rep.edge_count == 54
    assert rep.vertex_count == 27
    assert rep.conflict_pairs == ()


def test_universal_window_report():
    rep = ver.check_properness(
        col.universal_z3_colouring(),
        lat.build_window_graph(lat.Window(3, -6, 6), 2, 10))
    assert rep.proper
    assert rep.colours_used == 4


def test_improper_scheme_lists_conflicts():
    scheme = col.ColouringScheme(
        name="constant", dim=2, colour_bound=1, params={},
        colour_fn=lambda p: 0, admissible_fn=lambda alpha, D: True,
        index_fn=lambda c: 0)
    g = lat.build_window_graph(lat.Window(2, 0, 1), 2, 1)
    rep = ver.check_properness(scheme, g)
    assert not rep.proper
    assert len(rep.conflict_pairs) == g.n_edges == 4
    # conflicts come out lexicographically sorted
    assert list(rep.conflict_pairs) == sorted(rep.conflict_pairs)


def test_dimension_mismatch_rejected():
    g = lat.build_window_graph(lat.Window(2, 0, 1), 2, 1)
    with pytest.raises(ValueError):
        ver.check_properness(col.parity_colouring(3), g)


def test_report_json_is_stable_and_skips_elapsed():
    rep = ver.check_properness(
        col.parity_colouring(3),
        lat.build_window_graph(lat.Window(3, 0, 1), 2, 1))
    d = rep.to_json_dict()
    assert "elapsed" not in d
    assert d["proper"] is True
    assert json.dumps(d, sort_keys=True) == json.dumps(d, sort_keys=True)


def test_modular_properness_full_space():
    rep = ver.check_modular_properness(col.z3n_colouring(3), 3, 1)
    assert rep.proper
    assert rep.vertex_count == 27
    rep5 = ver.check_modular_properness(col.z5n_colouring(2), 5, 3)
    assert rep5.proper


def test_modular_properness_wrong_residue():
    rep = ver.check_modular_properness(col.z3n_colouring(2), 3, 2)
    assert not rep.proper
    assert len(rep.conflict_pairs) == 9


def test_rational_sampling_proper():
    rep = ver.check_rational_pairs(col.q_odd_colouring(3), 1, 200, seed=5)
    assert rep.proper
    assert rep.edge_count == 200


def test_rational_sampling_unrepresentable_value_bails():
    # 7 * q^2 is never a sum of three squares for odd q
    rep = ver.check_rational_pairs(col.q3_dim3_colouring(), 7, 50, seed=5)
    assert rep.edge_count == 0
    assert rep.proper


# --- finite odd cycles ------------------------------------------------------


def test_find_odd_cycle_triangle():
    g = lat.build_window_graph(lat.Window(3, 0, 3), 2, 2)
    res = ver.find_odd_cycle(g)
    assert res.cycle == ((0, 0, 2), (0, 1, 1), (1, 1, 2))
    assert res.two_colouring is None


def test_find_odd_cycle_bipartite_witness():
    g = lat.build_window_graph(lat.Window(3, -2, 2), 2, 1)
    res = ver.find_odd_cycle(g)
    assert res.cycle is None
    two = res.two_colouring
    assert two is not None
    for u, v in g.edge_list():
        assert two[u] != two[v]


def test_find_odd_cycle_empty_graph():
    g = lat.build_window_graph(lat.Window(3, 0, 1), 2, 7)
    assert g.n_edges == 0
    res = ver.find_odd_cycle(g)
    assert res.cycle is None


# --- signed permutations ----------------------------------------------------


def test_signed_permutations_counts():
    perms110 = ver.signed_permutations((1, 1, 0))
    assert len(perms110) == 12
    assert perms110 == tuple(sorted(perms110))
    assert len(ver.signed_permutations((1, 2, 3))) == 48
    assert len(ver.signed_permutations((0, 0, 0))) == 1


# --- odd closed walks -------------------------------------------------------


WALK_LENGTHS = {2: 3, 6: 3, 10: 5, 14: 3, 18: 3, 22: 9, 26: 3,
                30: 5, 34: 5, 38: 3, 42: 3, 46: 5, 50: 3}


@pytest.mark.parametrize("D,length", sorted(WALK_LENGTHS.items()))
def test_shortest_odd_closed_walk_lengths(D, length):
    steps = ver.shortest_odd_closed_walk(lat.difference_vectors(3, 2, D), 15)
    assert steps is not None
    assert len(steps) == length
    assert len(steps) % 2 == 1
    total = tuple(sum(s[i] for s in steps) for i in range(3))
    assert total == (0, 0, 0)
    for s in steps:
        assert sum(x * x for x in s) == D


def test_shortest_odd_closed_walk_no_diffs():
    assert ver.shortest_odd_closed_walk([], 15) is None


# --- two-colourability verdicts ---------------------------------------------


def test_verdict_d2():
    v = ver.two_colourability_verdict(2)
    assert v.status == "NOT_2_COLOURABLE"
    assert (v.reduced, v.scale) == (2, 1)
    assert v.certificate.points == ((0, 0, 0), (1, 0, 1), (1, 1, 0))
    assert v.certificate.check()


def test_verdict_d10():
    v = ver.two_colourability_verdict(10)
    assert v.certificate.points == (
        (0, 1, 0), (3, 1, 1), (6, 0, 1), (6, 3, 0), (3, 2, 0))


def test_verdict_d40_scales_the_reduced_cycle():
    v = ver.two_colourability_verdict(40)
    assert v.status == "NOT_2_COLOURABLE"
    assert (v.reduced, v.scale) == (10, 2)
    assert v.certificate.points == (
        (0, 2, 0), (6, 2, 2), (12, 0, 2), (12, 6, 0), (6, 4, 0))
    assert v.certificate.D == 40
    assert v.certificate.check()


@pytest.mark.parametrize("D", [4, 16])
def test_verdict_unknown_when_reduction_is_odd(D):
    v = ver.two_colourability_verdict(D)
    assert v.status == "UNKNOWN"
    assert v.reduced == 1
    assert v.certificate is None


def test_verdict_rejects_odd_and_unrepresentable():
    with pytest.raises(ValueError):
        ver.two_colourability_verdict(5)
    with pytest.raises(ValueError):
        ver.two_colourability_verdict(28)


# --- chains -----------------------------------------------------------------


def test_chain_to_itself_is_one_step():
    c = ver.find_chain((1, 1, 0), (1, 1, 0), 8)
    assert c.steps == ((1, 1, 0),)
    assert c.check()


def test_chain_to_signed_permutation():
    c = ver.find_chain((1, 1, 0), (0, 1, 1), 8)
    assert c.steps == ((0, 1, 1),)
    assert c.length_parity == 1


def test_chain_even_parity_variant():
    c = ver.find_chain((1, 1, 0), (0, 1, 1), 8, parity=0)
    assert c.steps == ((1, 1, 0), (-1, 0, 1))
    assert c.length_parity == 0
    assert c.check()


def test_chain_longer_primitive():
    c = ver.find_chain((3, 1, 0), (0, 1, 1), 8)
    assert c.steps == ((3, 1, 0), (-3, 0, 1))


def test_chain_odd_parity_needs_three_steps():
    c = ver.find_chain((1, 1, 0), (2, 0, 0), 8, parity=1)
    assert c.steps == ((1, 1, 0), (1, 0, 1), (0, -1, -1))


def test_chain_preconditions():
    with pytest.raises(ValueError):
        ver.find_chain((2, 0, 0), (1, 1, 0), 5)  # gcd 2
    with pytest.raises(ValueError):
        ver.find_chain((1, 1, 1), (1, 1, 0), 5)  # odd coordinate sum
    with pytest.raises(ValueError):
        ver.find_chain((1, 1), (0, 1), 5)  # wrong dimension
    with pytest.raises(ValueError):
        ver.find_chain((1, 1, 0), (0, 1, 1), 5, parity=2)


def test_chain_unreachable_target():
    # steps stay on the even-coordinate-sum sublattice
    assert ver.find_chain((1, 1, 0), (1, 0, 0), 10) is None


def test_chain_transforms():
    c = ver.find_chain((1, 1, 0), (0, 1, 1), 8, parity=0)
    t = c.translated((5, -2, 7))
    assert t.start == (5, -2, 7)
    assert t.end == (5, -1, 8)
    assert t.check()
    s = c.scaled(3)
    assert s.primitive == (3, 3, 0)
    assert s.end == (0, 3, 3)
    assert s.check()


def test_chain_check_rejects_tampering():
    c = ver.find_chain((1, 1, 0), (0, 1, 1), 8)
    bad = ver.ChainCertificate(steps=((0, 1, 2),), start=c.start, end=c.end,
                               primitive=c.primitive,
                               length_parity=c.length_parity)
    assert not bad.check()
    bad2 = ver.ChainCertificate(steps=c.steps, start=c.start, end=(9, 9, 9),
                                primitive=c.primitive,
                                length_parity=c.length_parity)
    assert not bad2.check()


# --- replay -----------------------------------------------------------------


def test_replay_odd_cycle_round_trip():
    v = ver.two_colourability_verdict(10)
    obj = json.loads(json.dumps(v.certificate.to_json_dict()))
    ok, msg = ver.replay_certificate(obj)
    assert ok
    assert "5" in msg


def test_replay_chain_round_trip():
    c = ver.find_chain((3, 1, 0), (0, 1, 1), 8)
    obj = json.loads(json.dumps(c.to_json_dict()))
    ok, _ = ver.replay_certificate(obj)
    assert ok


def test_replay_rejects_tampered_and_unknown():
    v = ver.two_colourability_verdict(2)
    obj = v.certificate.to_json_dict()
    obj["points"][1] = [5, 5, 5]
    ok, _ = ver.replay_certificate(obj)
    assert not ok
    ok, msg = ver.replay_certificate({"kind": "nonsense"})
    assert not ok
    assert "nonsense" in msg
