import itertools

import pytest

from levelcover import graphs as G
from levelcover.errors import (Disconnected, GenusTooLarge, GenusTooSmall, Unstable,
                               UnsupportedParams)
from levelcover.lattice import SubgroupLattice

THETA = G.validate([("u", 0), ("v", 0)], [("a", "u", "v"), ("b", "u", "v"), ("c", "u", "v")])
BANANA = G.validate([("u", 1), ("v", 1)], [("a", "u", "v"), ("b", "u", "v")])
DUMBBELL = G.validate([("u", 0), ("v", 0)], [("l", "u", "u"), ("m", "u", "v"), ("r", "v", "v")])


def test_validation_errors():
    with pytest.raises(Unstable) as err:
        G.validate([("u", 0), ("v", 2)], [("a", "u", "v")])
    assert err.value.vertex == "u"
    with pytest.raises(Disconnected):
        G.validate([("u", 2), ("v", 2)], [])
    with pytest.raises(Unstable):
        G.validate([("u", 1)], [])
    with pytest.raises(GenusTooSmall):
        G.enumerate_stable_graphs(1)
    with pytest.raises(ValueError):
        G.validate([("u", 2)], [("a", "u", "w")])


def test_json_round_trip():
    assert G.from_json(BANANA.to_json()) == BANANA
    assert BANANA.genus == 3 and THETA.genus == 2


def test_classifications():
    c = G.classify_edges(THETA)
    assert c.bridges == () and c.cut_systems == () and c.plain == ("a", "b", "c")
    c = G.classify_edges(BANANA)
    assert c.cut_systems == (("a", "b"),) and c.bridges == ()
    c = G.classify_edges(DUMBBELL)
    assert c.bridges == ("m",) and c.genus_one_bridges == ("m",) and c.plain == ("l", "r")


def test_filtration_banana():
    F = G.filtration(BANANA)
    assert F.F1 == SubgroupLattice(2, ((1, -1),))
    assert F.F2 == SubgroupLattice.zero(2)


def test_stabilizer_examples():
    S = G.stabilizer_lattice(BANANA, 1, 5)
    assert S.lattice.normal_form == ((1, 4), (0, 5))
    assert not G.is_smooth_point(BANANA, 1, 5).smooth
    assert G.is_smooth_point(THETA, 2, 4).multipliers == {"a": 4, "b": 4, "c": 4}
    assert G.is_smooth_point(DUMBBELL, 2, 6).multipliers == {"l": 6, "m": 1, "r": 6}
    assert G.is_smooth_point(DUMBBELL, 3, 6).multipliers == {"l": 6, "m": 1, "r": 6}
    assert G.is_smooth_point(DUMBBELL, 3, 12).multipliers == {"l": 12, "m": 2, "r": 12}


def test_stabilizer_guards():
    with pytest.raises(UnsupportedParams):
        G.stabilizer_lattice(THETA, 1, 2)
    with pytest.raises(UnsupportedParams):
        G.stabilizer_lattice(THETA, 4, 6)
    assert G.stabilizer_lattice(THETA, 4, 5).lattice == SubgroupLattice.scaled_identity(3, 5)


def _connected(graph, drop):
    rest = [e for e in graph.edges if e[0] not in drop]
    return len(G._components(graph.vertex_ids, rest)) == 1


def brute_force(graph):
    ids = graph.edge_ids
    bridges = {e for e in ids if not _connected(graph, {e})}
    pairs = {(a, b) for a, b in itertools.combinations(ids, 2)
             if a not in bridges and b not in bridges and not _connected(graph, {a, b})}
    return bridges, pairs


ALL = [(g, H) for g in (2, 3, 4) for H in G.enumerate_stable_graphs(g)]


def test_enumeration_counts():
    assert [sum(1 for g, _ in ALL if g == h) for h in (2, 3, 4)] == [7, 42, 379]
    with pytest.raises(GenusTooLarge):
        G.enumerate_stable_graphs(5)


def test_classification_against_brute_force():
    for g, H in ALL:
        assert H.genus == g
        bridges, pairs = brute_force(H)
        c = G.classify_edges(H)
        assert set(c.bridges) == bridges
        assert G.cut_pairs(H) == pairs
        loops = {e for e, a, b in H.edges if a == b}
        assert not loops & bridges
        for b in c.genus_one_bridges:
            assert 1 in G.side_genera(H, b)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 12])
def test_lattice_chains(n):
    for _, H in ALL:
        F = G.filtration(H)
        assert F.F0.includes(F.F1) and F.F1.includes(F.F2) and F.F2.includes(F.F21)
        prev = None
        for k in (1, 2, 3):
            L = G.stabilizer_lattice(H, k, n, F).lattice
            assert F.F0.includes(L) and L.includes(F.F0.scale(n))
            if prev is not None:
                assert prev.includes(L)
            prev = L


def test_predicted_smooth():
    assert G.predicted_smooth(2, 1, 5) and not G.predicted_smooth(3, 1, 5)
    assert G.predicted_smooth(3, 3, 4) and not G.predicted_smooth(3, 3, 6)
    assert G.predicted_smooth(3, 4, 5)
    with pytest.raises(UnsupportedParams):
        G.predicted_smooth(3, 4, 6)


@pytest.mark.parametrize("g", [3, 4])
@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("n", [3, 4, 5, 6, 8, 10, 12])
def test_glad_agrees_from_genus_three(g, k, n):
    v = G.theorem_glad_check(g, k, n)
    assert v.matches, v.to_json()
