import pytest

from levelcover import nilpotent as N
from levelcover import surface as S
from levelcover.errors import (BadSplit, GenusTooSmall, RelatorNotKilled, UnknownGenerator,
                               UnsupportedDepth)
from levelcover.words import expand, parse_word


def test_presentation():
    P = S.surface_group(2)
    assert P.generators == ("a1", "a-1", "a2", "a-2")
    assert str(P.relator) == "[a1,a-1] [a2,a-2]"
    with pytest.raises(GenusTooSmall):
        S.surface_group(1)


def test_bad_splits():
    with pytest.raises(BadSplit):
        S.twist_bridge(3, 0)
    with pytest.raises(BadSplit):
        S.twist_bridge(3, 3)
    with pytest.raises(BadSplit):
        S.cutpair_difference(2, 1)
    with pytest.raises(GenusTooSmall):
        S.twist_nonsep(1)
    with pytest.raises(ValueError):
        S.make_twist("spiral", 3)


def test_endomorphism_rejects_foreign_generators():
    with pytest.raises(UnknownGenerator):
        S.Endomorphism.from_map(2, {"a3": parse_word("a1")})


def shapes(gs=(2, 3, 4)):
    for g in gs:
        for kind, g1, edge in S.configurations(g):
            yield kind, g, g1, edge


@pytest.mark.parametrize("kind,g,g1,edge", list(shapes((2, 3))))
def test_closed_form_equals_iteration(kind, g, g1, edge):
    t = S.make_twist(kind, g, g1, 1, edge)
    acc = S.identity(g)
    for m in range(1, 4):
        acc = S.compose(t, acc)
        assert S.freely_equal(acc, S.make_twist(kind, g, g1, m, edge))


@pytest.mark.parametrize("kind,g,g1,edge", list(shapes((3,))))
def test_powers_add(kind, g, g1, edge):
    t = S.make_twist(kind, g, g1, 1, edge)
    for a, b in ((2, 3), (-2, 5), (4, -4)):
        assert S.freely_equal(S.compose(t.power(a), t.power(b)), t.power(a + b))
    assert S.freely_equal(S.compose(t.power(-3), t.power(3)), S.identity(g))


def test_cutpair_difference_is_quotient_of_edges():
    e1, e2 = S.twist_cutpair(3, 1, 1)
    # D_e2 D_e1^-1 as substitutions
    assert S.freely_equal(S.compose(e2, e1.power(-1)), S.cutpair_difference(3, 1, 1))


@pytest.mark.parametrize("kind,g,g1,edge", list(shapes()))
def test_relator_stays_in_normal_closure(kind, g, g1, edge):
    t = S.make_twist(kind, g, g1, 2, edge)
    image = t(S.surface_group(g).relator)
    for c in range(1, g):
        for hom, _ in S.catalog(g, c).values():
            assert not expand(hom.image_word(image))


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_catalog_relators_killed(g):
    for g1 in range(1, g):
        for label, (hom, a) in S.catalog(g, g1).items():
            assert hom.label == label
            assert a in S.generator_names(g)


def test_relator_not_killed():
    with pytest.raises(RelatorNotKilled):
        S.reduction_hom(2, {"a1": "x", "a-1": "y"})


@pytest.mark.parametrize("m", range(-3, 6))
def test_cutpair_naturality(m):
    t = S.cutpair_difference(3, 1, m)
    hom, a = S.catalog(3, 1)["cut-pair"]
    assert hom.push_forward(t.displacement(a)) == N.eval_word(f"z^{-m} (z [y,x])^{m}")


@pytest.mark.parametrize("g,g1", [(4, 2)])
def test_separating_naturality(g, g1):
    t = S.twist_bridge(g, g1, 1)
    hom, a = S.catalog(g, g1)["separating"]
    # the near product maps to [x,y] and a_{g1+1} to z^-1
    assert hom.push_forward(t.displacement(a)) == N.eval_word("[x,y]^-1 z^-1 [x,y] z")


def test_m_zero_is_member():
    assert S.check_twist(S.twist_bridge(3, 1, 0), 3, 5).status == "Member"


def test_depth_and_level_guards():
    t = S.twist_nonsep(2, 3)
    with pytest.raises(UnsupportedDepth):
        S.check_twist(t, 4, 3)
    with pytest.raises(ValueError):
        S.check_twist(t, 1, 2)


def test_verdict_examples():
    assert S.check_displacement("nonsep", 2, 0, 5, 1, 5).status == "Member"
    v = S.check_displacement("nonsep", 2, 0, 1, 1, 5)
    assert v.status == "NotMember" and v.certificate["map"] == "abelianization"
    assert S.check_displacement("bridge", 3, 1, 1, 2, 5).status == "Member"
    v = S.check_displacement("bridge", 3, 1, 1, 3, 5)
    assert v.status == "NotMember" and v.certificate["map"] == "genus-one-near"
    assert S.check_displacement("bridge", 4, 2, 3, 3, 6).status == "Member"
    assert S.check_displacement("bridge", 4, 2, 1, 3, 6).status == "NotMember"
    # n = 6 is 2 mod 4, so half the level suffices for the difference twist
    assert S.check_displacement("cutpair", 3, 1, 3, 3, 6, "diff").status == "Member"
    assert S.check_displacement("cutpair", 3, 1, 2, 3, 6, "diff").status == "NotMember"
    assert S.check_displacement("cutpair", 3, 1, 6, 3, 12, "diff").status == "NotMember"


def test_mono_condition_table():
    assert S.minimal_multiple("bridge", 3, 1, 3, 12) == 2
    assert S.minimal_multiple("bridge", 4, 2, 3, 12) == 6
    assert S.minimal_multiple("cutpair", 3, 1, 2, 12, "diff") == 6
    assert S.minimal_multiple("cutpair", 3, 1, 3, 6, "diff") == 3
    assert S.minimal_multiple("cutpair", 3, 1, 3, 12, "diff") == 12
    assert S.minimal_violation("bridge", 3, 1, 2, 12) is None


def test_twist_json_round_trip():
    t = S.cutpair_difference(4, 2, 3)
    assert S.twist_from_json(t.to_json()) == t


def test_bridge_representatives_are_outer_equivalent():
    t = S.twist_bridge(3, 1, 2)
    reps = S.bridge_representatives(t)
    assert [r[0] for r in reps][0] == "far side, near handles"
    hom, a = S.catalog(3, 1)["genus-one-near"]
    # reductions see every lift up to conjugation, so the abelianized images agree
    base = hom.push_forward(reps[0][1].image(a))
    for _, rep in reps[1:]:
        assert hom.push_forward(rep.image(a))[:3] == base[:3]
