import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import elements
from levelcover import nilpotent as N
from levelcover.errors import BoundTooSmall, UnsupportedDepth
from levelcover.freenil import (assembled_power_subgroup, free_group, power_subgroup,
                                power_subgroup_lattice, standard_names)
from levelcover.magnus import magnus_eval
from levelcover.words import GroupWord

F3 = free_group(("x", "y", "z"))


def test_dimensions():
    # Witt numbers for class <= 3: r + r(r-1)/2 + (r^3 - r)/3
    for r in range(1, 7):
        assert free_group(standard_names(r)).dim == r + r * (r - 1) // 2 + (r ** 3 - r) // 3


def test_rank_three_basis_matches_fixed_coordinates():
    assert F3.basis_words() == N.BASIS_WORDS


@given(elements, elements)
def test_rank_three_product_matches_fixed_formula(a, b):
    assert F3.mul(a, b) == tuple(N.mul(a, b))


@given(elements, st.integers(-6, 9))
def test_rank_three_pow_matches(a, e):
    assert F3.pow(a, e) == tuple(N.pow(a, e))


@pytest.mark.parametrize("rank", [2, 4, 5])
def test_magnus_agreement(rank):
    names = standard_names(rank)
    F = free_group(names)
    rng = random.Random(rank)
    for _ in range(60):
        letters = tuple((rng.choice(names), rng.choice((-2, -1, 1, 2))) for _ in range(rng.randint(0, 8)))

        w = GroupWord(letters)
        nf = F.normal_form_word(F.eval_word(w))
        assert magnus_eval(w, names) == magnus_eval(nf, names)


def test_rank_one_is_multiples():
    assert power_subgroup_lattice(1, 7).normal_form == ((7,),)


def test_rank_two_is_restriction_of_rank_three():
    # z -> 1 retracts onto <x,y>; the x, y, [x,y], [[x,y],x], [[x,y],y] coordinates
    for n in (3, 4, 5, 6):
        small = power_subgroup(2, n, 5).lattice()
        assert small == N.congruence_lattice(n).restrict([0, 1, 3, 6, 7])


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_assembled_rank_three_matches_direct(n):
    assert assembled_power_subgroup(("x", "y", "z"), n).lattice() == N.congruence_lattice(n)


@pytest.mark.parametrize("n", [3, 4])
def test_assembled_rank_four_matches_direct(n):
    direct = power_subgroup(4, n, 3).lattice()
    assert assembled_power_subgroup(standard_names(4), n).lattice() == direct


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(-2, 2)), max_size=4), st.sampled_from([2, 3, 4, 6]))
def test_powers_lie_in_assembled_subgroup(letters, n):
    names = standard_names(4)
    F = free_group(names)
    x = F.identity
    for i, e in letters:
        x = F.mul(x, F.unit(i, e))
    assert F.pow(x, n) in assembled_power_subgroup(names, n)


def test_commutator_outside_reported():
    P = power_subgroup(3, 6)
    bad = [0] * 14
    bad[8] = 1
    assert bad not in P
    assert P.failures(bad) == ["commutator part outside lattice"]
    assert P.failures((1,) + (0,) * 13) == ["x mod 6"]


def test_bound_too_small():
    with pytest.raises(BoundTooSmall):
        power_subgroup_lattice(2, 3, 0)
    with pytest.raises(BoundTooSmall):
        power_subgroup(3, 3, max_rounds=0)


def test_unsupported_depth():
    with pytest.raises(UnsupportedDepth):
        power_subgroup(3, 3, depth=5)
