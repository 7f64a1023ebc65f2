"""Acceptance criteria, one test (or parametrized family) per criterion.

Run directly with ``python3 tests/test_acceptance.py`` or through pytest;
either way a PASS/FAIL line per criterion is printed at the end.
"""

import random
import time
from contextlib import contextmanager

import pytest

from conftest import record_criterion
from levelcover import graphs as gr
from levelcover import nilpotent as nil
from levelcover import surface as sf
from levelcover.freenil import power_subgroup, power_subgroup_lattice
from levelcover.identities import check_identities, random_word, verify_congruence_identities
from levelcover.lattice import SubgroupLattice
from levelcover.magnus import magnus_eval

LEVELS = (3, 4, 5, 6, 7, 8, 9, 12)
GRID = dict(gs=(2, 3, 4), ks=(1, 2, 3), ns=(3, 4, 5, 6, 8, 9, 12))


@contextmanager
def criterion(number: int, label: str):
    """Record PASS only if the block finishes without an assertion error."""
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        record_criterion(number, ok, f"{label} ({time.perf_counter() - t0:.1f}s)")


def test_criterion_1_product_matches_series_oracle():
    with criterion(1, "coordinate product vs series oracle, 10^4 pairs"):
        rng = random.Random(1)
        t0 = time.perf_counter()
        bad = 0
        for _ in range(10_000):
            u, v = random_word(rng, 10), random_word(rng, 10)
            prod = nil.mul(nil.eval_word(u), nil.eval_word(v))
            if magnus_eval(nil.normal_form_word(prod)) != magnus_eval(u * v):
                bad += 1
        elapsed = time.perf_counter() - t0
        assert bad == 0, f"{bad} disagreements"
        assert elapsed < 30, f"took {elapsed:.1f}s"


def test_criterion_2_power_law():
    with criterion(2, "pow vs iterated mul, n in [-8, 20], 10^3 elements"):
        rng = random.Random(2)
        for _ in range(1000):
            a = nil.element(rng.randint(-30, 30) for _ in range(14))
            acc = nil.IDENTITY
            for n in range(0, 21):
                # pow asserts that every twelfth-denominator numerator divides exactly
                assert nil.pow(a, n) == acc
                acc = nil.mul(acc, a)
            inv = nil.inverse(a)
            acc = nil.IDENTITY
            for n in range(1, 9):
                acc = nil.mul(acc, inv)
                assert nil.pow(a, -n) == acc


@pytest.mark.parametrize("n", LEVELS)
def test_criterion_3_membership_congruences(n):
    with criterion(3, f"n={n}"):
        rng = random.Random(n)
        t0 = time.perf_counter()
        for _ in range(10_000):
            a = nil.element(rng.randint(-50, 50) for _ in range(14))
            assert nil.is_member(nil.pow(a, n), n), a
        # the explicit products plus n-th powers of generators span exactly the congruence lattice
        assert nil.witness_lattice(n) == nil.congruence_lattice(n)
        if n in (3, 4, 5, 6):
            assert power_subgroup_lattice(3, n, 4) == nil.congruence_lattice(n)
        assert time.perf_counter() - t0 < 300


@pytest.mark.parametrize("n", LEVELS)
def test_criterion_4_block_restrictions(n):
    with criterion(4, f"n={n}"):
        n2, n6 = nil.n_l(n, 2), nil.n_l(n, 6)
        sources = [nil.congruence_lattice(n, 3), nil.congruence_lattice(n, 4)]
        if n in (3, 4, 5, 6):
            sources = [power_subgroup(3, n, 4, 3).lattice(), power_subgroup(3, n, 4, 4).lattice()]
        depth3, depth4 = sources
        # degree-2 block of the depth-3 subgroup: n2 times the whole block
        assert depth3.restrict([3, 4, 5]) == SubgroupLattice.scaled_identity(3, n2)
        # degree-3 block of the depth-4 subgroup: n6 everywhere plus i9 + i10 in n2 Z
        rows = [[n6 if i == j else 0 for j in range(8)] for i in range(8)]
        rows[2] = [0, 0, n6, -n6, 0, 0, 0, 0]
        rows[3] = [0, 0, n2, 0, 0, 0, 0, 0]
        assert depth4.restrict(range(6, 14)) == SubgroupLattice(8, tuple(map(tuple, rows)))


@pytest.fixture(scope="module")
def grid():
    t0 = time.perf_counter()
    rows = sf.mono_grid(**GRID)
    return rows, time.perf_counter() - t0


def test_criterion_5_easy_inclusions(grid):
    rows, elapsed = grid
    with criterion(5, f"{sum(r['role'] == 'admissible' for r in rows)} admissible twists, grid {elapsed:.1f}s"):
        unknown = [r for r in rows if r["verdict"] == "Unknown"]
        assert not unknown, unknown[:3]
        bad = [r for r in rows if r["role"] == "admissible" and r["verdict"] != "Member"]
        assert not bad, bad[:3]
        assert elapsed < 600


def test_criterion_6_sharpness(grid):
    rows, _ = grid
    with criterion(6, f"{sum(r['role'] == 'violating' for r in rows)} minimal violations"):
        bad = [r for r in rows if r["role"] == "violating" and r["verdict"] != "NotMember"]
        assert not bad, bad[:3]
        # genus-one bridges at k=3 with n6 not dividing m fail through a genus-one reduction
        genus_one = [r for r in rows if r["kind"] == "bridge" and r["role"] == "violating"
                     and r["g1"] in (1, r["g"] - 1)]
        assert genus_one
        for r in genus_one:
            assert r["k"] == 3 and r["m"] % nil.n_l(r["n"], 6), r
            assert r["certificate"]["map"].startswith("genus-one"), r


def test_criterion_7_enumeration_counts():
    with criterion(7, "graph counts g=2: 7, g=3: 42"):
        assert len(gr.enumerate_stable_graphs(2)) == 7
        assert len(gr.enumerate_stable_graphs(3)) == 42


GLAD_CASES = [(g, k, n) for g in (2, 3) for k in (1, 2, 3) for n in range(3, 13)]
GLAD_CASES += [(g, 4, n) for g in (2, 3) for n in (5, 7, 11)]


@pytest.mark.parametrize("g,k", [(g, k) for g in (2, 3) for k in (1, 2, 3, 4)])
def test_criterion_7_smoothness_predicate(g, k):
    with criterion(7, f"g={g} k={k}"):
        mismatches = []
        for gg, kk, n in GLAD_CASES:
            if (gg, kk) != (g, k):
                continue
            v = gr.theorem_glad_check(g, k, n)
            if not v.matches:
                mismatches.append((n, v.smooth, v.predicted))
        assert not mismatches, f"(n, lattices smooth, predicted smooth): {mismatches}"


def test_criterion_8_identities():
    with criterion(8, "identities and power congruences, 10^3 each"):
        rep = check_identities(1000, seed=8)
        assert rep.ok, rep.counterexamples[:3]
        assert all(c == 1000 for c in rep.trials.values()) and len(rep.trials) == 5
        rep = verify_congruence_identities(1000, seed=8)
        assert rep.ok, rep.counterexamples[:3]
        assert rep.trials == {"power-of-product": 1000, "conjugation-power": 1000}


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
