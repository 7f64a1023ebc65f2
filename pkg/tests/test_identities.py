import random

from levelcover.identities import (IdentityReport, check_identities, congruence_instances, identity_instances,
                                   verify_congruence_identities)
from levelcover.words import parse_word


def test_identities_hold():
    report = check_identities(200, seed=1)
    assert report.ok, report.counterexamples[:3]
    assert set(report.trials) == {"commute-mod-degree", "antisymmetry", "right-product",
                                  "left-product", "power-commutator"}


def test_congruences_hold():
    report = verify_congruence_identities(200, seed=2)
    assert report.ok, report.counterexamples[:3]
    assert report.trials == {"power-of-product": 200, "conjugation-power": 200}


def test_instances_are_reproducible():
    a = [str(x[1]) for x in identity_instances(random.Random(5))]
    b = [str(x[1]) for x in identity_instances(random.Random(5))]
    assert a == b
    assert len(list(congruence_instances(random.Random(0), 3))) == 2


def test_report_records_failures():
    r = IdentityReport()
    r.record("demo", parse_word("x"), parse_word("y"), False)
    assert not r.ok
    assert r.to_json()["counterexamples"] == [{"identity": "demo", "lhs": "x", "rhs": "y"}]
