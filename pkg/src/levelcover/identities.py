"""Randomized checks of the commutator calculus through the Magnus oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .magnus import magnus_eval
from .words import GroupWord, comm, expand, gen, product

VARIABLES = ("x", "y", "z")


@dataclass
class IdentityReport:
    trials: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def record(self, name: str, lhs: GroupWord, rhs: GroupWord, equal: bool) -> None:
        self.trials[name] = self.trials.get(name, 0) + 1
        if not equal:
            self.counterexamples.append({"identity": name, "lhs": str(lhs), "rhs": str(rhs)})

    def to_json(self) -> dict:
        return {"ok": self.ok, "trials": dict(self.trials), "counterexamples": list(self.counterexamples)}


def random_word(rng: random.Random, max_len: int = 4, names=VARIABLES) -> GroupWord:
    n = rng.randint(0, max_len)
    return GroupWord(tuple((rng.choice(names), rng.choice((-2, -1, 1, 2))) for _ in range(n)))


def random_in_gamma(rng: random.Random, depth: int, max_len: int = 3) -> GroupWord:
    """A random element of the depth-th lower central term (as a nested commutator)."""
    w = random_word(rng, max_len)
    for _ in range(depth - 1):
        w = comm(w, random_word(rng, max_len))
    return w


def _same(u: GroupWord, v: GroupWord) -> bool:
    return magnus_eval(u, VARIABLES) == magnus_eval(v, VARIABLES)


def _freely_equal(u: GroupWord, v: GroupWord) -> bool:
    return expand(u) == expand(v)


def identity_instances(rng: random.Random):
    """Yield (name, lhs, rhs, exact) for one random instantiation of each identity.

    ``exact`` marks identities that hold in the free group itself, not just
    modulo gamma_4.
    """
    a, b, c = (random_word(rng) for _ in range(3))
    k = rng.randint(1, 3)
    l = rng.randint(1, 4 - k)
    p, q = random_in_gamma(rng, k), random_in_gamma(rng, l)
    # elements of gamma_k and gamma_l commute modulo gamma_{k+l}; here k + l <= 4,
    # so check the commutator has no terms below degree k + l
    yield "commute-mod-degree", comm(p, q), (k + l, p, q), None
    yield "antisymmetry", comm(a, b), comm(b, a) ** -1, True
    yield "right-product", comm(a, b * c), comm(a, c) * comm(a, b) * comm(comm(a, b), c), True
    yield "left-product", comm(a * b, c), comm(a, c) * comm(comm(a, c), b) * comm(b, c), True
    i, j = rng.randint(-6, 6), rng.randint(-6, 6)
    ab = comm(a, b)
    rhs = ab ** (i * j) * comm(ab, a) ** (i * j * (i - 1) // 2) * comm(ab, b) ** (i * j * (j - 1) // 2)
    yield "power-commutator", comm(a ** i, b ** j), rhs, False


def check_identities(trials: int = 1000, seed: int = 0) -> IdentityReport:
    rng = random.Random(seed)
    report = IdentityReport()
    for _ in range(trials):
        for name, lhs, rhs, exact in identity_instances(rng):
            if exact is None:
                degree, p, q = rhs
                s = magnus_eval(lhs, VARIABLES)
                low = s.lowest_degree()
                ok = low is None or low >= degree
                report.record(name, lhs, comm(p, q), ok)
                continue
            ok = _same(lhs, rhs)
            if exact:
                ok = ok and _freely_equal(lhs, rhs)
            report.record(name, lhs, rhs, ok)
    return report


def random_commutator_product(rng: random.Random, factors: int = 2) -> GroupWord:
    """A random element of gamma_2, shaped like a product of handle commutators."""
    return product(comm(random_word(rng, 2), random_word(rng, 2)) for _ in range(factors))


def congruence_instances(rng: random.Random, m: int):
    alpha, beta = random_word(rng), random_word(rng)
    if not alpha:
        alpha = gen(rng.choice(VARIABLES))
    v = random_commutator_product(rng, rng.randint(1, 2))
    half = m * (m - 1) // 2
    vi = v ** -1
    yield (
        "power-of-product",
        (alpha * vi) ** m,
        alpha ** m * v ** -m * comm(vi, alpha) ** half,
    )
    bi = beta ** -1
    yield (
        "conjugation-power",
        alpha ** -m * beta * alpha ** m * bi,
        comm(alpha, bi) ** m * comm(comm(alpha, bi), alpha) ** half,
    )


def verify_congruence_identities(trials: int = 1000, seed: int = 0, m_range=range(0, 13)) -> IdentityReport:
    """The two power congruences used for cut pairs, with v ranging over gamma_2."""
    rng = random.Random(seed)
    report = IdentityReport()
    ms = list(m_range)
    for t in range(trials):
        m = ms[t % len(ms)]
        for name, lhs, rhs in congruence_instances(rng, m):
            report.record(name, lhs, rhs, _same(lhs, rhs))
    return report
