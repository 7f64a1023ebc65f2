import os

import hypothesis
from hypothesis import strategies as st

from levelcover.words import GroupWord, comm, gen

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=2000, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> (ok, [detail, ...]); sub-cases of one criterion are AND-ed
ACCEPTANCE: dict = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    prev_ok, details = ACCEPTANCE.get(number, (True, []))
    ACCEPTANCE[number] = (prev_ok and ok, details + [detail if ok else f"{detail} [FAIL]"])


coords = st.integers(-9, 9)
elements = st.tuples(*[coords] * 14)
exponents = st.sampled_from([-3, -2, -1, 1, 2, 3])


def flat_words(names=("x", "y", "z"), max_size=10):
    letters = st.tuples(st.sampled_from(names), exponents)
    return st.lists(letters, max_size=max_size).map(lambda ls: GroupWord(tuple(ls)))


def nested_words(names=("x", "y", "z")):
    """Words with commutators and grouped powers, as the parser would build them."""
    leaf = st.builds(gen, st.sampled_from(names), exponents)

    def extend(inner):
        pair = st.tuples(inner, inner).filter(lambda p: p[0] and p[1])
        return st.one_of(
            st.builds(lambda p, e: comm(p[0], p[1], e), pair, exponents),
            st.lists(inner, min_size=2, max_size=3).map(lambda ws: GroupWord(sum((w.letters for w in ws), ()))),
            st.builds(lambda w, e: GroupWord(((w, e),)) if len(w.letters) > 1 else w, inner, exponents),
        )

    return st.recursive(leaf, extend, max_leaves=6)


def acceptance_lines() -> list:
    out = []
    for number in sorted(ACCEPTANCE):
        ok, details = ACCEPTANCE[number]
        out.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {'; '.join(details)}")
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines():
            terminalreporter.write_line(line)
