"""Magnus oracle: free groups in degree-3 truncated noncommutative series.

A generator ``g`` goes to ``1 + X_g``.  Products are truncated at total
degree 4, which is a two-sided ideal, so the map is a homomorphism of the
free group into the units of the truncated algebra.  It is faithful on the
class-3 quotient ``F / gamma_4``.

Coefficients are exact Python integers stored in numpy object arrays.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import UnknownGenerator
from .words import Commutator, GroupWord

DEGREE = 3


def _binom(e: int, d: int) -> int:
    num = 1
    for t in range(d):
        num *= e - t
    den = 1
    for t in range(2, d + 1):
        den *= t
    return num // den


class TruncatedSeries:
    """Graded coefficients ``(c0, c1, c2, c3)``; ``c_d`` has shape ``(v,)*d``."""

    __slots__ = ("v", "parts")

    def __init__(self, v: int, parts):
        self.v = v
        self.parts = tuple(parts)

    @classmethod
    def one(cls, v: int) -> "TruncatedSeries":
        return cls(v, [1] + [np.zeros((v,) * d, dtype=object) for d in range(1, DEGREE + 1)])

    def copy(self) -> "TruncatedSeries":
        return TruncatedSeries(self.v, [self.parts[0]] + [p.copy() for p in self.parts[1:]])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return TruncatedSeries(self.v, [a + b for a, b in zip(self.parts, other.parts)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return TruncatedSeries(self.v, [a - b for a, b in zip(self.parts, other.parts)])

    def scale(self, c: int) -> "TruncatedSeries":
        return TruncatedSeries(self.v, [c * p for p in self.parts])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        a0, a1, a2, a3 = self.parts
        b0, b1, b2, b3 = other.parts
        outer = np.multiply.outer
        return TruncatedSeries(
            self.v,
            [
                a0 * b0,
                a0 * b1 + a1 * b0,
                a0 * b2 + outer(a1, b1) + a2 * b0,
                a0 * b3 + outer(a1, b2) + outer(a2, b1) + a3 * b0,
            ],
        )

    def __pow__(self, e: int) -> "TruncatedSeries":
        """Integer power of a series with constant term 1."""
        if self.parts[0] != 1:
            raise ValueError("only series with constant term 1 are invertible here")
        u = TruncatedSeries(self.v, [0] + list(self.parts[1:]))
        out = TruncatedSeries.one(self.v)
        term = TruncatedSeries.one(self.v)
        for d in range(1, DEGREE + 1):
            term = term * u
            c = _binom(e, d)
            if c:
                out = out + term.scale(c)
        return out

    def inverse(self) -> "TruncatedSeries":
        return self ** -1

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries) or other.v != self.v:
            return NotImplemented
        return self.parts[0] == other.parts[0] and all(
            np.array_equal(a, b) for a, b in zip(self.parts[1:], other.parts[1:])
        )

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        return (self.parts[0],) + tuple(tuple(p.ravel().tolist()) for p in self.parts[1:])

    def is_one(self) -> bool:
        return self.parts[0] == 1 and all(not p.any() for p in self.parts[1:])

    def lowest_degree(self) -> int | None:
        """Smallest positive degree with a nonzero coefficient, if any."""
        for d in range(1, DEGREE + 1):
            if self.parts[d].any():
                return d
        return None

    def coefficient(self, word: Sequence[int]) -> int:
        if not word:
            return self.parts[0]
        return self.parts[len(word)][tuple(word)]

    def __repr__(self) -> str:
        terms = []
        for d in range(DEGREE + 1):
            if d == 0:
                if self.parts[0]:
                    terms.append(str(self.parts[0]))
                continue
            for idx in np.ndindex(*self.parts[d].shape):
                c = self.parts[d][idx]
                if c:
                    terms.append(f"{c}*X{''.join(map(str, idx))}")
        return "TruncatedSeries(" + (" + ".join(terms) or "0") + ")"


def commutator(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a.inverse() * b.inverse() * a * b


class MagnusOracle:
    """Evaluator of words over a fixed ordered alphabet."""

    def __init__(self, variables: Sequence[str]):
        if not variables:
            raise ValueError("alphabet must contain at least one generator")
        self.variables = tuple(variables)
        self.index = {name: i for i, name in enumerate(self.variables)}
        self.v = len(self.variables)
        self._eval = lru_cache(maxsize=4096)(self._eval_uncached)
        self._base = lru_cache(maxsize=4096)(self._base_uncached)
        self._gen = lru_cache(maxsize=1024)(self._generator_uncached)

    def one(self) -> TruncatedSeries:
        return TruncatedSeries.one(self.v)

    def generator(self, name: str, e: int = 1) -> TruncatedSeries:
        return self._gen(name, e)

    def _generator_uncached(self, name: str, e: int) -> TruncatedSeries:
        try:
            i = self.index[name]
        except KeyError:
            raise UnknownGenerator(name, self.variables) from None
        s = TruncatedSeries.one(self.v)
        s.parts[1][i] = e
        s.parts[2][i, i] = _binom(e, 2)
        s.parts[3][i, i, i] = _binom(e, 3)
        return s

    def __call__(self, w: GroupWord) -> TruncatedSeries:
        return self._eval(w)

    def _eval_uncached(self, w: GroupWord) -> TruncatedSeries:
        acc = self.one()
        for base, e in w.letters:
            if isinstance(base, str):
                acc = acc * self.generator(base, e)
                continue
            acc = acc * self._base(base, e)
        return acc

    def _base_uncached(self, base, e: int) -> TruncatedSeries:
        if e != 1:
            return self._base(base, 1) ** e
        if isinstance(base, Commutator):
            return commutator(self._eval(base.left), self._eval(base.right))
        return self._eval(base)


@lru_cache(maxsize=64)
def oracle(variables: tuple) -> MagnusOracle:
    return MagnusOracle(variables)


def magnus_eval(w: GroupWord, variables: Sequence[str] = ("x", "y", "z")) -> TruncatedSeries:
    return oracle(tuple(variables))(w)
