"""Exact arithmetic in the free nilpotent group <x,y,z> / gamma_4.

Elements are 14-tuples of exponents in the normal form

    x^i1 y^i2 z^i3 r^i4 s^i5 t^i6 [r,x]^i7 [r,y]^i8 [r,z]^i9
    [s,x]^i10 [s,y]^i11 [s,z]^i12 [t,x]^i13 [t,z]^i14

with r = [x,y], s = [y,z], t = [x,z] and [a,b] = a^-1 b^-1 a b.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .errors import UnknownGenerator, UnsupportedDepth
from .lattice import SubgroupLattice
from .magnus import magnus_eval
from .words import GroupWord, comm, evaluate, gen, parse_word, product

VARIABLES = ("x", "y", "z")
NAMES = (
    "x", "y", "z", "r", "s", "t",
    "[r,x]", "[r,y]", "[r,z]", "[s,x]", "[s,y]", "[s,z]", "[t,x]", "[t,z]",
)
DEGREES = (1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3)
GRADED_RANKS = (3, 3, 8)


class NilpotentElement(NamedTuple):
    i1: int = 0
    i2: int = 0
    i3: int = 0
    i4: int = 0
    i5: int = 0
    i6: int = 0
    i7: int = 0
    i8: int = 0
    i9: int = 0
    i10: int = 0
    i11: int = 0
    i12: int = 0
    i13: int = 0
    i14: int = 0

    def __mul__(self, other):  # type: ignore[override]
        return mul(self, other)

    def __pow__(self, e: int):
        return pow(self, e)

    def inverse(self) -> "NilpotentElement":
        return inverse(self)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self) + ")"


IDENTITY = NilpotentElement()


def element(coords: Iterable[int]) -> NilpotentElement:
    c = tuple(int(v) for v in coords)
    if len(c) != 14:
        raise ValueError(f"expected 14 coordinates, got {len(c)}")
    return NilpotentElement(*c)


def basis(k: int) -> NilpotentElement:
    """The k-th normal-form basis element, 1-based."""
    c = [0] * 14
    c[k - 1] = 1
    return NilpotentElement(*c)


def _half(v: int) -> int:
    q, rem = divmod(v, 2)
    assert rem == 0, v
    return q


def mul(a: Sequence[int], b: Sequence[int]) -> NilpotentElement:
    i1, i2, i3, i4, i5, i6, i7, i8, i9, i10, i11, i12, i13, i14 = a
    j1, j2, j3, j4, j5, j6, j7, j8, j9, j10, j11, j12, j13, j14 = b
    h = _half
    return NilpotentElement(
        i1 + j1,
        i2 + j2,
        i3 + j3,
        i4 + j4 - i2 * j1,
        i5 + j5 - i3 * j2,
        i6 + j6 - i3 * j1,
        i7 + j7 + i4 * j1 - h((j1 - 1) * j1) * i2,
        i8 + j8 + i4 * j2 - h((i2 - 1) * i2) * j1 - i2 * j1 * j2,
        i9 + j9 + i4 * j3 + i6 * j2 - i2 * i3 * j1 - i2 * j1 * j3 - i3 * j1 * j2,
        i10 + j10 + i5 * j1 + i6 * j2 - i3 * j1 * j2,
        i11 + j11 + i5 * j2 - h((j2 - 1) * j2) * i3,
        i12 + j12 + i5 * j3 - h((i3 - 1) * i3) * j2 - i3 * j2 * j3,
        i13 + j13 + i6 * j1 - h((j1 - 1) * j1) * i3,
        i14 + j14 + i6 * j3 - h((i3 - 1) * i3) * j1 - i3 * j1 * j3,
    )


def _div12(num: int) -> int:
    q, rem = divmod(num, 12)
    assert rem == 0, f"power coefficient {num}/12 is not an integer"
    return q


def _pow_nonneg(a: Sequence[int], n: int) -> NilpotentElement:
    i1, i2, i3, i4, i5, i6, i7, i8, i9, i10, i11, i12, i13, i14 = a
    P = (n - 1) * n
    A = _half(P)
    Q = P * (2 * n - 1)  # 12 * (n-1)n(2n-1)/12
    C3 = 3 * P  # 12 * (n-1)n/4
    # every degree-3 coordinate is n*i + A*(..) + (terms over 12)
    return NilpotentElement(
        n * i1,
        n * i2,
        n * i3,
        n * i4 - A * i2 * i1,
        n * i5 - A * i3 * i2,
        n * i6 - A * i3 * i1,
        n * i7 + A * i4 * i1 + _div12(-Q * i1 * i1 * i2 + C3 * i1 * i2),
        n * i8 + A * i4 * i2 + _div12(-2 * Q * i1 * i2 * i2 + C3 * i1 * i2 - C3 * i1 * i2 * i2),
        n * i9 + A * i4 * i3 + A * i6 * i2 + _div12(-4 * Q * i3 * i1 * i2) - A * i1 * i2 * i3,
        n * i10 + A * i5 * i1 + A * i6 * i2 + _div12(-2 * Q * i3 * i1 * i2),
        n * i11 + A * i5 * i2 + _div12(-Q * i2 * i2 * i3 + C3 * i2 * i3),
        n * i12 + A * i5 * i3 + _div12(-2 * Q * i2 * i3 * i3 + C3 * i3 * i2 - C3 * i2 * i3 * i3),
        n * i13 + A * i6 * i1 + _div12(-Q * i1 * i1 * i3 + C3 * i1 * i3),
        n * i14 + A * i6 * i3 + _div12(-2 * Q * i1 * i3 * i3 + C3 * i3 * i1 - C3 * i1 * i3 * i3),
    )


def pow(a: Sequence[int], n: int) -> NilpotentElement:  # noqa: A001 - mirrors the group notation
    """``a**n`` by the closed-form power law; negative n goes through the inverse."""
    if n < 0:
        return _pow_nonneg(inverse(a), -n)
    return _pow_nonneg(a, n)


def inverse(a: Sequence[int]) -> NilpotentElement:
    """Solve mul(a, x) = 1 one graded level at a time."""
    x = [0] * 14
    for lo, hi in ((0, 3), (3, 6), (6, 14)):
        partial = mul(a, x)
        for k in range(lo, hi):
            x[k] = -partial[k]
    return NilpotentElement(*x)


def commutator(a: Sequence[int], b: Sequence[int]) -> NilpotentElement:
    return mul(mul(inverse(a), inverse(b)), mul(a, b))


_LEAVES = {"x": basis(1), "y": basis(2), "z": basis(3)}


def _leaf(name: str) -> NilpotentElement:
    try:
        return _LEAVES[name]
    except KeyError:
        raise UnknownGenerator(name, VARIABLES) from None


def eval_word(w: GroupWord | str) -> NilpotentElement:
    if isinstance(w, str):
        w = parse_word(w, VARIABLES)
    return evaluate(w, _leaf, mul, pow, IDENTITY, commutator)


_X, _Y, _Z = gen("x"), gen("y"), gen("z")
_R, _S, _T = comm(_X, _Y), comm(_Y, _Z), comm(_X, _Z)
BASIS_WORDS = (
    _X, _Y, _Z, _R, _S, _T,
    comm(_R, _X), comm(_R, _Y), comm(_R, _Z),
    comm(_S, _X), comm(_S, _Y), comm(_S, _Z),
    comm(_T, _X), comm(_T, _Z),
)


def normal_form_word(a: Sequence[int]) -> GroupWord:
    return product(w ** e for w, e in zip(BASIS_WORDS, a) if e)


def oracle_agreement(w: GroupWord | str) -> bool:
    """Coordinates of ``w`` rebuilt as a word give the same Magnus series as ``w``."""
    if isinstance(w, str):
        w = parse_word(w, VARIABLES)
    return magnus_eval(w, VARIABLES) == magnus_eval(normal_form_word(eval_word(w)), VARIABLES)


# ------------------------------------------------------------ membership

@dataclass(frozen=True)
class LevelParams:
    n: int
    k: int = 3

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("level n must be positive")
        if self.k < 1:
            raise ValueError("depth k must be positive")

    @property
    def n2(self) -> int:
        return n_l(self.n, 2)

    @property
    def n6(self) -> int:
        return n_l(self.n, 6)


def n_l(n: int, l: int) -> int:
    return n // gcd(l, n)


def congruence_failures(a: Sequence[int], n: int, depth: int = 4) -> list[str]:
    """Names of the congruences that ``a`` violates for the depth-``depth`` power subgroup."""
    if depth not in (2, 3, 4):
        raise UnsupportedDepth(f"depth {depth} not in (2, 3, 4)")
    n2, n6 = n_l(n, 2), n_l(n, 6)
    bad = [f"i{k} mod {n}" for k in (1, 2, 3) if a[k - 1] % n]
    if depth >= 3:
        bad += [f"i{k} mod {n2}" for k in (4, 5, 6) if a[k - 1] % n2]
    if depth == 4:
        bad += [f"i{k} mod {n6}" for k in range(7, 15) if a[k - 1] % n6]
        if (a[8] + a[9]) % n2:
            bad.append(f"i9+i10 mod {n2}")
    return bad


def is_member(a: Sequence[int], n: int, depth: int = 4) -> bool:
    return not congruence_failures(a, n, depth)


def congruence_lattice(n: int, depth: int = 4) -> SubgroupLattice:
    """The coordinate lattice cut out by the congruences, inside Z^14."""
    if depth not in (2, 3, 4):
        raise UnsupportedDepth(f"depth {depth} not in (2, 3, 4)")
    n2, n6 = n_l(n, 2), n_l(n, 6)
    diag = [n] * 3 + ([n2] * 3 if depth >= 3 else [1] * 3) + ([n6] * 8 if depth == 4 else [1] * 8)
    rows = [[diag[i] if i == j else 0 for j in range(14)] for i in range(14)]
    if depth == 4:
        rows[8] = [0] * 14
        rows[8][8], rows[8][9] = n6, -n6
        rows[9] = [0] * 14
        rows[9][8] = n2
    return SubgroupLattice(14, tuple(tuple(r) for r in rows))


# --------------------------------------------- explicit generating products

def _pw(w: str, n: int) -> GroupWord:
    return parse_word(w) ** n


def witness_products(n: int) -> dict[str, NilpotentElement]:
    """Products of n-th powers that together span the depth-4 congruence lattice.

    ``a``, ``b``, ``c`` live in the [r,x], [r,y] corner; the ``_yz`` and
    ``_xz`` variants are their images under x,y -> y,z and x,y -> x,z.
    """
    def abc(p: str, q: str) -> dict[str, GroupWord]:
        return {
            "a": _pw(p, n) * _pw(f"{p}^-1 {q}", n) * _pw(q, -n),
            "b": _pw(p, -n) * _pw(f"{p} {q}", n) * _pw(q, -n),
            "c": _pw(p, n) * _pw(f"{p}^-1 {q}^-1", n) * _pw(q, n),
        }

    words: dict[str, GroupWord] = {}
    for suffix, (p, q) in (("", ("x", "y")), ("_yz", ("y", "z")), ("_xz", ("x", "z"))):
        for name, w in abc(p, q).items():
            words[name + suffix] = w
    words["d"] = _pw("z", -n) * _pw("z [x,y]", n) * _pw("[x,y]", -n)
    words["e"] = _pw("x", -n) * _pw("x [y,z]", n) * _pw("[y,z]", -n)
    words["final"] = _pw("x", -n) * _pw("y", -n) * _pw("z", -n) * _pw("x y z", n)
    return {name: eval_word(w) for name, w in words.items()}


def witness_lattice(n: int) -> SubgroupLattice:
    """Span of the witness products together with n-th powers of the basis elements."""
    rows = [tuple(v) for v in witness_products(n).values()]
    rows += [tuple(pow(basis(k), n)) for k in range(1, 15)]
    return SubgroupLattice(14, tuple(rows))
