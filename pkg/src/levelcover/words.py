"""Group words: elements of free groups and surface groups as written.

Grammar (whitespace is insignificant)::

    word    := factor*
    factor  := primary ('^' INT)*
    primary := IDENT | '1' | '[' word ',' word ']' | '(' word ')'
    IDENT   := [A-Za-z_][A-Za-z0-9_]*(-[0-9]+)?      e.g. x, a1, a-1

Juxtaposition is the product and ``[u,v] = u^-1 v^-1 u v``.  Identifiers
are read greedily, so ``xy`` is one generator named ``xy``; separate
generators with spaces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, TypeVar, Union

from .errors import UnknownGenerator, WordSyntaxError

T = TypeVar("T")


@dataclass(frozen=True)
class Commutator:
    left: "GroupWord"
    right: "GroupWord"


Base = Union[str, Commutator, "GroupWord"]


@dataclass(frozen=True)
class GroupWord:
    letters: tuple = ()

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __pow__(self, e: int) -> "GroupWord":
        if e == 0 or not self.letters:
            return GroupWord()
        if e == 1:
            return self
        if len(self.letters) == 1:
            base, x = self.letters[0]
            return GroupWord(((base, x * e),))
        return GroupWord(((self, e),))

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((b, -e) for b, e in reversed(self.letters)))

    def generators(self) -> set:
        out = set()
        for base, _ in self.letters:
            if isinstance(base, str):
                out.add(base)
            elif isinstance(base, Commutator):
                out |= base.left.generators() | base.right.generators()
            else:
                out |= base.generators()
        return out

    def check_alphabet(self, alphabet: Iterable[str]) -> None:
        alphabet = tuple(alphabet)
        for name in sorted(self.generators()):
            if name not in alphabet:
                raise UnknownGenerator(name, alphabet)

    def normalize(self) -> "GroupWord":
        """Drop zero exponents and trivial parts, merge equal neighbours."""
        out: list = []
        for base, e in self.letters:
            if isinstance(base, Commutator):
                left, right = base.left.normalize(), base.right.normalize()
                if not left or not right:
                    continue
                pieces = [(Commutator(left, right), e)]
            elif isinstance(base, GroupWord):
                inner = base.normalize()
                if len(inner.letters) == 1:
                    b, x = inner.letters[0]
                    pieces = [(b, x * e)]
                elif e == 1:
                    pieces = list(inner.letters)
                else:
                    pieces = [(inner, e)] if inner else []
            else:
                pieces = [(base, e)]
            for b, x in pieces:
                if x == 0:
                    continue
                if out and out[-1][0] == b:
                    x += out.pop()[1]
                    if x == 0:
                        continue
                out.append((b, x))
        return GroupWord(tuple(out))

    def __str__(self) -> str:
        return format_word(self)


def gen(name: str, e: int = 1) -> GroupWord:
    return GroupWord(((name, e),)) if e else GroupWord()


def comm(u: GroupWord, v: GroupWord, e: int = 1) -> GroupWord:
    return GroupWord(((Commutator(u, v), e),)) if e else GroupWord()


def product(words: Iterable[GroupWord]) -> GroupWord:
    letters: tuple = ()
    for w in words:
        letters += w.letters
    return GroupWord(letters)


IDENTITY = GroupWord()


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:-[0-9]+)?)"
    r"|(?P<int>[+-]?[0-9]+)|(?P<sym>[\^\[\],()]))"
)


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError("unexpected character", text, pos)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, value=None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise WordSyntaxError(f"expected {want!r}", self.text, tok[2])
        self.i += 1
        return tok

    def word(self) -> GroupWord:
        letters: tuple = ()
        while True:
            kind, value, _ = self.peek()
            if kind == "end" or (kind == "sym" and value in "],)"):
                return GroupWord(letters)
            letters += self.factor().letters

    def factor(self) -> GroupWord:
        w = self.primary()
        while self.peek()[:2] == ("sym", "^"):
            self.i += 1
            kind, value, pos = self.peek()
            if kind != "int":
                raise WordSyntaxError("expected integer exponent", self.text, pos)
            self.i += 1
            w = w ** int(value)
        return w

    def primary(self) -> GroupWord:
        kind, value, pos = self.peek()
        if kind == "ident":
            self.i += 1
            return gen(value)
        if kind == "int":
            if value != "1":
                raise WordSyntaxError("only the literal 1 may stand alone", self.text, pos)
            self.i += 1
            return GroupWord()
        if (kind, value) == ("sym", "["):
            self.i += 1
            left = self.word()
            self.take("sym", ",")
            right = self.word()
            self.take("sym", "]")
            return comm(left, right)
        if (kind, value) == ("sym", "("):
            self.i += 1
            inner = self.word()
            self.take("sym", ")")
            return inner
        raise WordSyntaxError("expected a generator, '[' or '('", self.text, pos)


def parse_word(text: str, alphabet: Iterable[str] | None = None) -> GroupWord:
    parser = _Parser(text)
    w = parser.word()
    kind, _, pos = parser.peek()
    if kind != "end":
        raise WordSyntaxError("unbalanced bracket", text, pos)
    if alphabet is not None:
        w.check_alphabet(alphabet)
    return w


def format_word(w: GroupWord) -> str:
    if not w.letters:
        return "1"
    parts = []
    for base, e in w.letters:
        if isinstance(base, str):
            s = base
        elif isinstance(base, Commutator):
            s = f"[{format_word(base.left)},{format_word(base.right)}]"
        else:
            s = f"({format_word(base)})"
        parts.append(s if e == 1 else f"{s}^{e}")
    return " ".join(parts)


# ---------------------------------------------------------- free group ops

def free_reduce(pairs: Iterable[tuple]) -> tuple:
    """Freely reduce a sequence of (generator, exponent) pairs."""
    out: list = []
    for name, e in pairs:
        if e == 0:
            continue
        if out and out[-1][0] == name:
            e += out.pop()[1]
            if e == 0:
                continue
        out.append((name, e))
    return tuple(out)


def expand(w: GroupWord) -> tuple:
    """The freely reduced flat form of ``w`` as (generator, exponent) pairs."""
    out: list = []
    for base, e in w.letters:
        if isinstance(base, str):
            out.append((base, e))
            continue
        if isinstance(base, Commutator):
            u, v = expand(base.left), expand(base.right)
            block = free_reduce(_inv(u) + _inv(v) + u + v)
        else:
            block = expand(base)
        if e < 0:
            block, e = _inv(block), -e
        out.extend(block * e)
    return free_reduce(out)


def _inv(pairs: tuple) -> tuple:
    return tuple((n, -e) for n, e in reversed(pairs))


def is_freely_trivial(w: GroupWord) -> bool:
    return not expand(w)


def substitute(w: GroupWord, images: Mapping[str, GroupWord]) -> GroupWord:
    """Apply the endomorphism sending each mapped generator to its image."""
    letters: list = []
    for base, e in w.letters:
        if isinstance(base, str):
            if base in images:
                letters.extend((images[base] ** e).letters)
            else:
                letters.append((base, e))
        elif isinstance(base, Commutator):
            c = Commutator(substitute(base.left, images), substitute(base.right, images))
            letters.append((c, e))
        else:
            letters.append((substitute(base, images), e))
    return GroupWord(tuple(letters))


def evaluate(
    w: GroupWord,
    leaf: Callable[[str], T],
    mul: Callable[[T, T], T],
    power: Callable[[T, int], T],
    identity: T,
    commutator: Callable[[T, T], T] | None = None,
) -> T:
    """Fold ``w`` into any group given by its operations."""
    if commutator is None:
        def commutator(a, b):
            return mul(mul(power(a, -1), power(b, -1)), mul(a, b))
    acc = identity
    for base, e in w.letters:
        if isinstance(base, str):
            x = leaf(base)
        elif isinstance(base, Commutator):
            x = commutator(
                evaluate(base.left, leaf, mul, power, identity, commutator),
                evaluate(base.right, leaf, mul, power, identity, commutator),
            )
        else:
            x = evaluate(base, leaf, mul, power, identity, commutator)
        acc = mul(acc, x if e == 1 else power(x, e))
    return acc
