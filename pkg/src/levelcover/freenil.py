"""Free nilpotent groups of class 3 on any number of generators.

Coordinates generalize the rank-3 normal form: an element is written

    g_1^a_1 ... g_r^a_r * W

where ``W`` lies in gamma_2 / gamma_4, which is abelian.  Its basis is the
degree-2 commutators ``c_ij = [g_i, g_j]`` (i < j, ordered by ``(j - i, i)``)
followed by the degree-3 commutators ``[c_ij, g_k]`` for every k outside the
open interval (i, j).  The remaining ``[c_ij, g_k]`` with i < k < j are
rewritten through the Jacobi relation

    [c_ij, g_k] = [c_kj, g_i] [c_ik, g_j]   mod gamma_4.

For rank 3 this is exactly the 14-coordinate normal form of ``nilpotent``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BoundTooSmall, UnknownGenerator, UnsupportedDepth
from .lattice import Echelon, SubgroupLattice
from .words import GroupWord, comm, evaluate, gen, product


def _half(v: int) -> int:
    q, rem = divmod(v, 2)
    assert rem == 0
    return q


class FreeNilpotentGroup:
    """``F_r / gamma_4`` with collected coordinates."""

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        r = self.rank = len(self.names)
        if r < 1:
            raise ValueError("rank must be at least 1")
        self.index = {n: i for i, n in enumerate(self.names)}
        self.pairs = sorted(((i, j) for i in range(r) for j in range(i + 1, r)), key=lambda p: (p[1] - p[0], p[0]))
        self.triples = [(p, k) for p in self.pairs for k in range(r) if not p[0] < k < p[1]]
        self.pair_index = {p: r + t for t, p in enumerate(self.pairs)}
        off = r + len(self.pairs)
        self.triple_index = {t: off + u for u, t in enumerate(self.triples)}
        self.dim = off + len(self.triples)
        self.level_slices = (range(0, r), range(r, off), range(off, self.dim))
        # [c_p, g_k] as a combination of basis triples
        self._bracket = {}
        for p in self.pairs:
            i, j = p
            for k in range(r):
                if i < k < j:
                    self._bracket[p, k] = (self.triple_index[(k, j), i], self.triple_index[(i, k), j])
                else:
                    self._bracket[p, k] = (self.triple_index[p, k],)
        self.identity = (0,) * self.dim

    # ---------------------------------------------------------- structure
    def degree(self, c: int) -> int:
        for d, s in enumerate(self.level_slices, start=1):
            if c in s:
                return d
        raise IndexError(c)

    def content(self, c: int) -> frozenset:
        """Set of generator indices appearing in basis element ``c``."""
        r = self.rank
        if c < r:
            return frozenset((c,))
        if c < r + len(self.pairs):
            return frozenset(self.pairs[c - r])
        p, k = self.triples[c - r - len(self.pairs)]
        return frozenset(p) | {k}

    def basis_name(self, c: int) -> str:
        r, nm = self.rank, self.names
        if c < r:
            return nm[c]
        if c < r + len(self.pairs):
            i, j = self.pairs[c - r]
            return f"[{nm[i]},{nm[j]}]"
        (i, j), k = self.triples[c - r - len(self.pairs)]
        return f"[[{nm[i]},{nm[j]}],{nm[k]}]"

    def basis_words(self) -> tuple:
        g = [gen(n) for n in self.names]
        out = list(g)
        out += [comm(g[i], g[j]) for i, j in self.pairs]
        out += [comm(comm(g[i], g[j]), g[k]) for (i, j), k in self.triples]
        return tuple(out)

    def normal_form_word(self, a: Sequence[int]) -> GroupWord:
        return product(w ** e for w, e in zip(self.basis_words(), a) if e)

    def unit(self, c: int, e: int = 1) -> tuple:
        v = [0] * self.dim
        v[c] = e
        return tuple(v)

    # ---------------------------------------------------------- arithmetic
    def _beta(self, out: list, w: Sequence[int], e: Sequence[int]) -> None:
        """Add the degree-3 coordinates of [W, g^e] for W with degree-2 part ``w``."""
        r = self.rank
        ks = [(k, x) for k, x in enumerate(e[:r]) if x]
        if not ks:
            return
        for t, p in enumerate(self.pairs):
            b = w[r + t]
            if not b:
                continue
            for k, x in ks:
                for c in self._bracket[p, k]:
                    out[c] += b * x

    def _gen_comm(self, out: list, j: int, q: int, k: int, p: int) -> None:
        """Add [g_j^q, g_k^p] for j > k."""
        qp = q * p
        out[self.pair_index[k, j]] -= qp
        out[self.triple_index[(k, j), j]] -= _half(qp * (q - 1))
        out[self.triple_index[(k, j), k]] -= _half(qp * (p - 1))

    def _tail_comm(self, tail: list, k: int, p: int) -> list:
        """Coordinates of [T, g_k^p] for T = prod g_j^q over ``tail`` (all j > k)."""
        out = [0] * self.dim
        if not tail:
            return out
        (j, q), rest = tail[0], tail[1:]
        ub = [0] * self.dim
        self._gen_comm(ub, j, q, k, p)
        for c in range(self.dim):
            out[c] += ub[c]
        # [[u,b], w]
        ew = [0] * self.rank
        for jj, qq in rest:
            ew[jj] = qq
        self._beta(out, ub, ew)
        wb = self._tail_comm(rest, k, p)
        for c in range(self.dim):
            out[c] += wb[c]
        return out

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple:
        r = self.rank
        G = list(a[:r])
        W = [0] * self.dim
        for c in range(r, self.dim):
            W[c] = a[c]
        for k in range(r):
            p = b[k]
            if not p:
                continue
            e = [0] * r
            e[k] = p
            # W g_k^p = g_k^p W [W, g_k^p]
            self._beta(W, W, e)
            tail = [(j, G[j]) for j in range(k + 1, r) if G[j]]
            if tail:
                tc = self._tail_comm(tail, k, p)
                for c in range(r, self.dim):
                    W[c] += tc[c]
            G[k] += p
        for c in range(r, self.dim):
            W[c] += b[c]
        return tuple(G) + tuple(W[r:])

    def inverse(self, a: Sequence[int]) -> tuple:
        x = [0] * self.dim
        for s in self.level_slices:
            partial = self.mul(a, x)
            for c in s:
                x[c] = -partial[c]
        return tuple(x)

    def pow(self, a: Sequence[int], e: int) -> tuple:
        if e < 0:
            a, e = self.inverse(a), -e
        out = self.identity
        base = tuple(a)
        while e:
            if e & 1:
                out = self.mul(out, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return out

    def commutator(self, a: Sequence[int], b: Sequence[int]) -> tuple:
        return self.mul(self.mul(self.inverse(a), self.inverse(b)), self.mul(a, b))

    def generator(self, name: str) -> tuple:
        try:
            return self.unit(self.index[name])
        except KeyError:
            raise UnknownGenerator(name, self.names) from None

    def eval_word(self, w: GroupWord) -> tuple:
        return evaluate(w, self.generator, self.mul, self.pow, self.identity, self.commutator)

    def truncate(self, a: Sequence[int], cls: int) -> tuple:
        """Image in F / gamma_{cls+1}: drop coordinates of degree > cls."""
        return tuple(x if self.degree(c) <= cls else 0 for c, x in enumerate(a))


@lru_cache(maxsize=32)
def free_group(names: tuple) -> FreeNilpotentGroup:
    return FreeNilpotentGroup(names)


def standard_names(rank: int) -> tuple:
    if rank <= 3:
        return ("x", "y", "z")[:rank]
    return tuple(f"g{i}" for i in range(1, rank + 1))


# --------------------------------------------------------- power subgroups

def reduced_words(rank: int, length: int) -> Iterable[tuple]:
    """Freely reduced words as tuples of signed 1-based generator indices."""
    letters = [s * i for i in range(1, rank + 1) for s in (1, -1)]
    frontier = [()]
    yield ()
    for _ in range(length):
        nxt = []
        for w in frontier:
            for a in letters:
                if w and w[-1] == -a:
                    continue
                nxt.append(w + (a,))
        yield from nxt
        frontier = nxt


@dataclass(frozen=True)
class PowerSubgroup:
    """Coordinates of ``F^{(depth),n} / gamma_4`` for a free group of given rank.

    The set is ``n Z^rank`` on generators plus the lattice ``commutator_part``
    on the gamma_2 coordinates, which is a lattice because the generator
    powers ``g_i^n`` all lie in the subgroup.
    """

    group: FreeNilpotentGroup
    n: int
    depth: int
    commutator_part: SubgroupLattice  # in coordinates r..dim-1

    def lattice(self) -> SubgroupLattice:
        r, d = self.group.rank, self.group.dim
        rows = [self.group.unit(c, self.n) for c in range(r)]
        rows += [(0,) * r + tuple(row) for row in self.commutator_part.normal_form]
        return SubgroupLattice(d, tuple(rows))

    def failures(self, a: Sequence[int]) -> list[str]:
        r = self.group.rank
        bad = [f"{self.group.names[c]} mod {self.n}" for c in range(r) if a[c] % self.n]
        if bad:
            return bad
        # strip g^a, which lies in the subgroup
        g = tuple(a[:r]) + (0,) * (self.group.dim - r)
        rest = self.group.mul(self.group.inverse(g), a)
        if not self.commutator_part.echelon().contains(rest[r:]):
            bad.append("commutator part outside lattice")
        return bad

    def __contains__(self, a: Sequence[int]) -> bool:
        return not self.failures(a)


def _check_depth(depth: int) -> None:
    if depth not in (2, 3, 4):
        raise UnsupportedDepth(f"depth {depth} not in (2, 3, 4)")


def power_subgroup(rank: int, n: int, word_length_bound: int = 4, depth: int = 4,
                   names: Sequence[str] | None = None, max_rounds: int = 50) -> PowerSubgroup:
    """Saturate the n-th powers of short words into the subgroup they generate.

    Seeds are ``w^n`` for reduced words of length <= ``word_length_bound``
    and the n-th powers of the commutator basis; everything of degree >=
    ``depth`` is added outright.  The commutator lattice is then closed
    under brackets with the generators until its normal form repeats.
    """
    _check_depth(depth)
    if n < 1:
        raise ValueError("n must be positive")
    F = free_group(tuple(names) if names else standard_names(rank))
    r, d = F.rank, F.dim
    ech = Echelon(d - r)

    def add(v: Sequence[int]) -> None:
        ech.insert(tuple(v[r:]))

    for c in range(r, d):
        add(F.unit(c, 1 if F.degree(c) >= depth else n))
    for w in reduced_words(r, word_length_bound):
        x = F.identity
        for s in w:
            g = F.unit(abs(s) - 1, 1 if s > 0 else -1)
            x = F.mul(x, g)
        p = F.pow(x, n)
        head = tuple(p[:r]) + (0,) * (d - r)
        add(F.mul(F.inverse(head), p))
    # commutators of the generator powers with generators
    for i in range(r):
        for k in range(r):
            if i != k:
                add(F.commutator(F.unit(i, n), F.unit(k)))

    snapshot = ech.hnf()
    for _ in range(max_rounds):
        for row in snapshot:
            full = (0,) * r + tuple(row)
            for k in range(r):
                e = [0] * r
                e[k] = 1
                out = [0] * d
                F._beta(out, full, e)
                add(out)
        nxt = ech.hnf()
        if nxt == snapshot:
            return PowerSubgroup(F, n, depth, SubgroupLattice(d - r, nxt))
        snapshot = nxt
    raise BoundTooSmall(f"closure did not stabilize within {max_rounds} rounds")


def power_subgroup_lattice(rank: int, n: int, word_length_bound: int = 4, depth: int = 4) -> SubgroupLattice:
    """Coordinate lattice of the power subgroup, in the rank's standard coordinates."""
    if word_length_bound < 1:
        raise BoundTooSmall("word length bound must be at least 1")
    return power_subgroup(rank, n, word_length_bound, depth).lattice()


# ------------------------------------------- assembled power subgroups

@lru_cache(maxsize=None)
def _small(rank: int, n: int, depth: int) -> PowerSubgroup:
    return power_subgroup(rank, n, 4 if rank == 3 else 5, depth)


class AssembledPowerSubgroup:
    """Power subgroup of a free group of any rank, glued from ranks 2 and 3.

    Retractions onto sub-alphabets and inclusions of sub-alphabets both
    preserve power subgroups, so the commutator lattice splits by exact
    generator content, and each content piece is a copy of the rank-2 or
    rank-3 lattice under the order-preserving relabeling.
    """

    def __init__(self, names: Sequence[str], n: int, depth: int = 4):
        _check_depth(depth)
        self.group = free_group(tuple(names))
        self.n = n
        self.depth = depth
        F = self.group
        self._pieces = []  # (coordinate positions in F, small lattice echelon)
        for size in (2, 3):
            if F.rank < size:
                continue
            small = _small(size, n, depth)
            S = small.group
            ech = small.commutator_part.echelon()
            for subset in itertools.combinations(range(F.rank), size):
                pos = [self._image(S, subset, c) for c in range(S.rank, S.dim)]
                # keep only small coordinates of full content
                keep = [t for t, c in enumerate(range(S.rank, S.dim)) if len(S.content(c)) == size]
                self._pieces.append((subset, pos, keep, ech, S))

    def _image(self, S: FreeNilpotentGroup, subset: tuple, c: int) -> int:
        F = self.group
        sr = S.rank
        if c < sr + len(S.pairs):
            i, j = S.pairs[c - sr]
            return F.pair_index[subset[i], subset[j]]
        (i, j), k = S.triples[c - sr - len(S.pairs)]
        return F.triple_index[(subset[i], subset[j]), subset[k]]

    def failures(self, a: Sequence[int]) -> list[str]:
        F, r = self.group, self.group.rank
        bad = [f"{F.names[c]} mod {self.n}" for c in range(r) if a[c] % self.n]
        if bad:
            return bad
        g = tuple(a[:r]) + (0,) * (F.dim - r)
        rest = F.mul(F.inverse(g), a)
        covered = set()
        for subset, pos, keep, ech, S in self._pieces:
            vec = [0] * (S.dim - S.rank)
            for t in keep:
                vec[t] = rest[pos[t]]
                covered.add(pos[t])
            if any(vec) and not ech.contains(vec):
                names = ",".join(F.names[i] for i in subset)
                bad.append(f"content {{{names}}} outside lattice")
        # content of size > 3 does not occur in class 3
        assert all(c in covered for c in range(r, F.dim))
        return bad

    def __contains__(self, a: Sequence[int]) -> bool:
        return not self.failures(a)

    def lattice(self) -> SubgroupLattice:
        F, r = self.group, self.group.rank
        rows = [F.unit(c, self.n) for c in range(r)]
        for subset, pos, keep, ech, S in self._pieces:
            sub = SubgroupLattice(S.dim - S.rank, ech.hnf()).restrict(keep)
            for row in sub.normal_form:
                v = [0] * F.dim
                for t, x in zip(keep, row):
                    v[pos[t]] = x
                rows.append(tuple(v))
        return SubgroupLattice(F.dim, tuple(rows))


@lru_cache(maxsize=None)
def assembled_power_subgroup(names: tuple, n: int, depth: int = 4) -> AssembledPowerSubgroup:
    return AssembledPowerSubgroup(names, n, depth)
