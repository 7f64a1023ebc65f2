"""Integer lattices in Z^d kept in row-style Hermite normal form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


class Echelon:
    """Incremental echelon basis: one row per pivot column.

    Rows are kept with positive pivots.  ``insert`` is a gcd-merge, so the
    row set always spans exactly the lattice of everything inserted.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: dict[int, list[int]] = {}

    def copy(self) -> "Echelon":
        e = Echelon(self.dim)
        e.rows = {c: list(r) for c, r in self.rows.items()}
        return e

    def insert(self, vec: Sequence[int]) -> bool:
        """Add ``vec``; return True if the lattice grew."""
        v = list(vec)
        grew = False
        for c in range(self.dim):
            if not v[c]:
                continue
            row = self.rows.get(c)
            if row is None:
                if v[c] < 0:
                    v = [-x for x in v]
                self.rows[c] = v
                return True
            p = row[c]
            if v[c] % p == 0:
                q = v[c] // p
                v = [a - q * b for a, b in zip(v, row)]
                continue
            g, s, t = _xgcd(row[c], v[c])
            a, b = row[c] // g, v[c] // g
            new = [s * x + t * y for x, y in zip(row, v)]
            v = [a * y - b * x for x, y in zip(row, v)]
            self.rows[c] = new
            grew = True
        return grew

    def reduce(self, vec: Sequence[int]) -> list[int]:
        v = list(vec)
        for c in sorted(self.rows):
            row = self.rows[c]
            q = v[c] // row[c]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return v

    def contains(self, vec: Sequence[int]) -> bool:
        v = list(vec)
        for c in range(self.dim):
            if not v[c]:
                continue
            row = self.rows.get(c)
            if row is None or v[c] % row[c]:
                return False
            q = v[c] // row[c]
            v = [a - q * b for a, b in zip(v, row)]
        return True

    def hnf(self) -> tuple:
        cols = sorted(self.rows)
        rows = [list(self.rows[c]) for c in cols]
        for i, c in enumerate(cols):
            for j in range(i):
                q = rows[j][c] // rows[i][c]
                if q:
                    rows[j] = [a - q * b for a, b in zip(rows[j], rows[i])]
        return tuple(tuple(r) for r in rows)


def hnf(rows: Iterable[Sequence[int]], dim: int) -> tuple:
    """Row-style HNF: positive pivots, entries above a pivot reduced into [0, pivot)."""
    e = Echelon(dim)
    for r in rows:
        if len(r) != dim:
            raise ValueError(f"row of length {len(r)} in a rank-{dim} lattice")
        e.insert(r)
    return e.hnf()


@dataclass(frozen=True)
class SubgroupLattice:
    rank: int
    generators: tuple = ()
    normal_form: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "normal_form", hnf(gens, self.rank))

    # equality is by normal form only
    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupLattice):
            return NotImplemented
        return self.rank == other.rank and self.normal_form == other.normal_form

    def __hash__(self):
        return hash((self.rank, self.normal_form))

    @classmethod
    def zero(cls, rank: int) -> "SubgroupLattice":
        return cls(rank, ())

    @classmethod
    def full(cls, rank: int) -> "SubgroupLattice":
        return cls.scaled_identity(rank, 1)

    @classmethod
    def scaled_identity(cls, rank: int, n: int) -> "SubgroupLattice":
        return cls(rank, tuple(tuple(n if i == j else 0 for j in range(rank)) for i in range(rank)))

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "SubgroupLattice":
        d = len(entries)
        return cls(d, tuple(tuple(entries[i] if i == j else 0 for j in range(d)) for i in range(d)))

    def echelon(self) -> Echelon:
        e = Echelon(self.rank)
        for r in self.normal_form:
            e.insert(r)
        return e

    def __contains__(self, vec: Sequence[int]) -> bool:
        return self.echelon().contains(vec)

    def contains(self, vec: Sequence[int]) -> bool:
        return vec in self

    def __add__(self, other: "SubgroupLattice") -> "SubgroupLattice":
        if other.rank != self.rank:
            raise ValueError("rank mismatch")
        return SubgroupLattice(self.rank, self.normal_form + other.normal_form)

    def scale(self, c: int) -> "SubgroupLattice":
        return SubgroupLattice(self.rank, tuple(tuple(c * x for x in r) for r in self.normal_form))

    def includes(self, other: "SubgroupLattice") -> bool:
        e = self.echelon()
        return all(e.contains(r) for r in other.normal_form)

    def dimension(self) -> int:
        return len(self.normal_form)

    def index(self) -> int | None:
        """Index in Z^rank, or None when the lattice is not full rank."""
        if self.dimension() != self.rank:
            return None
        out = 1
        for i, r in enumerate(self.normal_form):
            out *= r[i]
        return out

    def project(self, coords: Sequence[int]) -> "SubgroupLattice":
        """Image under the coordinate projection onto ``coords``."""
        return SubgroupLattice(len(coords), tuple(tuple(r[c] for c in coords) for r in self.normal_form))

    def restrict(self, coords: Sequence[int]) -> "SubgroupLattice":
        """Intersection with the coordinate subspace spanned by ``coords``.

        Returned in the coordinates of that subspace.
        """
        keep = list(coords)
        other = [c for c in range(self.rank) if c not in set(keep)]
        # eliminate the other coordinates first by reordering columns
        perm = other + keep
        rows = [tuple(r[c] for c in perm) for r in self.normal_form]
        h = hnf(rows, self.rank)
        k = len(other)
        out = [r[k:] for r in h if not any(r[:k])]
        return SubgroupLattice(len(keep), tuple(out))

    def diagonal_entries(self) -> tuple | None:
        """Per-coordinate multipliers when the HNF is diagonal, else None."""
        if self.dimension() != self.rank:
            return None
        for i, r in enumerate(self.normal_form):
            if any(x for j, x in enumerate(r) if j != i):
                return None
        return tuple(r[i] for i, r in enumerate(self.normal_form))

    def to_json(self) -> dict:
        return {"rank": self.rank, "hnf": [list(r) for r in self.normal_form]}
