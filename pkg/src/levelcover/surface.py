"""Surface groups, Dehn twists acting on their generators, and reduction maps.

Generators of the genus-g surface group are named ``a1, a-1, ..., ag, a-g``
with the single relator ``[a1,a-1] [a2,a-2] ... [ag,a-g]``.  Every twist
is given by a closed formula for its m-th power, valid for all integers m.

Membership of a displacement ``D^m(a) a^-1`` in the power subgroup of depth
``k+1`` is decided in two one-sided ways:

* Member: some lift of the displacement to the free group on the 2g
  generators lies in the free power subgroup (this maps onto the surface
  group's power subgroup).
* NotMember: a homomorphism to <x,y,z> that kills the relator sends the
  displacement outside the rank-3 power subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import nilpotent as nil
from .errors import (
    BadSplit,
    CertificateConflict,
    GenusTooSmall,
    RelatorNotKilled,
    UnknownGenerator,
    UnsupportedDepth,
)
from .freenil import assembled_power_subgroup, free_group
from .words import GroupWord, comm, expand, gen, parse_word, product, substitute

KINDS = ("bridge", "nonsep", "cutpair")
CUTPAIR_EDGES = ("e1", "e2", "diff")


def name(i: int) -> str:
    return f"a{i}"


def generator_names(g: int) -> tuple:
    return tuple(name(s * i) for i in range(1, g + 1) for s in (1, -1))


# ------------------------------------------------------------ presentation

@dataclass(frozen=True)
class SurfacePresentation:
    g: int

    @property
    def generators(self) -> tuple:
        return generator_names(self.g)

    @property
    def relator(self) -> GroupWord:
        return handle_product(range(1, self.g + 1))


def surface_group(g: int) -> SurfacePresentation:
    if g < 2:
        raise GenusTooSmall(f"genus {g} < 2")
    return SurfacePresentation(g)


def handle(i: int) -> GroupWord:
    return comm(gen(name(i)), gen(name(-i)))


def handle_product(indices: Iterable[int]) -> GroupWord:
    return product(handle(i) for i in indices)


# ------------------------------------------------------------ endomorphisms

@dataclass(frozen=True)
class Endomorphism:
    """Substitution on the generators of a genus-g surface group.

    Only moved generators are stored; all others are fixed.
    """

    g: int
    images: tuple = ()  # ((generator, GroupWord), ...)

    @classmethod
    def from_map(cls, g: int, images: Mapping[str, GroupWord]) -> "Endomorphism":
        names = generator_names(g)
        for k, w in images.items():
            if k not in names:
                raise UnknownGenerator(k, names)
            w.check_alphabet(names)
        return cls(g, tuple((k, images[k]) for k in names if k in images and expand(images[k]) != ((k, 1),)))

    @property
    def mapping(self) -> dict:
        return dict(self.images)

    def image(self, generator: str) -> GroupWord:
        return self.mapping.get(generator, gen(generator))

    def __call__(self, w: GroupWord | str) -> GroupWord:
        return apply(self, w)


def identity(g: int) -> Endomorphism:
    return Endomorphism(g)


def apply(e: Endomorphism, w: GroupWord | str) -> GroupWord:
    names = generator_names(e.g)
    if isinstance(w, str):
        w = parse_word(w, names)
    else:
        w.check_alphabet(names)
    return substitute(w, e.mapping)


def compose(e: Endomorphism, f: Endomorphism) -> Endomorphism:
    """``e`` after ``f``."""
    if e.g != f.g:
        raise ValueError("genus mismatch")
    return Endomorphism.from_map(e.g, {k: apply(e, f.image(k)) for k in generator_names(e.g)})


def endo_pow(e: Endomorphism, k: int) -> Endomorphism:
    """Iterated composition; twists use their closed m-th power formulas."""
    if isinstance(e, TwistEndomorphism):
        return e.power(k)
    if k < 0:
        raise ValueError("negative powers need a twist with a closed form")
    out = identity(e.g)
    for _ in range(k):
        out = compose(e, out)
    return out


def freely_equal(e: Endomorphism, f: Endomorphism) -> bool:
    return e.g == f.g and all(expand(e.image(k)) == expand(f.image(k)) for k in generator_names(e.g))


# ------------------------------------------------------------ twists

@dataclass(frozen=True)
class TwistEndomorphism(Endomorphism):
    kind: str = "bridge"
    g1: int = 0
    m: int = 1
    edge: str = ""  # cut pairs only: e1, e2 or diff

    @property
    def bounds_genus_one(self) -> bool:
        return self.kind == "bridge" and (self.g1 == 1 or self.g - self.g1 == 1)

    def power(self, k: int) -> "TwistEndomorphism":
        return make_twist(self.kind, self.g, self.g1, self.m * k, self.edge)

    def displacement(self, generator: str) -> GroupWord:
        return self.image(generator) * gen(generator) ** -1

    def to_json(self) -> dict:
        out = {"kind": self.kind, "g": self.g, "g1": self.g1, "m": self.m}
        if self.kind == "cutpair":
            out["edge"] = self.edge
        return out


def _check_genus(g: int) -> None:
    if g < 2:
        raise GenusTooSmall(f"genus {g} < 2")


def near_product(g1: int) -> GroupWord:
    """v = [a1,a-1] ... [a_g1,a-g1]."""
    return handle_product(range(1, g1 + 1))


def twist_bridge(g: int, g1: int, m: int = 1) -> TwistEndomorphism:
    _check_genus(g)
    if not 1 <= g1 <= g - 1:
        raise BadSplit(f"bridge needs 1 <= g1 <= g-1, got g1={g1}, g={g}")
    v = near_product(g1)
    images = {}
    for i in range(g1 + 1, g + 1):
        for s in (1, -1):
            a = gen(name(s * i))
            images[name(s * i)] = v ** -m * a * v ** m
    return _twist("bridge", g, g1, m, "", images)


def twist_nonsep(g: int, m: int = 1) -> TwistEndomorphism:
    _check_genus(g)
    images = {name(-g): gen(name(g), m) * gen(name(-g))}
    return _twist("nonsep", g, 0, m, "", images)


def twist_cutpair(g: int, g1: int, m: int = 1) -> tuple:
    """The pair (D_e1^m, D_e2^m) for a cut pair splitting off genus g1."""
    return make_twist("cutpair", g, g1, m, "e1"), make_twist("cutpair", g, g1, m, "e2")


def cutpair_difference(g: int, g1: int, m: int = 1) -> TwistEndomorphism:
    """(D_e2 D_e1^-1)^m."""
    return make_twist("cutpair", g, g1, m, "diff")


def _cutpair(g: int, g1: int, m: int, edge: str) -> TwistEndomorphism:
    _check_genus(g)
    if not 1 <= g1 <= g - 2:
        raise BadSplit(f"cut pair needs 1 <= g1 <= g-2, got g1={g1}, g={g}")
    if edge not in CUTPAIR_EDGES:
        raise ValueError(f"cut pair edge must be one of {CUTPAIR_EDGES}")
    v = near_product(g1)
    a = gen(name(g1 + 1))
    beta = name(-(g1 + 1))
    far = [name(s * i) for i in range(g1 + 2, g + 1) for s in (1, -1)]
    B = gen(beta)
    images = {}
    if edge == "e1":
        images[beta] = B * (v * a ** -1) ** m
        for f in far:
            images[f] = (a * v ** -1) ** m * gen(f) * (v * a ** -1) ** m
    elif edge == "e2":
        images[beta] = a ** -m * B
    else:
        images[beta] = a ** -m * B * (a * v ** -1) ** m
        for f in far:
            images[f] = (v * a ** -1) ** m * gen(f) * (a * v ** -1) ** m
    return _twist("cutpair", g, g1, m, edge, images)


def _twist(kind: str, g: int, g1: int, m: int, edge: str, images: dict) -> TwistEndomorphism:
    base = Endomorphism.from_map(g, images)
    return TwistEndomorphism(g, base.images, kind, g1, m, edge)


def make_twist(kind: str, g: int, g1: int = 0, m: int = 1, edge: str = "") -> TwistEndomorphism:
    if kind == "bridge":
        return twist_bridge(g, g1, m)
    if kind == "nonsep":
        return twist_nonsep(g, m)
    if kind == "cutpair":
        return _cutpair(g, g1, m, edge or "diff")
    raise ValueError(f"unknown twist kind {kind!r}; expected one of {KINDS}")


def twist_from_json(data: Mapping) -> TwistEndomorphism:
    return make_twist(data["kind"], int(data["g"]), int(data.get("g1", 0)), int(data.get("m", 1)),
                      data.get("edge", ""))


def bridge_representatives(t: TwistEndomorphism) -> list:
    """Lifts of the same outer class of a bridge twist, standard one first.

    In the surface group the near and far handle products are inverse to
    each other, and conjugating everything by v^m is inner.
    """
    g, g1, m = t.g, t.g1, t.m
    near = range(1, g1 + 1)
    far = range(g1 + 1, g + 1)
    p_near, p_far_inv = handle_product(near), handle_product(far) ** -1
    out = [("far side, near handles", t)]
    for label, moved, v, sign in (
        ("far side, far handles", far, p_far_inv, 1),
        ("near side, near handles", near, p_near, -1),
        ("near side, far handles", near, p_far_inv, -1),
    ):
        images = {}
        for i in moved:
            for s in (1, -1):
                a = gen(name(s * i))
                images[name(s * i)] = v ** (-sign * m) * a * v ** (sign * m)
        out.append((label, Endomorphism.from_map(g, images)))
    return out


# ------------------------------------------------------------ reductions

@dataclass(frozen=True)
class ReductionHom:
    """Homomorphism from the surface group to <x,y,z> (relator checked)."""

    g: int
    images: tuple  # ((generator, GroupWord over x,y,z), ...) for every generator
    label: str = ""
    direction: str = "from-surface"

    @property
    def mapping(self) -> dict:
        return dict(self.images)

    def push_forward(self, w: GroupWord) -> nil.NilpotentElement:
        return nil.eval_word(substitute(w, self.mapping))

    def image_word(self, w: GroupWord) -> GroupWord:
        return substitute(w, self.mapping)


def reduction_hom(g: int, images: Mapping[str, GroupWord | str], label: str = "") -> ReductionHom:
    names = generator_names(g)
    full = {}
    for k in names:
        w = images.get(k, GroupWord())
        if isinstance(w, str):
            w = parse_word(w, nil.VARIABLES)
        else:
            w.check_alphabet(nil.VARIABLES)
        full[k] = w
    for k in images:
        if k not in names:
            raise UnknownGenerator(k, names)
    rel = substitute(surface_group(g).relator, full)
    if expand(rel):
        raise RelatorNotKilled(f"relator maps to {rel}, which is not freely trivial")
    return ReductionHom(g, tuple(full.items()), label)


def catalog(g: int, g1: int) -> dict:
    """The reduction maps used for non-membership, keyed by name.

    Each entry is (hom, generator whose displacement it tests).
    """
    x, y, z = gen("x"), gen("y"), gen("z")
    out = {}
    if 1 <= g1 <= g - 2:
        out["cut-pair"] = (
            reduction_hom(g, {name(1): x, name(-g): x, name(-1): y, name(g): y, name(g1 + 1): z}, "cut-pair"),
            name(-(g1 + 1)),
        )
    if g1 == 1:
        out["genus-one-near"] = (
            reduction_hom(g, {name(1): x, name(-2): x, name(-1): y, name(2): y}, "genus-one-near"),
            name(2),
        )
    if g1 == g - 1 and g1 >= 1:
        out["genus-one-far"] = (
            reduction_hom(g, {name(g): x, name(-g): y, name(1): y, name(-1): x}, "genus-one-far"),
            name(g),
        )
    if 2 <= g1 <= g - 2:
        out["separating"] = (
            reduction_hom(g, {name(1): x, name(-g): x, name(-1): y, name(g): y, name(g1 + 1): z ** -1},
                          "separating"),
            name(g1 + 1),
        )
    return out


def certificate_maps(t: TwistEndomorphism) -> list:
    """Catalog maps that the non-membership argument applies to for this twist."""
    if t.kind == "nonsep":
        return []
    c = catalog(t.g, t.g1)
    if t.kind == "cutpair":
        return [("cut-pair",) + c["cut-pair"]] if t.edge == "diff" else []
    return [(k,) + c[k] for k in ("genus-one-near", "genus-one-far", "separating") if k in c]


# ------------------------------------------------------------ verdicts

@dataclass
class MembershipVerdict:
    status: str  # "Member" | "NotMember" | "Unknown"
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"verdict": self.status, "certificate": self.certificate}


def _abelian_failures(w: GroupWord, names: Sequence[str], n: int) -> dict:
    counts = dict.fromkeys(names, 0)
    for k, e in expand(w):
        counts[k] += e
    return {k: c for k, c in counts.items() if c % n}


def member_certificate(t: TwistEndomorphism, k: int, n: int) -> dict | None:
    """A lift of the outer class whose displacements all lie in the free power subgroup."""
    names = generator_names(t.g)
    F = free_group(names)
    H = assembled_power_subgroup(names, n, k + 1)
    reps = bridge_representatives(t) if t.kind == "bridge" else [("standard", t)]
    for label, rep in reps:
        witness = {}
        for a in names:
            img = rep.image(a)
            d = img * gen(a) ** -1
            if not expand(d):
                continue
            coords = F.eval_word(d)
            if coords not in H:
                break
            witness[a] = list(coords)
        else:
            return {"representative": label, "lift_coordinates": witness}
    return None


def not_member_certificate(t: TwistEndomorphism, k: int, n: int) -> dict | None:
    names = generator_names(t.g)
    # abelianization: inner automorphisms act trivially there
    for a in names:
        bad = _abelian_failures(t.displacement(a), names, n)
        if bad:
            return {"map": "abelianization", "generator": a, "exponents_mod_n": bad}
    if k == 1:
        return None
    for label, hom, a in certificate_maps(t):
        coords = hom.push_forward(t.displacement(a))
        failures = nil.congruence_failures(coords, n, k + 1)
        if failures:
            return {
                "map": label,
                "generator": a,
                "image": list(coords),
                "failed": failures,
            }
    return None


def check_twist(t: TwistEndomorphism, k: int, n: int) -> MembershipVerdict:
    if k not in (1, 2, 3):
        raise UnsupportedDepth(f"k={k} not in (1, 2, 3)")
    if n < 3:
        raise ValueError("level n must be at least 3")
    if t.m == 0:
        return MembershipVerdict("Member", {"representative": "identity"})
    yes = member_certificate(t, k, n)
    no = not_member_certificate(t, k, n)
    if yes and no:
        raise CertificateConflict(f"{t.to_json()} k={k} n={n}: {yes} vs {no}")
    if yes:
        return MembershipVerdict("Member", yes)
    if no:
        return MembershipVerdict("NotMember", no)
    return MembershipVerdict("Unknown", {})


def check_displacement(kind: str, g: int, g1: int, m: int, k: int, n: int, edge: str = "") -> MembershipVerdict:
    return check_twist(make_twist(kind, g, g1, m, edge), k, n)


# ------------------------------------------------------------ divisibility

def mono_condition(kind: str, g: int, g1: int, k: int, n: int, m: int, edge: str = "") -> bool:
    """Whether m times the edge lies in the stabilizer lattice for this twist kind."""
    n2, n6 = nil.n_l(n, 2), nil.n_l(n, 6)
    if kind == "nonsep" or (kind == "cutpair" and edge in ("e1", "e2")):
        return m % n == 0
    if kind == "cutpair":
        if k == 1:
            return True
        if k == 2:
            return m % n2 == 0
        if n % 2 == 0 and n % 4 != 0:
            return m % (n // 2) == 0
        return m % n == 0
    if kind == "bridge":
        if k in (1, 2):
            return True
        genus_one = g1 == 1 or g - g1 == 1
        return m % (n6 if genus_one else n2) == 0
    raise ValueError(kind)


def configurations(g: int) -> list:
    """(kind, g1, edge) for every twist shape available in genus g."""
    out = [("nonsep", 0, "")]
    out += [("bridge", g1, "") for g1 in range(1, g)]
    for g1 in range(1, g - 1):
        out += [("cutpair", g1, e) for e in CUTPAIR_EDGES]
    return out


def minimal_multiple(kind: str, g: int, g1: int, k: int, n: int, edge: str = "") -> int:
    return next(m for m in range(1, n + 1) if mono_condition(kind, g, g1, k, n, m, edge))


def minimal_violation(kind: str, g: int, g1: int, k: int, n: int, edge: str = "") -> int | None:
    for m in range(1, n + 1):
        if not mono_condition(kind, g, g1, k, n, m, edge):
            return m
    return None


def mono_grid(gs=(2, 3, 4), ks=(1, 2, 3), ns=(3, 4, 5, 6, 8, 9, 12)) -> list:
    """Verdicts for the smallest admissible m and the smallest violating m."""
    rows = []
    for g in gs:
        for kind, g1, edge in configurations(g):
            for k in ks:
                for n in ns:
                    for role, m in (
                        ("admissible", minimal_multiple(kind, g, g1, k, n, edge)),
                        ("violating", minimal_violation(kind, g, g1, k, n, edge)),
                    ):
                        if m is None:
                            continue
                        v = check_displacement(kind, g, g1, m, k, n, edge)
                        expected = "Member" if role == "admissible" else "NotMember"
                        rows.append({
                            "kind": kind, "edge": edge, "g": g, "g1": g1, "k": k, "n": n, "m": m,
                            "role": role, "verdict": v.status, "expected": expected,
                            "certificate": v.certificate,
                        })
    return rows
