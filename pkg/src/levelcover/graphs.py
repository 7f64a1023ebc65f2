"""Dual graphs of stable curves: edge classes, filtration, stabilizer lattices."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import (
    CutSystemInconsistent,
    Disconnected,
    GenusTooLarge,
    GenusTooSmall,
    Unstable,
    UnsupportedParams,
)
from .lattice import SubgroupLattice
from .nilpotent import n_l

MAX_ENUMERATION_GENUS = 4


@dataclass(frozen=True)
class StableGraph:
    vertices: tuple  # ((id, genus), ...)
    edges: tuple  # ((id, end, end), ...)

    @property
    def vertex_ids(self) -> tuple:
        return tuple(v for v, _ in self.vertices)

    @property
    def edge_ids(self) -> tuple:
        return tuple(e for e, _, _ in self.edges)

    @property
    def genus(self) -> int:
        return sum(h for _, h in self.vertices) + len(self.edges) - len(self.vertices) + 1

    def valence(self, v) -> int:
        return sum((a == v) + (b == v) for _, a, b in self.edges)

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "genus": h} for v, h in self.vertices],
            "edges": [{"id": e, "ends": [a, b]} for e, a, b in self.edges],
        }


def _components(vertex_ids: Iterable, edges: Iterable) -> list:
    parent = {v: v for v in vertex_ids}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for _, a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict = {}
    for v in parent:
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def validate(vertices: Sequence, edges: Sequence) -> StableGraph:
    """Build a StableGraph from (id, genus) and (id, end, end) lists, checking stability."""
    verts = tuple((str(v), int(h)) for v, h in vertices)
    ids = [v for v, _ in verts]
    if not verts:
        raise Disconnected("graph has no vertices")
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate vertex id")
    eds = tuple((str(e), str(a), str(b)) for e, a, b in edges)
    if len({e for e, _, _ in eds}) != len(eds):
        raise ValueError("duplicate edge id")
    for e, a, b in eds:
        for end in (a, b):
            if end not in ids:
                raise ValueError(f"edge {e!r} ends at unknown vertex {end!r}")
    for v, h in verts:
        if h < 0:
            raise ValueError(f"vertex {v!r} has negative genus")
    if len(_components(ids, eds)) != 1:
        raise Disconnected("dual graph is not connected")
    G = StableGraph(verts, eds)
    for v, h in verts:
        val = G.valence(v)
        if 2 * h - 2 + val <= 0:
            raise Unstable(v, h, val)
    if G.genus < 2:
        raise GenusTooSmall(f"total genus {G.genus} < 2")
    return G


def from_json(data: Mapping | str) -> StableGraph:
    if isinstance(data, str):
        data = json.loads(data)
    verts = [(v["id"], v.get("genus", 0)) for v in data["vertices"]]
    eds = [(e["id"], e["ends"][0], e["ends"][1]) for e in data["edges"]]
    return validate(verts, eds)


# ------------------------------------------------------------ classification

def bridges(G: StableGraph, removed: frozenset = frozenset()) -> set:
    """Bridges by low-link DFS (multi-edges and loops handled by edge id)."""
    adj: dict = {v: [] for v in G.vertex_ids}
    for e, a, b in G.edges:
        if e in removed or a == b:
            continue
        adj[a].append((b, e))
        adj[b].append((a, e))
    disc: dict = {}
    low: dict = {}
    out = set()
    counter = 0
    for root in G.vertex_ids:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for w, e in it:
                if e == via:
                    continue
                if w in disc:
                    low[v] = min(low[v], disc[w])
                else:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, e, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > disc[u]:
                        out.add(via)
    return out


def side_genera(G: StableGraph, bridge: str) -> tuple:
    """Genera of the two sides of a bridge."""
    rest = [ed for ed in G.edges if ed[0] != bridge]
    out = []
    for comp in _components(G.vertex_ids, rest):
        cs = set(comp)
        ne = sum(1 for _, a, _ in rest if a in cs)
        out.append(sum(h for v, h in G.vertices if v in cs) + ne - len(cs) + 1)
    return tuple(sorted(out))


@dataclass(frozen=True)
class EdgeClassification:
    bridges: tuple
    genus_one_bridges: tuple
    cut_systems: tuple  # tuple of tuples of edge ids
    plain: tuple


def cut_pairs(G: StableGraph) -> set:
    """Unordered non-bridge pairs whose joint removal disconnects the graph."""
    B = bridges(G)
    order = {e: i for i, e in enumerate(G.edge_ids)}
    out = set()
    for e in G.edge_ids:
        if e in B:
            continue
        for f in bridges(G, frozenset((e,))) - B:
            out.add(tuple(sorted((e, f), key=order.get)))
    return out


def classify_edges(G: StableGraph) -> EdgeClassification:
    order = G.edge_ids
    B = bridges(G)
    B1 = {b for b in B if 1 in side_genera(G, b)}
    pairs = cut_pairs(G)
    involved = sorted({e for p in pairs for e in p}, key=order.index)
    groups = _components(involved, [(None, a, b) for a, b in pairs])
    systems = []
    for grp in groups:
        grp = sorted(grp, key=order.index)
        for a, b in itertools.combinations(grp, 2):
            if (a, b) not in pairs:
                raise CutSystemInconsistent(f"{a} and {b} are linked by cut pairs but are not one")
        systems.append(tuple(grp))
    systems.sort(key=lambda s: order.index(s[0]))
    in_sys = {e for s in systems for e in s}
    plain = tuple(e for e in order if e not in B and e not in in_sys)
    return EdgeClassification(
        tuple(e for e in order if e in B),
        tuple(e for e in order if e in B1),
        tuple(systems),
        plain,
    )


# ------------------------------------------------------------ lattices

@dataclass(frozen=True)
class FiltrationLattices:
    edges: tuple
    F0: SubgroupLattice
    F1: SubgroupLattice
    F2: SubgroupLattice
    F21: SubgroupLattice


def _unit(i: int, d: int) -> tuple:
    return tuple(1 if j == i else 0 for j in range(d))


def filtration(G: StableGraph, cls: EdgeClassification | None = None) -> FiltrationLattices:
    cls = cls or classify_edges(G)
    idx = {e: i for i, e in enumerate(G.edge_ids)}
    d = len(idx)
    diffs = []
    for system in cls.cut_systems:
        for a, b in zip(system, system[1:]):
            v = [0] * d
            v[idx[b]], v[idx[a]] = 1, -1
            diffs.append(tuple(v))
    F2 = tuple(_unit(idx[b], d) for b in cls.bridges)
    F21 = tuple(_unit(idx[b], d) for b in cls.genus_one_bridges)
    return FiltrationLattices(
        G.edge_ids,
        SubgroupLattice.full(d),
        SubgroupLattice(d, tuple(diffs) + F2),
        SubgroupLattice(d, F2),
        SubgroupLattice(d, F21),
    )


@dataclass(frozen=True)
class StabilizerLattice:
    k: int
    n: int
    edges: tuple
    lattice: SubgroupLattice


def stabilizer_lattice(G: StableGraph, k: int, n: int, filt: FiltrationLattices | None = None) -> StabilizerLattice:
    if n < 3:
        raise UnsupportedParams(f"n={n} < 3")
    if k < 1:
        raise UnsupportedParams(f"k={k} < 1")
    if k >= 4 and gcd(n, 6) != 1:
        raise UnsupportedParams(f"no stabilizer formula for k={k} with gcd(n,6)={gcd(n, 6)}")
    F = filt or filtration(G)
    n2, n6 = n_l(n, 2), n_l(n, 6)
    if k == 1:
        L = F.F0.scale(n) + F.F1
    elif k == 2:
        L = F.F0.scale(n) + F.F1.scale(n2) + F.F2
    elif k == 3:
        c1 = n // 2 if n % 4 == 2 else n
        L = F.F0.scale(n) + F.F1.scale(c1) + F.F2.scale(n2) + F.F21.scale(n6)
    else:
        L = F.F0.scale(n)
    return StabilizerLattice(k, n, F.edges, L)


def is_rectangular(lattice: SubgroupLattice, edges: Sequence[str] | None = None) -> dict | None:
    """Per-edge multipliers if the lattice is a direct sum of scaled edges."""
    diag = lattice.diagonal_entries()
    if diag is None:
        return None
    edges = edges if edges is not None else [str(i) for i in range(lattice.rank)]
    return dict(zip(edges, diag))


@dataclass
class SmoothnessReport:
    smooth: bool
    multipliers: dict | None = None
    hnf: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"smooth": self.smooth}
        if self.smooth:
            out["multipliers"] = self.multipliers
        else:
            out["witness_generators"] = self.hnf
        return out


def is_smooth_point(G: StableGraph, k: int, n: int) -> SmoothnessReport:
    S = stabilizer_lattice(G, k, n)
    mult = is_rectangular(S.lattice, S.edges)
    if mult is not None:
        return SmoothnessReport(True, mult)
    off = [list(r) for r in S.lattice.normal_form if sum(1 for x in r if x) > 1]
    return SmoothnessReport(False, None, off)


# ------------------------------------------------------------ enumeration

def _canonical(genera: tuple, edges: tuple) -> tuple:
    """Lexicographically least (genera, sorted edges) over invariant-preserving relabelings."""
    nv = len(genera)
    loops = [0] * nv
    val = [0] * nv
    for a, b in edges:
        val[a] += 1
        val[b] += 1
        if a == b:
            loops[a] += 1
    inv = [(genera[v], val[v], loops[v]) for v in range(nv)]
    order = sorted(range(nv), key=lambda v: inv[v])
    blocks = [list(grp) for _, grp in itertools.groupby(order, key=lambda v: inv[v])]
    best = None
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = [v for blk in choice for v in blk]  # new position -> old vertex
        pos = {old: new for new, old in enumerate(perm)}
        key = (
            tuple(genera[v] for v in perm),
            tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in edges)),
        )
        if best is None or key < best:
            best = key
    return best


def _stable(h: int, val: int) -> bool:
    return 2 * h - 2 + val > 0


def _degenerations(genera: tuple, edges: tuple) -> Iterable[tuple]:
    nv = len(genera)
    for v in range(nv):
        if genera[v] >= 1:
            g2 = genera[:v] + (genera[v] - 1,) + genera[v + 1:]
            yield g2, edges + ((v, v),)
        # split v into v (side 0) and a new vertex nv (side 1)
        half = []  # (edge index, which end)
        for i, (a, b) in enumerate(edges):
            if a == v:
                half.append((i, 0))
            if b == v:
                half.append((i, 1))
        for sides in itertools.product((0, 1), repeat=len(half)):
            new_edges = [list(e) for e in edges]
            for (i, end), s in zip(half, sides):
                if s:
                    new_edges[i][end] = nv
            val0 = sides.count(0) + 1
            val1 = sides.count(1) + 1
            for h0 in range(genera[v] + 1):
                h1 = genera[v] - h0
                if not (_stable(h0, val0) and _stable(h1, val1)):
                    continue
                g2 = genera[:v] + (h0,) + genera[v + 1:] + (h1,)
                e2 = tuple(tuple(sorted(e)) for e in new_edges) + ((v, nv),)
                yield g2, e2


def _to_graph(key: tuple) -> StableGraph:
    genera, edges = key
    verts = [(f"v{i}", h) for i, h in enumerate(genera)]
    eds = [(f"e{i}", f"v{a}", f"v{b}") for i, (a, b) in enumerate(edges)]
    return validate(verts, eds)


def enumerate_stable_graphs(g: int) -> list:
    """All stable dual graphs of genus g up to isomorphism, sorted by canonical code."""
    if g < 2:
        raise GenusTooSmall(f"genus {g} < 2")
    if g > MAX_ENUMERATION_GENUS:
        raise GenusTooLarge(f"enumeration is limited to genus <= {MAX_ENUMERATION_GENUS}")
    start = _canonical((g,), ())
    seen = {start}
    layer = [start]
    while layer:
        nxt = []
        for genera, edges in layer:
            for cand in _degenerations(genera, edges):
                key = _canonical(*cand)
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
        layer = nxt
    keys = sorted(seen, key=lambda k: (len(k[1]), len(k[0]), k))
    return [_to_graph(k) for k in keys]


# ------------------------------------------------------------ glad

def predicted_smooth(g: int, k: int, n: int) -> bool:
    if k == 1:
        return g == 2
    if k == 2:
        return n % 2 == 1
    if k == 3:
        return n % 2 == 1 or n % 4 == 0
    if gcd(n, 6) == 1:
        return True
    raise UnsupportedParams(f"no prediction for k={k}, n={n}")


@dataclass
class GladVerdict:
    g: int
    k: int
    n: int
    smooth: bool
    predicted: bool
    graphs: int
    witnesses: list

    @property
    def matches(self) -> bool:
        return self.smooth == self.predicted

    def to_json(self) -> dict:
        return {
            "g": self.g, "k": self.k, "n": self.n, "smooth": self.smooth,
            "predicted": self.predicted, "matches": self.matches,
            "graphs": self.graphs, "witnesses": self.witnesses,
        }


_ENUM_CACHE: dict = {}


def _graphs(g: int) -> list:
    if g not in _ENUM_CACHE:
        _ENUM_CACHE[g] = enumerate_stable_graphs(g)
    return _ENUM_CACHE[g]


def theorem_glad_check(g: int, k: int, n: int, max_witnesses: int = 3) -> GladVerdict:
    graphs = _graphs(g)
    predicted = predicted_smooth(g, k, n)
    witnesses = []
    for G in graphs:
        rep = is_smooth_point(G, k, n)
        if not rep.smooth:
            if len(witnesses) < max_witnesses:
                witnesses.append({"graph": G.to_json(), **rep.to_json()})
            else:
                break
    return GladVerdict(g, k, n, not witnesses, predicted, len(graphs), witnesses)
