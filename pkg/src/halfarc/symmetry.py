"""Transitivity classification, the oriented graph of a half-arc-transitive
action, alternating cycles and attachment, and subgroup searches."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .autgroup import _UnionFind, automorphism_group
from .graph import Graph, is_connected, valency
from .perm import Perm, PermGroup, element_order, is_automorphism, is_identity

Arc = tuple[int, int]


@dataclass(frozen=True)
class TransitivityProfile:
    vertex_transitive: bool
    edge_transitive: bool
    arc_transitive: bool
    vertex_orbits: int
    edge_orbits: int
    arc_orbits: int

    @property
    def half_arc_transitive(self) -> bool:
        return self.vertex_transitive and self.edge_transitive and not self.arc_transitive


def _check_automorphisms(x: Graph, gens: Sequence[Perm]) -> None:
    for s in gens:
        if not is_automorphism(x, s):
            raise ValueError("group generator is not an automorphism of the graph")


def _orbit_count(size: int, gens: Sequence[Perm], image) -> tuple[int, _UnionFind]:
    uf = _UnionFind(size)
    for s in gens:
        for i in range(size):
            uf.union(i, image(s, i))
    return len({uf.find(i) for i in range(size)}), uf


def arc_orbits(x: Graph, gens: Sequence[Perm]) -> list[list[Arc]]:
    arcs, idx = x.arcs, x.arc_index
    _, uf = _orbit_count(len(arcs), gens, lambda s, i: idx[(s[arcs[i][0]], s[arcs[i][1]])])
    groups: dict[int, list[Arc]] = {}
    for i, a in enumerate(arcs):
        groups.setdefault(uf.find(i), []).append(a)
    return sorted(groups.values())


def transitivity_profile(x: Graph, g: PermGroup | Sequence[Perm]) -> TransitivityProfile:
    gens = list(g.generators if isinstance(g, PermGroup) else g)
    _check_automorphisms(x, gens)
    nv, _ = _orbit_count(x.n, gens, lambda s, i: s[i])
    edges, eidx = x.edges, x.edge_index

    def edge_image(s, i):
        a, b = s[edges[i][0]], s[edges[i][1]]
        return eidx[(a, b) if a < b else (b, a)]

    ne, _ = _orbit_count(len(edges), gens, edge_image)
    arcs, aidx = x.arcs, x.arc_index
    na, _ = _orbit_count(len(arcs), gens, lambda s, i: aidx[(s[arcs[i][0]], s[arcs[i][1]])])
    # an edgeless graph has no edges to be transitive on
    return TransitivityProfile(
        vertex_transitive=nv == 1,
        edge_transitive=ne == 1,
        arc_transitive=na == 1,
        vertex_orbits=nv, edge_orbits=ne, arc_orbits=na,
    )


def is_half_arc_transitive(x: Graph) -> bool:
    return transitivity_profile(x, automorphism_group(x)).half_arc_transitive


@dataclass(frozen=True)
class Orientation:
    """The two arc orbits of a half-arc-transitive action; ``arcs`` is the
    chosen one (it contains the least arc), ``reverse`` the other."""

    arcs: frozenset[Arc]
    reverse: frozenset[Arc]

    @property
    def arc_orbit_1(self) -> frozenset[Arc]:
        return self.arcs

    @property
    def arc_orbit_2(self) -> frozenset[Arc]:
        return self.reverse

    def out_neighbours(self, n: int) -> list[list[int]]:
        out = [[] for _ in range(n)]
        for t, h in sorted(self.arcs):
            out[t].append(h)
        return out

    def in_neighbours(self, n: int) -> list[list[int]]:
        inn = [[] for _ in range(n)]
        for t, h in sorted(self.arcs):
            inn[h].append(t)
        return inn


def orientation(x: Graph, g: PermGroup | Sequence[Perm]) -> Orientation:
    prof = transitivity_profile(x, g)
    if not prof.half_arc_transitive:
        raise ValueError("action is not half-arc-transitive; no orientation is induced")
    gens = list(g.generators if isinstance(g, PermGroup) else g)
    orbs = arc_orbits(x, gens)
    least = x.arcs[0]
    first = next(o for o in orbs if least in o)
    second = next(o for o in orbs if least not in o)
    return Orientation(frozenset(first), frozenset(second))


@dataclass(frozen=True)
class AlternatingStructure:
    cycles: tuple[tuple[int, ...], ...]
    radius: int
    attachment_number: int | None
    attachment_set: tuple[int, ...]

    @property
    def tightly_attached(self) -> bool:
        return self.attachment_number == self.radius


def alternating_cycles(x: Graph, o: Orientation) -> list[list[Arc]]:
    """Alternating cycles as arc sequences t0->h0, t1->h0, t1->h1, ..."""
    out = o.out_neighbours(x.n)
    inn = o.in_neighbours(x.n)
    for v in range(x.n):
        if len(out[v]) != 2 or len(inn[v]) != 2:
            raise ValueError(f"vertex {v} has out-degree {len(out[v])} and in-degree {len(inn[v])}; need 2 and 2")
    seen: set[Arc] = set()
    cycles = []
    for a0 in sorted(o.arcs):
        if a0 in seen:
            continue
        cyc = []
        t, h = a0
        while True:
            cyc.append((t, h))
            seen.add((t, h))
            # leave the head along its other incoming arc, then the tail along its other outgoing arc
            t2 = inn[h][0] if inn[h][1] == t else inn[h][1]
            cyc.append((t2, h))
            seen.add((t2, h))
            h2 = out[t2][0] if out[t2][1] == h else out[t2][1]
            t, h = t2, h2
            if (t, h) == a0:
                break
        cycles.append(cyc)
    return cycles


def alternating_structure(x: Graph, o: Orientation) -> AlternatingStructure:
    arc_cycles = alternating_cycles(x, o)
    lengths = {len(c) for c in arc_cycles}
    if len(lengths) != 1:
        raise ValueError(f"alternating cycles have different lengths {sorted(lengths)}")
    length = lengths.pop()
    vertex_cycles = []
    cycle_of_out = [None] * x.n
    cycle_of_in = [None] * x.n
    for ci, cyc in enumerate(arc_cycles):
        verts = []
        for k, (t, h) in enumerate(cyc):
            cycle_of_out[t] = ci
            cycle_of_in[h] = ci
            verts.append(t if k % 2 == 0 else h)
        vertex_cycles.append(tuple(verts))
    vsets = [set(c) for c in vertex_cycles]
    sizes = {}
    for v in range(x.n):
        a, b = cycle_of_out[v], cycle_of_in[v]
        if a != b:
            key = (min(a, b), max(a, b))
            if key not in sizes:
                sizes[key] = len(vsets[a] & vsets[b])
    if len(set(sizes.values())) > 1:
        raise ValueError(f"adjacent alternating cycles meet in different numbers of vertices: {sorted(set(sizes.values()))}")
    if sizes:
        a, b = min(sizes)
        attach = sizes[(a, b)]
        attach_set = tuple(sorted(vsets[a] & vsets[b]))
    else:
        attach, attach_set = None, ()
    return AlternatingStructure(tuple(vertex_cycles), length // 2, attach, attach_set)


@dataclass(frozen=True)
class StabilizerCheck:
    order: int
    hypotheses_met: bool
    note: str = ""


def stabilizer_order_check(x: Graph, g: PermGroup) -> StabilizerCheck:
    """|G_v|, flagging whether the attachment-set hypothesis (size >= 3, G half-arc-transitive) holds."""
    order = g.order() // len(g.orbit(0)) if x.n else 1
    if not (is_connected(x) and valency(x) == 4):
        return StabilizerCheck(order, False, "graph is not connected and tetravalent")
    prof = transitivity_profile(x, g)
    if not prof.half_arc_transitive:
        return StabilizerCheck(order, False, "action is not half-arc-transitive")
    struct = alternating_structure(x, orientation(x, g))
    if struct.attachment_number is None or struct.attachment_number < 3:
        return StabilizerCheck(order, False, f"attachment number {struct.attachment_number} < 3")
    return StabilizerCheck(order, True)


class SearchStatus(enum.Enum):
    FOUND = "found"
    NONE = "none"          # every pair in the pool tried; none works
    UNKNOWN = "unknown"    # budget ran out first


@dataclass
class SubgroupSearch:
    status: SearchStatus
    group: PermGroup | None
    pairs_tried: int


def _flips_an_edge(x: Graph, s: Perm) -> bool:
    return any(s[u] == v and s[v] == u for u, v in x.edges)


def _pairs(pool: list[Perm]):
    for i in range(len(pool)):
        for j in range(i, len(pool)):
            yield pool[i], pool[j]


def _pool(group: PermGroup, keep) -> list[Perm]:
    elems = [e for e in group.elements() if not is_identity(e) and keep(e)]
    elems.sort(key=lambda e: (-element_order(e), e))
    return elems


def find_hat_subgroup(x: Graph, budget: int = 2_000_000, group: PermGroup | None = None) -> SubgroupSearch:
    """Look for H <= Aut(x) acting half-arc-transitively, among subgroups generated
    by at most two elements.

    Elements swapping the ends of an edge cannot lie in such an H, so they are
    left out of the pool.  An edge-transitive H has order at least |E(x)|; the
    search stops at the first H of exactly that order and otherwise returns the
    smallest one met.
    """
    if group is None:
        group = automorphism_group(x)
    if x.num_edges == 0:
        return SubgroupSearch(SearchStatus.NONE, None, 0)
    pool = _pool(group, lambda e: not _flips_an_edge(x, e))
    tried = 0
    n = x.n
    best = None
    for a, b in _pairs(pool):
        if tried >= budget:
            if best is not None:
                return SubgroupSearch(SearchStatus.FOUND, best, tried)
            return SubgroupSearch(SearchStatus.UNKNOWN, None, tried)
        tried += 1
        gens = (a,) if a == b else (a, b)
        nv, _ = _orbit_count(n, gens, lambda s, i: s[i])
        if nv != 1:
            continue
        if transitivity_profile(x, gens).half_arc_transitive:
            h = PermGroup(n, gens)
            if best is None or h.order() < best.order():
                best = h
            if h.order() == x.num_edges:
                break
    if best is not None:
        return SubgroupSearch(SearchStatus.FOUND, best, tried)
    return SubgroupSearch(SearchStatus.NONE, None, tried)


def find_regular_subgroup(x: Graph, budget: int = 2_000_000, group: PermGroup | None = None) -> SubgroupSearch:
    """Look for a subgroup of Aut(x) regular on vertices (a Cayley witness),
    among subgroups generated by at most two fixed-point-free elements."""
    if group is None:
        group = automorphism_group(x)
    n = x.n
    if n == 1:
        return SubgroupSearch(SearchStatus.FOUND, PermGroup(1), 0)
    pool = _pool(group, lambda e: all(e[i] != i for i in range(n)))
    tried = 0
    for a, b in _pairs(pool):
        if tried >= budget:
            return SubgroupSearch(SearchStatus.UNKNOWN, None, tried)
        tried += 1
        gens = (a,) if a == b else (a, b)
        nv, _ = _orbit_count(n, gens, lambda s, i: s[i])
        if nv != 1:
            continue
        h = PermGroup(n, gens)
        if h.order() == n:
            return SubgroupSearch(SearchStatus.FOUND, h, tried)
    return SubgroupSearch(SearchStatus.NONE, None, tried)


@dataclass
class AnalysisReport:
    n: int
    edges: int
    regular: bool
    vt: bool
    et: bool
    at: bool
    hat: bool
    aut_order: int
    radius: int | None = None
    attachment: int | None = None
    tight: bool | None = None

    KEYS = ("n", "edges", "regular", "vt", "et", "at", "hat", "aut_order", "radius", "attachment", "tight")

    def format(self) -> str:
        def fmt(v):
            if v is None:
                return "-"
            if isinstance(v, bool):
                return "true" if v else "false"
            return str(v)
        return "\n".join(f"{k}={fmt(getattr(self, k))}" for k in self.KEYS) + "\n"


def analyze(x: Graph, group: PermGroup | None = None) -> AnalysisReport:
    if group is None:
        group = automorphism_group(x)
    prof = transitivity_profile(x, group)
    rep = AnalysisReport(
        n=x.n, edges=x.num_edges, regular=valency(x) is not None,
        vt=prof.vertex_transitive, et=prof.edge_transitive, at=prof.arc_transitive,
        hat=prof.half_arc_transitive, aut_order=group.order(),
    )
    if prof.half_arc_transitive:
        try:
            st = alternating_structure(x, orientation(x, group))
        except ValueError:
            # valency other than 4: no 2-in/2-out alternating structure
            return rep
        rep.radius, rep.attachment, rep.tight = st.radius, st.attachment_number, st.tightly_attached
    return rep
