"""Voltage assignments over finite abelian groups, derived (covering) graphs,
quotients by group orbits, and lifting automorphisms along covers."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .autgroup import automorphism_group
from .families import Element, FiniteAbelianGroup
from .graph import Graph, components, from_edge_list, induced_subgraph, is_connected
from .perm import Perm, PermGroup, compose, inverse, is_automorphism
from .symmetry import transitivity_profile

Edge = tuple[int, int]


@dataclass(frozen=True)
class VoltageAssignment:
    """Voltages stored on the (min, max) arc of each edge; the reverse arc carries the negative."""

    base: Graph
    group: FiniteAbelianGroup
    volts: dict[Edge, Element] = field(default_factory=dict)

    def __post_init__(self):
        for (u, v), g in self.volts.items():
            if u >= v or not self.base.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not a stored edge direction of the base graph")
            if len(g) != len(self.group.orders):
                raise ValueError(f"voltage {g} does not belong to {self.group}")

    @classmethod
    def from_arcs(cls, base: Graph, group: FiniteAbelianGroup,
                  values: dict[tuple[int, int], Sequence[int]]) -> "VoltageAssignment":
        volts: dict[Edge, Element] = {}
        for (u, v), g in values.items():
            if not base.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not an edge of the base graph")
            g = group.element(g)
            key, val = ((u, v), g) if u < v else ((v, u), group.neg(g))
            if key in volts and volts[key] != val:
                raise ValueError(f"conflicting voltages given for edge {key}")
            volts[key] = val
        return cls(base, group, volts)

    def voltage(self, u: int, v: int) -> Element:
        if u < v:
            return self.volts.get((u, v), self.group.zero)
        return self.group.neg(self.volts.get((v, u), self.group.zero))


@dataclass(frozen=True)
class SpanningTree:
    root: int
    parent: tuple[int | None, ...]
    arcs: tuple[tuple[int, int], ...]   # (parent, child), in BFS order

    def edges(self) -> set[Edge]:
        return {(min(a, b), max(a, b)) for a, b in self.arcs}


def spanning_tree(x: Graph) -> SpanningTree:
    """Breadth-first tree from vertex 0, neighbours taken in ascending order."""
    if not is_connected(x):
        raise ValueError("spanning tree needs a connected graph")
    if x.n == 0:
        return SpanningTree(0, (), ())
    parent: list[int | None] = [None] * x.n
    seen = [False] * x.n
    seen[0] = True
    arcs = []
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in x.adj[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                arcs.append((u, v))
                queue.append(v)
    return SpanningTree(0, tuple(parent), tuple(arcs))


def cotree_edges(x: Graph, t: SpanningTree) -> list[Edge]:
    te = t.edges()
    return [e for e in x.edges if e not in te]


def is_t_reduced(xi: VoltageAssignment, t: SpanningTree) -> bool:
    return all(not any(xi.voltage(a, b)) for a, b in t.arcs)


def derived_graph(xi: VoltageAssignment) -> Graph:
    """X x_xi K: vertex (u, g) has index u*|K| + rank(g); arc (u, v) joins (u, g) to (v, xi(u,v) + g)."""
    k = xi.group
    size = k.size
    elems = k.elements()
    edges = []
    for u, v in xi.base.edges:
        a = xi.voltage(u, v)
        for g in elems:
            edges.append((u * size + k.rank(g), v * size + k.rank(k.add(a, g))))
    return from_edge_list(xi.base.n * size, edges)


def natural_projection(xi: VoltageAssignment) -> list[int]:
    size = xi.group.size
    return [i // size for i in range(xi.base.n * size)]


def is_covering_projection(cover: Graph, base: Graph, proj: Sequence[int]) -> bool:
    """``proj`` maps each neighbourhood bijectively onto the image vertex's neighbourhood."""
    if len(proj) != cover.n:
        return False
    for v in range(cover.n):
        images = [proj[w] for w in cover.adj[v]]
        if sorted(images) != list(base.adj[proj[v]]):
            return False
    return True


def voltage_action(xi: VoltageAssignment) -> PermGroup:
    """K acting on the derived graph by (u, g) -> (u, g + h)."""
    k = xi.group
    size = k.size
    elems = k.elements()
    gens = []
    for h in k.unit_vectors():
        img = [0] * (xi.base.n * size)
        for u in range(xi.base.n):
            for g in elems:
                img[u * size + k.rank(g)] = u * size + k.rank(k.add(g, h))
        gens.append(tuple(img))
    return PermGroup(xi.base.n * size, gens)


def potentials(xi: VoltageAssignment, t: SpanningTree) -> list[Element]:
    """phi(root) = 0 and phi(child) = phi(parent) + xi(parent, child)."""
    k = xi.group
    phi = [k.zero] * xi.base.n
    for a, b in t.arcs:
        phi[b] = k.add(phi[a], xi.voltage(a, b))
    return phi


def t_reduce(xi: VoltageAssignment, t: SpanningTree) -> VoltageAssignment:
    """Equivalent assignment that is trivial on the tree: xi'(u,v) = phi(u) + xi(u,v) - phi(v).

    (u, g) -> (u, g - phi(u)) is an isomorphism between the two derived graphs.
    """
    k = xi.group
    phi = potentials(xi, t)
    volts = {}
    for u, v in xi.base.edges:
        g = k.sub(k.add(phi[u], xi.voltage(u, v)), phi[v])
        if any(g):
            volts[(u, v)] = g
    return VoltageAssignment(xi.base, k, volts)


def t_reduction_isomorphism(xi: VoltageAssignment, t: SpanningTree) -> Perm:
    k = xi.group
    size = k.size
    phi = potentials(xi, t)
    img = [0] * (xi.base.n * size)
    for u in range(xi.base.n):
        for g in k.elements():
            img[u * size + k.rank(g)] = u * size + k.rank(k.sub(g, phi[u]))
    return tuple(img)


def is_connected_cover(xi: VoltageAssignment, t: SpanningTree | None = None) -> bool:
    """For a T-reduced assignment on a connected base: the cotree voltages generate K."""
    if t is None:
        t = spanning_tree(xi.base)
    if not is_t_reduced(xi, t):
        raise ValueError("voltage assignment is not T-reduced for the given tree")
    gens = [xi.voltage(u, v) for u, v in cotree_edges(xi.base, t)]
    return len(xi.group.span(gens)) == xi.group.size


def random_t_reduced(base: Graph, group: FiniteAbelianGroup, rng: random.Random,
                     t: SpanningTree | None = None) -> VoltageAssignment:
    if t is None:
        t = spanning_tree(base)
    volts = {}
    for e in cotree_edges(base, t):
        g = tuple(rng.randrange(k) for k in group.orders)
        if any(g):
            volts[e] = g
    return VoltageAssignment(base, group, volts)


# -- quotients ------------------------------------------------------------

def _gens(n: PermGroup | Sequence[Perm]) -> list[Perm]:
    return list(n.generators if isinstance(n, PermGroup) else n)


def quotient_graph(x: Graph, n: PermGroup | Sequence[Perm]) -> tuple[Graph, list[int]]:
    """X/N with orbits numbered by least element; returns the graph and vertex -> orbit index."""
    gens = _gens(n)
    for s in gens:
        if not is_automorphism(x, s):
            raise ValueError("group generator is not an automorphism of the graph")
    orbs = PermGroup(x.n, gens).orbits()
    orbit_of = [0] * x.n
    for i, orb in enumerate(orbs):
        for v in orb:
            orbit_of[v] = i
    edges = {(orbit_of[u], orbit_of[v]) for u, v in x.edges if orbit_of[u] != orbit_of[v]}
    return from_edge_list(len(orbs), edges), orbit_of


def quotient_by_partition(x: Graph, cells: Sequence[Sequence[int]]) -> tuple[Graph, list[int]]:
    orbit_of = [0] * x.n
    for i, c in enumerate(cells):
        for v in c:
            orbit_of[v] = i
    edges = {(orbit_of[u], orbit_of[v]) for u, v in x.edges if orbit_of[u] != orbit_of[v]}
    return from_edge_list(len(cells), edges), orbit_of


def is_regular_covering(x: Graph, n: PermGroup | Sequence[Perm]) -> bool:
    """N semiregular on vertices and edges, and X -> X/N a local bijection on neighbourhoods."""
    group = n if isinstance(n, PermGroup) else PermGroup(x.n, n)
    if not group.is_semiregular():
        return False
    # with vertices semiregular, a fixed edge would have to be swapped end for end
    for u, v in x.edges:
        h = _element_mapping(group, u, v)
        if h is not None and h[v] == u:
            return False
    q, orbit_of = quotient_graph(x, group)
    return is_covering_projection(x, q, orbit_of)


def _element_mapping(group: PermGroup, u: int, v: int) -> Perm | None:
    """Some element sending u to v, or None."""
    if not group.generators:
        return None if u != v else tuple(range(group.degree))
    trans = {u: tuple(range(group.degree))}
    queue = deque([u])
    while queue:
        a = queue.popleft()
        for s in group.generators:
            b = s[a]
            if b not in trans:
                trans[b] = compose(trans[a], s)
                if b == v:
                    return trans[b]
                queue.append(b)
    return trans.get(v)


def project_group(x: Graph, n: PermGroup | Sequence[Perm], g: PermGroup | Sequence[Perm]) -> list[Perm]:
    """Action of each generator of G on the N-orbits (G must permute them)."""
    _, orbit_of = quotient_graph(x, n)
    k = max(orbit_of) + 1 if orbit_of else 0
    out = []
    for s in _gens(g):
        img = [-1] * k
        for v in range(x.n):
            b = orbit_of[s[v]]
            a = orbit_of[v]
            if img[a] == -1:
                img[a] = b
            elif img[a] != b:
                raise ValueError("group does not preserve the orbit partition")
        out.append(tuple(img))
    return out


def is_normalized_by(n: PermGroup, g: PermGroup | Sequence[Perm]) -> bool:
    for s in _gens(g):
        si = inverse(s)
        for h in n.generators:
            if not n.contains(compose(compose(si, h), s)):
                return False
    return True


# -- lifts ----------------------------------------------------------------

def lift_automorphism(xi: VoltageAssignment, alpha: Perm) -> Perm | None:
    """An automorphism of the derived graph projecting to ``alpha``, or None."""
    base = xi.base
    if not is_automorphism(base, alpha):
        raise ValueError("alpha is not an automorphism of the base graph")
    k = xi.group
    size = k.size
    elems = k.elements()
    cover = derived_graph(xi)
    elem_of = {k.rank(g): g for g in elems}
    comps = components(cover)
    # each component is pinned by one root image; try every fibre element per component
    roots = [c[0] for c in comps]
    img = [-1] * cover.n

    def propagate(root: int, target: int) -> list[int] | None:
        local = {root: target}
        queue = deque([root])
        while queue:
            a = queue.popleft()
            u, g = divmod(a, size)
            ta = local[a]
            tu, tg = divmod(ta, size)
            gel, tgel = elem_of[g], elem_of[tg]
            for v in base.adj[u]:
                b = v * size + k.rank(k.add(xi.voltage(u, v), gel))
                av = alpha[v]
                tb = av * size + k.rank(k.add(xi.voltage(tu, av), tgel))
                if b in local:
                    if local[b] != tb:
                        return None
                else:
                    local[b] = tb
                    queue.append(b)
        return local

    for root in roots:
        u = root // size
        for h in elems:
            local = propagate(root, alpha[u] * size + k.rank(h))
            if local is None:
                continue
            taken = set(img)
            if any(t in taken for t in local.values()):
                continue
            for a, t in local.items():
                img[a] = t
            break
        else:
            return None
    lifted = tuple(img)
    if sorted(lifted) != list(range(cover.n)) or not is_automorphism(cover, lifted):
        return None
    return lifted


def liftable_automorphisms(xi: VoltageAssignment, group: PermGroup) -> list[tuple[Perm, Perm]]:
    """Pairs (alpha, lift) for every element of ``group`` that lifts."""
    out = []
    for alpha in group.elements():
        lift = lift_automorphism(xi, alpha)
        if lift is not None:
            out.append((alpha, lift))
    return out


@dataclass
class CoverQuotientCheck:
    regular_cover: bool
    normal: bool
    cover_half: bool
    quotient_half: bool

    @property
    def agrees(self) -> bool:
        return self.cover_half == self.quotient_half


def cover_quotient_check(x: Graph, g: PermGroup, n: PermGroup) -> CoverQuotientCheck:
    """Compare G-half-arc-transitivity of X with G/N-half-arc-transitivity of X/N."""
    regular = is_regular_covering(x, n)
    normal = is_normalized_by(n, g)
    q, _ = quotient_graph(x, n)
    projected = project_group(x, n, g)
    cover_half = transitivity_profile(x, g).half_arc_transitive
    quotient_half = transitivity_profile(q, projected).half_arc_transitive
    return CoverQuotientCheck(regular, normal, cover_half, quotient_half)


# -- orbit ladders (quotient a cycle, orbits of size 4) --------------------

def _pairing_towards(x: Graph, cell: Sequence[int], other: set[int]) -> frozenset[frozenset[int]]:
    by_nbrs: dict[frozenset[int], list[int]] = {}
    for v in cell:
        by_nbrs.setdefault(frozenset(w for w in x.adj[v] if w in other), []).append(v)
    return frozenset(frozenset(vs) for vs in by_nbrs.values())


def classify_orbit_ladder(x: Graph, cells: Sequence[Sequence[int]] | PermGroup) -> str:
    """Classify a tetravalent graph whose cells have size 4 and whose quotient is a cycle.

    Returns one of ``"8-cycle"`` (some pair of adjacent cells spans an 8-cycle),
    ``"disconnected"`` (two 4-cycles between adjacent cells, and the graph falls
    apart), ``"lex"`` (the C_{2p}[2K_1] pattern), ``"praeger-xu"`` (the
    C(2;p,2) pattern) or ``"mixed"``.
    """
    if isinstance(cells, PermGroup):
        cells = cells.orbits()
    cells = [sorted(c) for c in cells]
    if any(len(c) != 4 for c in cells):
        raise ValueError("every cell must have 4 vertices")
    q, orbit_of = quotient_by_partition(x, cells)
    p = q.n
    if p < 3 or not all(len(a) == 2 for a in q.adj) or not is_connected(q):
        raise ValueError("quotient by the cells is not a cycle")
    if any(orbit_of[u] == orbit_of[v] for u, v in x.edges):
        raise ValueError("edges inside a cell")
    # walk the quotient cycle from cell 0
    order = [0, q.adj[0][0]]
    while len(order) < p:
        a, b = q.adj[order[-1]]
        order.append(a if a != order[-2] else b)
    ladder = [cells[i] for i in order]
    forward, backward = [], []
    for i in range(p):
        here, nxt = ladder[i], ladder[(i + 1) % p]
        sub, _ = induced_subgraph(x, here + nxt)
        if not all(len(a) == 2 for a in sub.adj):
            raise ValueError("adjacent cells are not joined by a 2-regular bipartite graph")
        if len(components(sub)) == 1:
            return "8-cycle"
        forward.append(_pairing_towards(x, here, set(nxt)))
        backward.append(_pairing_towards(x, here, set(ladder[(i - 1) % p])))
    same = [forward[i] == backward[i] for i in range(p)]
    if all(same):
        return "lex" if is_connected(x) else "disconnected"
    if not any(same):
        return "praeger-xu"
    return "mixed"


# -- voltage files ----------------------------------------------------------

def read_voltage_file(text: str, base: Graph) -> VoltageAssignment:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0][0] != "group" or len(lines[0]) < 2:
        raise ValueError("first line must be 'group k1 k2 ...'")
    group = FiniteAbelianGroup(tuple(int(t) for t in lines[0][1:]))
    values = {}
    for row in lines[1:]:
        if len(row) != 2 + len(group.orders):
            raise ValueError(f"voltage line {' '.join(row)!r} does not match group {group}")
        u, v = int(row[0]), int(row[1])
        if (u, v) in values or (v, u) in values:
            raise ValueError(f"edge ({u}, {v}) listed twice")
        values[(u, v)] = [int(t) for t in row[2:]]
    return VoltageAssignment.from_arcs(base, group, values)


def write_voltage_file(xi: VoltageAssignment) -> str:
    out = ["group " + " ".join(map(str, xi.group.orders))]
    for (u, v), g in sorted(xi.volts.items()):
        if any(g):
            out.append(f"{u} {v} " + " ".join(map(str, g)))
    return "\n".join(out) + "\n"


# -- randomized cover search --------------------------------------------

@dataclass
class CoverSample:
    index: int
    connected: bool
    hat: bool | None
    aut_order: int | None
    voltages: VoltageAssignment


def sample_covers(base: Graph, group: FiniteAbelianGroup, seed: int, tries: int,
                  analyse: bool = True) -> list[CoverSample]:
    """Draw ``tries`` T-reduced assignments from ``random.Random(seed)``; for
    connected covers, compute the full automorphism group and classify."""
    rng = random.Random(seed)
    t = spanning_tree(base)
    out = []
    for i in range(tries):
        xi = random_t_reduced(base, group, rng, t)
        conn = is_connected_cover(xi, t)
        hat = order = None
        if conn and analyse:
            cover = derived_graph(xi)
            aut = automorphism_group(cover)
            hat = transitivity_profile(cover, aut).half_arc_transitive
            order = aut.order()
        out.append(CoverSample(i, conn, hat, order, xi))
    return out


# -- voltages invariant under a group -------------------------------------

def _nullspace_mod_p(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {f : rows . f = 0 (mod p)}."""
    mat = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [x * inv % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc] % p
        basis.append(vec)
    return basis


def cycle_space_action(x: Graph, alpha: Perm, t: SpanningTree) -> list[list[int]]:
    """Integer matrix M with M[e][e'] the signed number of times alpha(C_e) crosses cotree edge e',
    C_e being the fundamental cycle of cotree edge e (oriented min -> max)."""
    cot = cotree_edges(x, t)
    col = {e: i for i, e in enumerate(cot)}

    def root_path(v):
        arcs = []
        while t.parent[v] is not None:
            arcs.append((v, t.parent[v]))
            v = t.parent[v]
        return arcs  # v -> root

    rows = []
    for u, v in cot:
        walk = [(b, a) for a, b in reversed(root_path(u))] + [(u, v)] + root_path(v)
        row = [0] * len(cot)
        for a, b in walk:
            ia, ib = alpha[a], alpha[b]
            if (ia, ib) in col:
                row[col[(ia, ib)]] += 1
            elif (ib, ia) in col:
                row[col[(ib, ia)]] -= 1
        rows.append(row)
    return rows


def invariant_voltages(x: Graph, gens: Sequence[Perm], p: int, limit: int = 16) -> list[VoltageAssignment]:
    """T-reduced Z_p assignments under which every generator lifts.

    For prime p and a connected cover, alpha lifts iff the cotree voltage vector
    f satisfies f(alpha_* C) = lambda * f(C) on the cycle space for some unit
    lambda; this solves that system for every choice of the lambdas.
    """
    t = spanning_tree(x)
    cot = cotree_edges(x, t)
    mats = [cycle_space_action(x, a, t) for a in gens]
    group = FiniteAbelianGroup.of(p)
    found = []
    seen = set()
    units = range(1, p)
    for lambdas in _product(units, len(mats)):
        rows = []
        for m, lam in zip(mats, lambdas):
            for i, r in enumerate(m):
                rows.append([c - (lam if j == i else 0) for j, c in enumerate(r)])
        for vec in _nullspace_mod_p(rows, len(cot), p):
            lead = next(c for c in vec if c)
            norm = tuple(c * pow(lead, -1, p) % p for c in vec)
            if norm in seen:
                continue
            seen.add(norm)
            found.append(VoltageAssignment(x, group, {e: (c,) for e, c in zip(cot, norm) if c}))
            if len(found) >= limit:
                return found
    return found


def _product(values, k):
    if k == 0:
        yield ()
        return
    for head in values:
        for rest in _product(values, k - 1):
            yield (head,) + rest
