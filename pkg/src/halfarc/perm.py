"""Permutations and permutation groups.

A permutation of degree n is a tuple ``p`` with ``p[i]`` the image of ``i``.
Composition applies the left factor first: ``compose(p, q)[i] == q[p[i]]``.

Groups keep their generators and build a base and strong generating set
lazily, the first time order or membership is asked for.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from typing import Iterable, Iterator, Sequence

from .graph import Graph

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Sequence[int]) -> bool:
    return all(i == x for i, x in enumerate(p))


def check_perm(p: Sequence[int]) -> Perm:
    p = tuple(p)
    if sorted(p) != list(range(len(p))):
        raise ValueError("not a permutation")
    return p


def compose(p: Perm, q: Perm) -> Perm:
    """``i -> q[p[i]]``: apply ``p`` first."""
    if len(p) != len(q):
        raise ValueError(f"degree mismatch: {len(p)} vs {len(q)}")
    return tuple([q[x] for x in p])


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def power(p: Perm, k: int) -> Perm:
    if k < 0:
        p, k = inverse(p), -k
    result = identity(len(p))
    base = p
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Perm:
    img = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a] = b
    return check_perm(img)


def cycles_of(p: Perm) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each starting at its least point."""
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def element_order(p: Perm) -> int:
    return math.lcm(*(len(c) for c in cycles_of(p))) if not is_identity(p) else 1


def format_perm(p: Perm) -> str:
    return "[" + " ".join(map(str, p)) + "]"


def parse_perm(s: str) -> Perm:
    s = s.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"permutation must look like '[i0 i1 ...]': {s!r}")
    return check_perm(int(t) for t in s[1:-1].split())


def is_automorphism(g: Graph, p: Perm) -> bool:
    if len(p) != g.n:
        return False
    nbr = g._nbr_sets
    return all(p[v] in nbr[p[u]] for u, v in g.edges)


def _orbit_transversal(point: int, gens: Sequence[Perm], degree: int) -> dict[int, tuple[Perm, Perm]]:
    ident = identity(degree)
    trans = {point: (ident, ident)}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        ux = trans[x][0]
        for s in gens:
            y = s[x]
            if y not in trans:
                u = compose(ux, s)
                trans[y] = (u, inverse(u))
                queue.append(y)
    return trans


class PermGroup:
    """Finitely generated permutation group on ``range(degree)``."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (), *,
                 base_hint: Sequence[int] = (), seed: int = 0):
        gens = []
        seen = set()
        for g in generators:
            g = tuple(g)
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in a group of degree {degree}")
            check_perm(g)
            if not is_identity(g) and g not in seen:
                seen.add(g)
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._base_hint = tuple(base_hint)
        self._seed = seed
        self._chain = None

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    # -- stabilizer chain -------------------------------------------------

    def _sift(self, g: Perm, base, trans, start: int = 0) -> tuple[Perm, int]:
        for level in range(start, len(base)):
            b = g[base[level]]
            t = trans[level]
            if b not in t:
                return g, level
            g = compose(g, t[b][1])
        return g, len(base)

    def _build_chain(self):
        n = self.degree
        gens = list(self.generators)
        base: list[int] = []
        for b in self._base_hint:
            if b not in base:
                base.append(b)
        for g in gens:
            if all(g[b] == b for b in base):
                base.append(next(i for i in range(n) if g[i] != i))
        strong: list[list[Perm]] = [[] for _ in base]
        for g in gens:
            self._add_strong(g, base, strong)
        trans = [_orbit_transversal(base[i], strong[i], n) for i in range(len(base))]

        def insert(h: Perm, lo: int, hi: int) -> None:
            if hi == len(base):
                base.append(next(i for i in range(n) if h[i] != i))
                strong.append([])
                trans.append(None)
            for lvl in range(lo, hi + 1):
                strong[lvl].append(h)
                trans[lvl] = _orbit_transversal(base[lvl], strong[lvl], n)

        # random phase: sift random products, keep residues
        if gens:
            rng = random.Random(self._seed)
            hits = 0
            while hits < 12:
                g = identity(n)
                for _ in range(rng.randint(1, 2 * len(gens) + 4)):
                    g = compose(g, rng.choice(gens))
                h, j = self._sift(g, base, trans)
                if is_identity(h):
                    hits += 1
                else:
                    hits = 0
                    insert(h, 0, j)

        # deterministic verification: every Schreier generator must sift
        i = len(base) - 1
        while i >= 0:
            restart = False
            t = trans[i]
            for beta, (u_beta, _) in list(t.items()):
                for s in strong[i]:
                    sg = compose(compose(u_beta, s), t[s[beta]][1])
                    if is_identity(sg):
                        continue
                    h, j = self._sift(sg, base, trans, i + 1)
                    if not is_identity(h):
                        insert(h, i + 1, j)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1
        self._chain = (tuple(base), strong, trans)

    @staticmethod
    def _add_strong(g: Perm, base: list[int], strong: list[list[Perm]]) -> None:
        for lvl, b in enumerate(base):
            strong[lvl].append(g)
            if g[b] != b:
                break

    @property
    def chain(self):
        if self._chain is None:
            self._build_chain()
        return self._chain

    @property
    def base(self) -> tuple[int, ...]:
        return self.chain[0]

    @property
    def strong_generators(self) -> list[Perm]:
        out = []
        seen = set()
        for level in self.chain[1]:
            for g in level:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def basic_orbit_lengths(self) -> list[int]:
        return [len(t) for t in self.chain[2]]

    def order(self) -> int:
        return math.prod(self.basic_orbit_lengths())

    def contains(self, p: Sequence[int]) -> bool:
        p = tuple(p)
        if len(p) != self.degree:
            return False
        base, _, trans = self.chain
        h, j = self._sift(p, base, trans)
        return j == len(base) and is_identity(h)

    __contains__ = contains

    def elements(self) -> Iterator[Perm]:
        """Every element exactly once, in a fixed order."""
        base, _, trans = self.chain
        levels = [[u for _, (u, _) in sorted(t.items())] for t in trans]
        ident = identity(self.degree)
        for choice in itertools.product(*reversed(levels)):
            g = ident
            for u in choice:
                g = compose(g, u)
            yield g

    def random_element(self, rng: random.Random) -> Perm:
        base, _, trans = self.chain
        g = identity(self.degree)
        for t in reversed(trans):
            u = t[rng.choice(sorted(t))][0]
            g = compose(g, u)
        return g

    # -- orbit queries (generators only, no chain needed) ----------------

    def orbit(self, v: int) -> list[int]:
        seen = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for s in self.generators:
                y = s[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def orbits(self, domain: Iterable[int] | None = None) -> list[list[int]]:
        """Orbits meeting ``domain`` (default: all points), each cut down to ``domain``."""
        dom = list(range(self.degree)) if domain is None else sorted(set(domain))
        in_dom = set(dom)
        done = set()
        cells = []
        for v in dom:
            if v in done:
                continue
            orb = self.orbit(v)
            done.update(orb)
            cells.append([x for x in orb if x in in_dom])
        return cells

    def is_transitive(self, domain: Iterable[int] | None = None) -> bool:
        return len(self.orbits(domain)) == 1

    def point_stabilizer(self, v: int) -> "PermGroup":
        if not 0 <= v < self.degree:
            raise ValueError(f"point {v} out of range")
        base, strong, _ = self.chain
        if base and base[0] == v:
            return PermGroup(self.degree, strong[1] if len(strong) > 1 else ())
        g = PermGroup(self.degree, self.strong_generators, base_hint=(v,) + base)
        base2, strong2, _ = g.chain
        return PermGroup(self.degree, strong2[1] if len(strong2) > 1 else ())

    def is_semiregular(self, domain: Iterable[int] | None = None) -> bool:
        dom = list(range(self.degree)) if domain is None else sorted(set(domain))
        in_dom = set(dom)
        orbs = self.orbits(dom)
        invariant = all(len(c) == len(self.orbit(c[0])) for c in orbs)
        # stabilizers are conjugate along an orbit, so one point per orbit is enough
        points = [c[0] for c in orbs] if invariant else dom
        for v in points:
            stab = self.point_stabilizer(v)
            if any(s[x] != x for s in stab.generators for x in in_dom):
                return False
        return True

    def is_regular(self, domain: Iterable[int] | None = None) -> bool:
        return self.is_transitive(domain) and self.is_semiregular(domain)

    def subgroup(self, gens: Iterable[Sequence[int]]) -> "PermGroup":
        return PermGroup(self.degree, gens)


def naive_closure(degree: int, gens: Sequence[Perm], limit: int = 5000) -> set[Perm]:
    """All elements of <gens> by breadth-first closure; raises past ``limit``."""
    ident = identity(degree)
    elems = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = compose(x, s)
            if y not in elems:
                elems.add(y)
                if len(elems) > limit:
                    raise OverflowError(f"group exceeds {limit} elements")
                queue.append(y)
    return elems


def find_element_of_order(group: PermGroup, p: int, seed: int = 0, tries: int = 2000) -> Perm | None:
    """An element of order exactly ``p`` (p prime) obtained by powering random elements."""
    if group.order() % p:
        return None
    rng = random.Random(seed)
    for _ in range(tries):
        g = group.random_element(rng)
        k = element_order(g)
        if k % p == 0:
            return power(g, k // p)
    return None


def _induced_action(group: PermGroup, x: Graph, items: Sequence[tuple[int, int]],
                    index: dict[tuple[int, int], int], unordered: bool) -> PermGroup:
    gens = []
    for s in group.generators:
        if not is_automorphism(x, s):
            raise ValueError("generator is not an automorphism of the graph")
        img = []
        for u, v in items:
            a, b = s[u], s[v]
            if unordered and a > b:
                a, b = b, a
            img.append(index[(a, b)])
        gens.append(tuple(img))
    return PermGroup(len(items), gens)


def action_on_arcs(group: PermGroup, x: Graph) -> PermGroup:
    """Induced action on ``x.arcs`` (sorted by tail, head)."""
    return _induced_action(group, x, x.arcs, x.arc_index, unordered=False)


def action_on_edges(group: PermGroup, x: Graph) -> PermGroup:
    return _induced_action(group, x, x.edges, x.edge_index, unordered=True)
