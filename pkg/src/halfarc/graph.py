"""Finite simple undirected graphs on the vertex set 0..n-1, plus small constructions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``adj[v]`` is the ascending tuple of neighbours of ``v``.  Use
    :func:`from_edge_list` rather than calling the constructor directly unless
    the adjacency is already canonical.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")

    @cached_property
    def _nbr_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        return tuple((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        """All arcs sorted by (tail, head)."""
        return tuple((u, v) for u in range(self.n) for v in self.adj[u])

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def arc_index(self) -> dict[tuple[int, int], int]:
        return {a: i for i, a in enumerate(self.arcs)}

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph whose edges are ``{perm[u], perm[v]}``."""
        return from_edge_list(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has an endpoint out of range for n={n}")
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def edgeless(k: int) -> Graph:
    if k < 1:
        raise ValueError("edgeless graph needs at least one vertex")
    return from_edge_list(k, [])


def complete(k: int) -> Graph:
    return from_edge_list(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def path(k: int) -> Graph:
    return from_edge_list(k, [(i, i + 1) for i in range(k - 1)])


def lexicographic_product(g: Graph, h: Graph) -> Graph:
    """G[H]; vertex (x, y) has index ``x * h.n + y``."""
    if g.n == 0 or h.n == 0:
        raise ValueError("lexicographic product needs nonempty factors")
    k = h.n
    edges = []
    for x, v in g.edges:
        for y in range(k):
            for w in range(k):
                edges.append((x * k + y, v * k + w))
    for x in range(g.n):
        for y, w in h.edges:
            edges.append((x * k + y, x * k + w))
    return from_edge_list(g.n * k, edges)


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    # the empty graph counts as connected
    return len(components(g)) <= 1


def is_regular(g: Graph, k: int) -> bool:
    return all(len(a) == k for a in g.adj)


def valency(g: Graph) -> int | None:
    """Common degree, or None if ``g`` is not regular."""
    if g.n == 0:
        return 0
    d = len(g.adj[0])
    return d if is_regular(g, d) else None


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``vertices`` (relabelled in the given order) and the label map."""
    pos = {v: i for i, v in enumerate(vertices)}
    edges = [(pos[u], pos[v]) for u in vertices for v in g.adj[u] if v in pos and u < v]
    return from_edge_list(len(vertices), edges), list(vertices)
