"""Automorphism groups and isomorphism testing by individualization-refinement.

The search tree follows the usual recipe: refine the unit partition to an
equitable one, individualize a vertex of the first largest non-singleton cell,
refine again, and so on down to a discrete partition.  The leftmost leaf is
the reference; any other leaf with an identical refinement trace gives a
candidate relabelling, which is kept only if it preserves adjacency.

Refinement traces depend only on cell positions and neighbour counts, never on
vertex labels, so isomorphic graphs produce identical traces along
corresponding paths.  That is what makes the isomorphism search complete.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph
from .perm import Perm, PermGroup, is_automorphism


class OrderedPartition:
    """Ordered partition stored as a vertex array cut into consecutive cells.

    Cells are identified by their start position in ``lab``.
    """

    __slots__ = ("lab", "cell_of", "end", "ncells")

    def __init__(self, lab, cell_of, end, ncells):
        self.lab = lab
        self.cell_of = cell_of
        self.end = end
        self.ncells = ncells

    @classmethod
    def from_cells(cls, n: int, cells: Sequence[Sequence[int]]) -> "OrderedPartition":
        lab = [v for c in cells for v in c]
        if sorted(lab) != list(range(n)):
            raise ValueError("cells must partition the vertex set")
        cell_of = [0] * n
        end = [0] * n
        pos = 0
        for c in cells:
            if not c:
                raise ValueError("empty cell")
            for v in c:
                cell_of[v] = pos
            end[pos] = pos + len(c)
            pos += len(c)
        return cls(lab, cell_of, end, len(cells))

    @classmethod
    def unit(cls, n: int) -> "OrderedPartition":
        return cls.from_cells(n, [list(range(n))] if n else [])

    def copy(self) -> "OrderedPartition":
        return OrderedPartition(self.lab[:], self.cell_of[:], self.end[:], self.ncells)

    def starts(self) -> list[int]:
        out = []
        s = 0
        n = len(self.lab)
        while s < n:
            out.append(s)
            s = self.end[s]
        return out

    @property
    def cells(self) -> list[list[int]]:
        return [self.lab[s:self.end[s]] for s in self.starts()]

    def is_discrete(self) -> bool:
        return self.ncells == len(self.lab)

    def target_cell(self) -> int | None:
        """Start of the first largest non-singleton cell."""
        best, best_size = None, 1
        for s in self.starts():
            size = self.end[s] - s
            if size > best_size:
                best, best_size = s, size
        return best

    def individualize(self, v: int) -> tuple["OrderedPartition", int]:
        """Copy with ``v`` split off to the front of its cell; returns the new singleton's start."""
        p = self.copy()
        s = p.cell_of[v]
        e = p.end[s]
        seg = p.lab[s:e]
        seg.remove(v)
        p.lab[s:e] = [v] + seg
        p.end[s] = s + 1
        p.end[s + 1] = e
        for u in seg:
            p.cell_of[u] = s + 1
        p.ncells += 1
        return p, s


def _refine(adj, part: OrderedPartition, queue: list[int]) -> list:
    """Refine ``part`` in place to the coarsest equitable refinement; return its trace."""
    lab, cell_of, end = part.lab, part.cell_of, part.end
    n = len(lab)
    trace = []
    pending = deque(queue)
    in_queue = set(queue)
    while pending and part.ncells < n:
        w = pending.popleft()
        in_queue.discard(w)
        cnt: dict[int, int] = {}
        for x in lab[w:end[w]]:
            for u in adj[x]:
                cnt[u] = cnt.get(u, 0) + 1
        touched = sorted({cell_of[u] for u in cnt if end[cell_of[u]] - cell_of[u] > 1})
        for c in touched:
            ce = end[c]
            seg = lab[c:ce]
            groups: dict[int, list[int]] = {}
            for v in seg:
                groups.setdefault(cnt.get(v, 0), []).append(v)
            if len(groups) == 1:
                continue
            keys = sorted(groups)
            frags = []
            pos = c
            new_seg = []
            for k in keys:
                g = groups[k]
                frags.append((pos, len(g)))
                new_seg.extend(g)
                for v in g:
                    cell_of[v] = pos
                end[pos] = pos + len(g)
                pos += len(g)
            lab[c:ce] = new_seg
            part.ncells += len(frags) - 1
            trace.append((w, c, tuple((k, len(groups[k])) for k in keys)))
            if c in in_queue:
                for fs, _ in frags[1:]:
                    pending.append(fs)
                    in_queue.add(fs)
            else:
                largest = max(range(len(frags)), key=lambda i: (frags[i][1], -i))
                for i, (fs, _) in enumerate(frags):
                    if i != largest:
                        pending.append(fs)
                        in_queue.add(fs)
    trace.append(("cells", part.ncells))
    return trace


def refine(x: Graph, p: OrderedPartition | Sequence[Sequence[int]]) -> OrderedPartition:
    """Coarsest equitable refinement of ``p`` (not modified)."""
    part = p.copy() if isinstance(p, OrderedPartition) else OrderedPartition.from_cells(x.n, p)
    _refine(x.adj, part, part.starts())
    return part


@dataclass
class _Node:
    part: OrderedPartition
    trace: list
    target: int | None


class _Tree:
    """Reference (leftmost) path of the search tree for one graph."""

    def __init__(self, x: Graph, cells: Sequence[Sequence[int]] | None = None):
        self.x = x
        root = OrderedPartition.unit(x.n) if cells is None else OrderedPartition.from_cells(x.n, cells)
        trace = _refine(x.adj, root, root.starts())
        self.path: list[_Node] = [_Node(root, trace, root.target_cell())]
        self.choices: list[int] = []
        while self.path[-1].target is not None:
            node = self.path[-1]
            v = min(node.part.lab[node.target:node.part.end[node.target]])
            self.choices.append(v)
            self.path.append(self._child(node, v))
        self.leaf = self.path[-1].part.lab

    def _child(self, node: _Node, v: int) -> _Node:
        child, s = node.part.individualize(v)
        trace = [("ind", s)] + _refine(self.x.adj, child, [s])
        return _Node(child, trace, child.target_cell())

    @property
    def depth(self) -> int:
        return len(self.choices)


def _dive(tree_y: _Tree, node: _Node, level: int, ref: _Tree, accept) -> Perm | None:
    """Search below ``node`` (a node of ``tree_y``'s tree at ``level``) for a leaf matching
    the reference leaf of ``ref``; ``accept`` validates the candidate map."""
    if level == ref.depth:
        if not node.part.is_discrete():
            return None
        gamma = [0] * len(ref.leaf)
        for a, b in zip(ref.leaf, node.part.lab):
            gamma[a] = b
        gamma = tuple(gamma)
        return gamma if accept(gamma) else None
    t = node.target
    if t != ref.path[level].target:
        return None
    for u in sorted(node.part.lab[t:node.part.end[t]]):
        child = tree_y._child(node, u)
        if child.trace != ref.path[level + 1].trace:
            continue
        res = _dive(tree_y, child, level + 1, ref, accept)
        if res is not None:
            return res
    return None


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]


@dataclass
class AutomorphismResult:
    group: PermGroup
    generators: list[Perm]
    base: list[int]
    orbit_lengths: list[int]

    @property
    def order(self) -> int:
        out = 1
        for k in self.orbit_lengths:
            out *= k
        return out


def automorphism_search(x: Graph, cells: Sequence[Sequence[int]] | None = None) -> AutomorphismResult:
    """Generators of Aut(x) (colour-preserving if ``cells`` is given).

    Generators found while working at level k fix the first k base points, so
    together they form a strong generating set for the base of first-path
    choices, and the group order is the product of the basic orbit lengths.
    """
    tree = _Tree(x, cells)
    n = x.n
    gens: list[Perm] = []
    orbit_lengths = [0] * tree.depth

    def accept(gamma):
        return is_automorphism(x, gamma)

    for k in range(tree.depth - 1, -1, -1):
        node = tree.path[k]
        v = tree.choices[k]
        uf = _UnionFind(n)
        for g in gens:
            for i in range(n):
                uf.union(i, g[i])
        failed: list[int] = []
        cell = sorted(node.part.lab[node.target:node.part.end[node.target]])
        for w in cell:
            if w == v or uf.find(w) == uf.find(v):
                continue
            if any(uf.find(w) == uf.find(f) for f in failed):
                continue
            child = tree._child(node, w)
            gamma = None
            if child.trace == tree.path[k + 1].trace:
                gamma = _dive(tree, child, k + 1, tree, accept)
            if gamma is None:
                failed.append(w)
                continue
            gens.append(gamma)
            for i in range(n):
                uf.union(i, gamma[i])
        root_v = uf.find(v)
        orbit_lengths[k] = sum(1 for w in cell if uf.find(w) == root_v)
    group = PermGroup(n, gens, base_hint=tree.choices)
    return AutomorphismResult(group, gens, list(tree.choices), orbit_lengths)


def automorphism_group(x: Graph) -> PermGroup:
    return automorphism_search(x).group


def are_isomorphic(x: Graph, y: Graph) -> Perm | None:
    """A bijection ``phi`` with ``{u,v}`` in E(x) iff ``{phi[u], phi[v]}`` in E(y), or None."""
    if x.n != y.n or x.num_edges != y.num_edges:
        return None
    if sorted(map(len, x.adj)) != sorted(map(len, y.adj)):
        return None
    if x.n == 0:
        return ()
    tx = _Tree(x)
    ty_root = OrderedPartition.unit(y.n)
    trace = _refine(y.adj, ty_root, ty_root.starts())
    if trace != tx.path[0].trace:
        return None
    ty = _Tree.__new__(_Tree)
    ty.x = y

    def accept(phi):
        nbr = y._nbr_sets
        return all(phi[b] in nbr[phi[a]] for a, b in x.edges)

    phi = _dive(ty, _Node(ty_root, trace, ty_root.target_cell()), 0, tx, accept)
    if phi is not None:
        # independent re-check of the witness
        ex = {frozenset((phi[a], phi[b])) for a, b in x.edges}
        ey = {frozenset(e) for e in y.edges}
        if ex != ey:
            raise AssertionError("isomorphism witness failed verification")
    return phi


def brute_force_automorphisms(x: Graph) -> list[Perm]:
    """Every automorphism, by extending partial bijections one vertex at a time.

    Reference oracle for small graphs: it uses only degrees and adjacency
    between already-mapped vertices, nothing from the refinement search.
    """
    n = x.n
    nbr = x._nbr_sets
    order = _bfs_order(x)
    img = [-1] * n
    used = [False] * n
    out = []

    def extend(i: int) -> None:
        if i == n:
            out.append(tuple(img))
            return
        v = order[i]
        for w in range(n):
            if used[w] or len(x.adj[w]) != len(x.adj[v]):
                continue
            ok = True
            for u in order[:i]:
                if (u in nbr[v]) != (img[u] in nbr[w]):
                    ok = False
                    break
            if ok:
                img[v] = w
                used[w] = True
                extend(i + 1)
                used[w] = False
                img[v] = -1

    extend(0)
    return out


def _bfs_order(x: Graph) -> list[int]:
    seen = [False] * x.n
    out = []
    for s in range(x.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            out.append(u)
            for v in x.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
    return out


def permutations_preserving_edges(x: Graph) -> int:
    """Count bijections preserving adjacency by trying all n! of them (n <= 8)."""
    if x.n > 8:
        raise ValueError("exhaustive permutation count limited to 8 vertices")
    return sum(1 for p in itertools.permutations(range(x.n)) if is_automorphism(x, p))
