"""Named tetravalent graph families, abelian groups, Cayley graphs and the
arithmetic predicates that decide half-arc-transitivity of the X(r;m,n) family.

Vertex numbering for each constructor:

* ``x_rmn``: u_i^j -> i*n + j
* ``rose_window_6_5_4``: S_i -> i, Q_i -> 6 + i
* ``wreath``: E_i -> i, F_i -> n + i
* ``praeger_xu``: (i, (x, y)) -> 4*i + 2*x + y
* ``cayley`` / ``ca_graph``: group elements in lexicographic tuple order
* ``lex_cycle``: (x, y) in C_n[2K_1] -> 2*x + y
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, cycle, edgeless, from_edge_list, lexicographic_product

Element = tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def multiplicative_order(a: int, n: int) -> int:
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z_{k1} x ... x Z_{kr}, written additively; elements are residue tuples."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if any(k < 1 for k in self.orders):
            raise ValueError("cyclic factor orders must be >= 1")

    @classmethod
    def of(cls, *orders: int) -> "FiniteAbelianGroup":
        return cls(tuple(orders))

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @property
    def zero(self) -> Element:
        return tuple(0 for _ in self.orders)

    def element(self, values: Iterable[int]) -> Element:
        values = tuple(values)
        if len(values) != len(self.orders):
            raise ValueError(f"expected {len(self.orders)} coordinates, got {len(values)}")
        return tuple(v % k for v, k in zip(values, self.orders))

    def elements(self) -> list[Element]:
        return list(itertools.product(*(range(k) for k in self.orders)))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % k for x, y, k in zip(a, b, self.orders))

    def neg(self, a: Element) -> Element:
        return tuple(-x % k for x, k in zip(a, self.orders))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % k for x, y, k in zip(a, b, self.orders))

    def rank(self, a: Element) -> int:
        r = 0
        for x, k in zip(a, self.orders):
            r = r * k + x
        return r

    def unit_vectors(self) -> list[Element]:
        return [tuple(1 if j == i else 0 for j in range(len(self.orders)))
                for i in range(len(self.orders)) if self.orders[i] > 1]

    def span(self, gens: Iterable[Element]) -> set[Element]:
        gens = [g for g in gens if any(g)]
        seen = {self.zero}
        frontier = [self.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def __str__(self) -> str:
        return " x ".join(f"Z{k}" for k in self.orders) or "1"


def cayley(group: FiniteAbelianGroup, s: Iterable[Iterable[int]]) -> Graph:
    """Cay(group, s): x ~ y iff y - x in s."""
    conn = {group.element(x) for x in s}
    if group.zero in conn:
        raise ValueError("connection set contains the identity")
    if any(group.neg(x) not in conn for x in conn):
        raise ValueError("connection set is not closed under inverses")
    elems = group.elements()
    edges = [(group.rank(x), group.rank(group.add(x, c))) for x in elems for c in conn]
    return from_edge_list(len(elems), edges)


def x_rmn(r: int, m: int, n: int) -> Graph:
    """X(r;m,n): u_i^j ~ u_{i+1}^{j +- r^i}; the step from layer m-1 to 0 uses r^(m-1)."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be an odd integer >= 3, got {n}")
    if m < 3:
        raise ValueError(f"m must be >= 3, got {m}")
    r %= n
    if math.gcd(r, n) != 1:
        raise ValueError(f"r={r} is not a unit mod {n}")
    if pow(r, m, n) not in (1, n - 1):
        raise ValueError(f"r^m = {pow(r, m, n)} is not +-1 mod {n}")
    edges = []
    for i in range(m):
        step = pow(r, i, n)
        nxt = (i + 1) % m
        for j in range(n):
            edges.append((i * n + j, nxt * n + (j + step) % n))
            edges.append((i * n + j, nxt * n + (j - step) % n))
    return from_edge_list(m * n, edges)


def rose_window_6_5_4() -> Graph:
    edges = []
    for i in range(6):
        edges.append((i, (i + 1) % 6))            # rim
        edges.append((i, 6 + i))                  # inspoke
        edges.append(((i + 5) % 6, 6 + i))        # outspoke
        edges.append((6 + i, 6 + (i + 4) % 6))    # hub
    return from_edge_list(12, edges)


def wreath(n: int) -> Graph:
    if n < 3:
        raise ValueError("wreath graph needs n >= 3")
    edges = []
    for i in range(n):
        j = (i + 1) % n
        edges += [(i, j), (i, n + j), (n + i, j), (n + i, n + j)]
    return from_edge_list(2 * n, edges)


def praeger_xu(p: int) -> Graph:
    """C(2;p,2) on Z_p x Z_2^2."""
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    edges = []
    for i in range(p):
        for x, y, z in itertools.product((0, 1), repeat=3):
            edges.append((4 * i + 2 * x + y, 4 * ((i + 1) % p) + 2 * y + z))
    return from_edge_list(4 * p, edges)


def least_order4_unit(p: int) -> int:
    return next(w for w in range(2, p) if pow(w, 4, p) == 1 and pow(w, 2, p) != 1)


def ca_connection_set(p: int, variant: int, w: int | None = None) -> list[Element]:
    if not is_prime(p) or p % 4 != 1:
        raise ValueError(f"p must be a prime congruent to 1 mod 4, got {p}")
    if variant not in (0, 1):
        raise ValueError("variant must be 0 or 1")
    if w is None:
        w = least_order4_unit(p)
    elif pow(w, 4, p) != 1 or pow(w, 2, p) == 1:
        raise ValueError(f"{w} does not have order 4 mod {p}")
    e = pow(w, 2 if variant == 0 else 1, p)
    k = 2 * p
    return [(1, 0), (k - 1, 0), (e % k, 1), (-e % k, 1)]


def ca_graph(p: int, variant: int, w: int | None = None) -> Graph:
    """CA^0_{4p} / CA^1_{4p} as Cayley graphs on Z_{2p} x Z_2 with a=(1,0), b=(0,1)."""
    return cayley(FiniteAbelianGroup.of(2 * p, 2), ca_connection_set(p, variant, w))


def lex_cycle(n: int) -> Graph:
    return lexicographic_product(cycle(n), edgeless(2))


# -- X(r;m,n) arithmetic ----------------------------------------------------

def _check_rmn(r: int, m: int, n: int) -> int:
    if m < 3:
        raise ValueError(f"m must be >= 3, got {m}")
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be an odd integer >= 3, got {n}")
    r %= n
    if math.gcd(r, n) != 1:
        raise ValueError(f"r={r} is not a unit mod {n}")
    if pow(r, m, n) not in (1, n - 1):
        raise ValueError(f"r^m is not +-1 mod {n}")
    return r


def associates(r: int, n: int) -> set[int]:
    """{r, -r, r^-1, -r^-1} mod n; X(q;m,n) is the same graph up to relabelling for each q here."""
    ri = pow(r, -1, n)
    return {r % n, -r % n, ri, -ri % n}


def prop1_predicate(r: int, m: int, n: int) -> tuple[bool, str | None]:
    """True iff X(r;m,n) avoids every exceptional condition; otherwise the reason.

    Condition (2) is matched up to the associates of r, since X(2;3,7),
    X(3;3,7), X(4;3,7) and X(5;3,7) are one graph.
    """
    r = _check_rmn(r, m, n)
    if pow(r, 2, n) in (1, n - 1):
        return False, "condition (1): r^2 = +-1"
    if (m, n) == (3, 7) and 2 in associates(r, n):
        return False, "condition (2): (r;m,n) = (2;3,7)"
    if m == 6 and n % 7 == 0:
        k = n // 7
        if k % 2 == 1 and math.gcd(7, k) == 1 and pow(r, 6, n) == 1:
            sols = [q for q in sorted(associates(r, n))
                    if (q * q + q - 2) % n == 0 and (7 * (q - 1)) % n == 0 and q % 7 == 5]
            if len(sols) == 1:
                return False, "condition (3): (r;m,n) = (r;6,7k) with unique q"
    return True, None


def prop2_predicate(p: int) -> bool:
    """Whether a tetravalent half-arc-transitive graph of order 4p exists."""
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    return p % 8 == 1


def valid_rmn_triples(m_range: Iterable[int], n_range: Iterable[int]) -> list[tuple[int, int, int]]:
    """All (r, m, n) with r in 1..n-1 a unit and r^m = +-1 mod n."""
    out = []
    for m in m_range:
        for n in n_range:
            for r in range(1, n):
                if math.gcd(r, n) == 1 and pow(r, m, n) in (1, n - 1):
                    out.append((r, m, n))
    return out


# -- family specifier mini-language ------------------------------------------

def _ints(arg: str, count: int, spec: str) -> list[int]:
    try:
        vals = [int(t) for t in arg.split(",")]
    except ValueError:
        raise ValueError(f"bad integer list in family spec {spec!r}") from None
    if len(vals) != count:
        raise ValueError(f"family spec {spec!r} needs {count} parameter(s)")
    return vals


def parse_family(spec: str) -> Graph:
    """Build a graph from ``x:r,m,n``, ``rw6``, ``wreath:n``, ``px:p``, ``ca0:p``,
    ``ca1:p``, ``lex-cycle:n`` or ``cycle:n``."""
    spec = spec.strip()
    tag, _, arg = spec.partition(":")
    if tag == "x":
        return x_rmn(*_ints(arg, 3, spec))
    if tag == "rw6" and not arg:
        return rose_window_6_5_4()
    if tag == "wreath":
        return wreath(*_ints(arg, 1, spec))
    if tag == "px":
        return praeger_xu(*_ints(arg, 1, spec))
    if tag in ("ca0", "ca1"):
        return ca_graph(_ints(arg, 1, spec)[0], int(tag[-1]))
    if tag == "lex-cycle":
        return lex_cycle(*_ints(arg, 1, spec))
    if tag == "cycle":
        return cycle(*_ints(arg, 1, spec))
    raise ValueError(f"unknown family spec {spec!r}")
