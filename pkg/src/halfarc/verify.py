"""The claim-verification battery run by ``halfarc verify`` and the acceptance tests."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .autgroup import are_isomorphic, automorphism_group, brute_force_automorphisms
from .coverings import (
    derived_graph, is_connected_cover, is_covering_projection, is_regular_covering,
    natural_projection, quotient_graph, random_t_reduced, spanning_tree, voltage_action,
)
from .families import (
    FiniteAbelianGroup, ca_graph, is_prime, lex_cycle, multiplicative_order, praeger_xu,
    prop1_predicate, rose_window_6_5_4, valid_rmn_triples, wreath, x_rmn,
)
from .graph import Graph, complete, cycle, edgeless, is_connected, path
from .perm import action_on_arcs
from .symmetry import (
    alternating_structure, analyze, find_hat_subgroup, orientation,
    stabilizer_order_check, transitivity_profile,
)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.title}: {self.detail} ({self.seconds:.2f}s / {self.budget:g}s)"


def _timed(number: int, title: str, budget: float, body: Callable[[], tuple[bool, str]]) -> CriterionResult:
    t0 = time.perf_counter()
    ok, detail = body()
    dt = time.perf_counter() - t0
    if dt >= budget:
        ok = False
        detail += "; over time budget"
    return CriterionResult(number, title, ok, detail, dt, budget)


def _rose_window_order() -> tuple[bool, str]:
    order = automorphism_group(rose_window_6_5_4()).order()
    return order == 48, f"|Aut(R6(5,4))| = {order}"


def _wreath_order() -> tuple[bool, str]:
    w = wreath(6)
    order = automorphism_group(w).order()
    iso = are_isomorphic(w, lex_cycle(6)) is not None
    return order == 768 and iso, f"|Aut(W(6,2))| = {order}, W(6,2) ~ C6[2K1]: {iso}"


def _order12_hat_subgroups() -> tuple[bool, str]:
    parts, ok = [], True
    for name, g in (("W(6,2)", wreath(6)), ("R6(5,4)", rose_window_6_5_4())):
        aut = automorphism_group(g)
        at = transitivity_profile(g, aut).arc_transitive
        found = find_hat_subgroup(g, group=aut)
        h = found.group
        good = at and h is not None and transitivity_profile(g, h).half_arc_transitive
        ok &= good
        parts.append(f"{name} arc-transitive={at} HAT subgroup order={h.order() if h else None}")
    return ok, "; ".join(parts)


def _x_2_12_13() -> tuple[bool, str]:
    x = x_rmn(2, 12, 13)
    aut = automorphism_group(x)
    prof = transitivity_profile(x, aut)
    st = alternating_structure(x, orientation(x, aut))
    stab = stabilizer_order_check(x, aut)
    ok = (prof.half_arc_transitive and aut.order() == 312 and st.radius == 13
          and st.tightly_attached and stab.hypotheses_met and stab.order == 2)
    return ok, (f"hat={prof.half_arc_transitive} |Aut|={aut.order()} radius={st.radius} "
                f"attachment={st.attachment_number} |A_v|={stab.order}")


def rmn_sweep() -> list[tuple[tuple[int, int, int], bool, bool, str | None]]:
    """(triple, computed, predicted, reason) over 3<=m<=6, odd 3<=n<=15."""
    rows = []
    for r, m, n in valid_rmn_triples(range(3, 7), range(3, 16, 2)):
        rep = analyze(x_rmn(r, m, n))
        computed = rep.hat and bool(rep.tight) and rep.radius == n
        predicted, why = prop1_predicate(r, m, n)
        rows.append(((r, m, n), computed, predicted, why))
    return rows


def _rmn_equivalence() -> tuple[bool, str]:
    rows = rmn_sweep()
    bad = [t for t, c, p, _ in rows if c != p]
    exceptional = x_rmn(2, 3, 7)
    prof = transitivity_profile(exceptional, automorphism_group(exceptional))
    ok = not bad and prof.arc_transitive
    hats = sum(1 for _, c, _, _ in rows if c)
    return ok, f"{len(rows)} triples, {hats} tightly attached HAT, mismatches={bad}, X(2;3,7) arc-transitive={prof.arc_transitive}"


def _order8_spot_checks() -> tuple[bool, str]:
    rs = [r for r in range(2, 17) if multiplicative_order(r, 17) == 8]
    hat17 = {r: analyze(x_rmn(r, 4, 17)).hat for r in rs}
    hat13 = analyze(x_rmn(5, 4, 13)).hat
    return all(hat17.values()) and not hat13, f"X(r;4,17) hat for r of order 8: {hat17}; X(5;4,13) hat={hat13}"


def small_family_graphs() -> list[tuple[str, Graph]]:
    """Every graph the family constructors produce with fewer than 27 vertices."""
    out = []
    for r, m, n in valid_rmn_triples(range(3, 9), range(3, 9, 2)):
        if m * n < 27:
            out.append((f"x:{r},{m},{n}", x_rmn(r, m, n)))
    out.append(("rw6", rose_window_6_5_4()))
    out += [(f"wreath:{n}", wreath(n)) for n in range(3, 14)]
    out += [(f"lex-cycle:{n}", lex_cycle(n)) for n in range(3, 14)]
    out += [(f"px:{p}", praeger_xu(p)) for p in (3, 5)]
    out += [(f"ca{v}:5", ca_graph(5, v)) for v in (0, 1)]
    return out


def _min_order() -> tuple[bool, str]:
    graphs = small_family_graphs()
    hats = [name for name, g in graphs if analyze(g).hat]
    return not hats, f"{len(graphs)} graphs under 27 vertices, hat=true for {hats}"


COVER_BASES = (("C4", lambda: cycle(4)), ("W(6,2)", lambda: wreath(6)),
               ("R6(5,4)", rose_window_6_5_4), ("C(2;5,2)", lambda: praeger_xu(5)))


def covering_round_trip(samples: int = 100, seed: int = 0) -> tuple[int, list[str]]:
    failures = []
    checked = 0
    for name, make in COVER_BASES:
        base = make()
        t = spanning_tree(base)
        for k in (3, 5):
            group = FiniteAbelianGroup.of(k)
            rng = random.Random(f"{seed}:{name}:{k}")
            for i in range(samples):
                xi = random_t_reduced(base, group, rng, t)
                cover = derived_graph(xi)
                action = voltage_action(xi)
                q, _ = quotient_graph(cover, action)
                problems = []
                if cover.n != base.n * k or cover.num_edges != base.num_edges * k:
                    problems.append("size")
                if not is_covering_projection(cover, base, natural_projection(xi)):
                    problems.append("projection")
                if not is_regular_covering(cover, action):
                    problems.append("semiregularity")
                if are_isomorphic(q, base) is None:
                    problems.append("quotient")
                if is_connected_cover(xi, t) != is_connected(cover):
                    problems.append("connectivity criterion")
                if problems:
                    failures.append(f"{name}/Z{k}#{i}: {','.join(problems)}")
                checked += 1
    return checked, failures


def _covers() -> tuple[bool, str]:
    checked, failures = covering_round_trip()
    return not failures, f"{checked} samples, failures={failures[:5]}"


def oracle_fixtures() -> list[tuple[str, Graph]]:
    out = [("R6(5,4)", rose_window_6_5_4()), ("W(6,2)", wreath(6)), ("C12", cycle(12))]
    out += [(f"C{n}", cycle(n)) for n in range(3, 12)]
    out += [(f"K{n}", complete(n)) for n in range(1, 7)]
    out += [("P3", path(3)), ("2K1", edgeless(2)), ("C(2;3,2)", praeger_xu(3))]
    out += [(f"W({n},2)", wreath(n)) for n in range(3, 6)]
    out += [(f"C{n}[2K1]", lex_cycle(n)) for n in range(3, 7)]
    for r, m, n in valid_rmn_triples(range(3, 5), (3,)):
        out.append((f"X({r};{m},{n})", x_rmn(r, m, n)))
    return out


def _oracle() -> tuple[bool, str]:
    bad = []
    fixtures = oracle_fixtures()
    for name, g in fixtures:
        fast = automorphism_group(g).order()
        slow = len(brute_force_automorphisms(g))
        if fast != slow:
            bad.append(f"{name}: {fast} vs {slow}")
    return not bad, f"{len(fixtures)} fixtures, mismatches={bad}"


def _stretch() -> tuple[bool, str]:
    p = 61
    assert is_prime(p)
    x = x_rmn(32, 12, p)
    aut = automorphism_group(x)
    prof = transitivity_profile(x, aut)
    arcs = action_on_arcs(aut, x)
    ok = prof.half_arc_transitive and aut.order() == 24 * p and len(arcs.orbits()) == 2
    return ok, f"X(32;12,61): hat={prof.half_arc_transitive} |Aut|={aut.order()} (24p={24 * p})"


CRITERIA = (
    (1, "|Aut(R6(5,4))| = 48", 1.0, _rose_window_order),
    (2, "|Aut(W(6,2))| = 768 and W(6,2) ~ C6[2K1]", 1.0, _wreath_order),
    (3, "order-12 arc-transitive graphs have HAT subgroups", 60.0, _order12_hat_subgroups),
    (4, "X(2;12,13) tightly attached HAT, |Aut| = 24p, |A_v| = 2", 120.0, _x_2_12_13),
    (5, "X(r;m,n) predicate equivalence sweep", 600.0, _rmn_equivalence),
    (6, "X(r;4,p) spot checks", 60.0, _order8_spot_checks),
    (7, "no HAT family graph below 27 vertices", 30.0, _min_order),
    (8, "covering round trip", 300.0, _covers),
    (9, "automorphism engine vs brute force", 120.0, _oracle),
    (10, "stretch: X(32;12,61)", 1800.0, _stretch),
)


def run_criterion(number: int) -> CriterionResult:
    num, title, budget, body = next(c for c in CRITERIA if c[0] == number)
    return _timed(num, title, budget, body)


def run_all(big: bool = False) -> list[CriterionResult]:
    return [run_criterion(c[0]) for c in CRITERIA if big or c[0] != 10]
