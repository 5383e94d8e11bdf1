import random

import pytest
from hypothesis import given, settings, strategies as st

from halfarc.autgroup import automorphism_group
from halfarc.families import FiniteAbelianGroup, rose_window_6_5_4, wreath, x_rmn, praeger_xu
from halfarc.coverings import VoltageAssignment, derived_graph, voltage_action
from halfarc.graph import cycle
from halfarc.perm import (
    PermGroup, action_on_arcs, compose, cycles_of, element_order, find_element_of_order, format_perm,
    from_cycles, identity, inverse, is_automorphism, naive_closure, parse_perm, power,
)


def test_compose_applies_left_factor_first():
    a = from_cycles(3, [(0, 1)])
    b = from_cycles(3, [(1, 2)])
    ab = compose(a, b)
    # 0 -a-> 1 -b-> 2, so 0 maps to 2
    assert ab[0] == 2
    assert ab == from_cycles(3, [(0, 2, 1)])
    assert compose(b, a) == from_cycles(3, [(0, 1, 2)])


@settings(max_examples=50)
@given(st.permutations(range(7)), st.permutations(range(7)))
def test_compose_inverse_identity(p, q):
    p, q = tuple(p), tuple(q)
    assert compose(p, inverse(p)) == identity(7)
    assert compose(identity(7), q) == q
    assert inverse(compose(p, q)) == compose(inverse(q), inverse(p))


def test_cycles_power_order():
    p = from_cycles(6, [(0, 1, 2), (3, 4)])
    assert cycles_of(p) == [(0, 1, 2), (3, 4)]
    assert element_order(p) == 6
    assert power(p, 6) == identity(6)
    assert power(p, -1) == inverse(p)


def test_format_parse():
    p = from_cycles(5, [(0, 4, 2)])
    assert format_perm(p) == "[4 1 0 3 2]"
    assert parse_perm(format_perm(p)) == p
    with pytest.raises(ValueError):
        parse_perm("[0 0 1]")


def test_group_orders():
    assert PermGroup(4, [from_cycles(4, [(0, 1, 2, 3)])]).order() == 4
    assert PermGroup(5, []).order() == 1
    assert automorphism_group(wreath(6)).order() == 768
    assert automorphism_group(rose_window_6_5_4()).order() == 48
    assert automorphism_group(cycle(12)).order() == 24
    assert automorphism_group(praeger_xu(5)).order() == 320


def test_orbits_and_transitivity():
    assert PermGroup(6, []).orbits() == [[i] for i in range(6)]
    assert PermGroup(5, [from_cycles(5, [(0, 1, 2, 3, 4)])]).orbits() == [[0, 1, 2, 3, 4]]
    assert not PermGroup(2, []).is_transitive()
    assert PermGroup(9, [from_cycles(9, [tuple(range(9))])]).is_transitive()
    assert automorphism_group(x_rmn(2, 3, 7)).is_transitive()


def test_sylow_orbits_of_x_2_12_13():
    aut = automorphism_group(x_rmn(2, 12, 13))
    s = find_element_of_order(aut, 13, seed=0)
    orbs = PermGroup(156, [s]).orbits()
    assert len(orbs) == 12 and all(len(o) == 13 for o in orbs)


def test_point_stabilizers():
    assert automorphism_group(x_rmn(2, 12, 13)).point_stabilizer(0).order() == 2
    assert automorphism_group(cycle(12)).point_stabilizer(0).order() == 2
    rot = PermGroup(6, [from_cycles(6, [tuple(range(6))])])
    assert rot.point_stabilizer(3).order() == 1


def test_semiregularity():
    rot = PermGroup(6, [from_cycles(6, [tuple(range(6))])])
    assert rot.is_semiregular()
    assert rot.is_regular() and rot.order() == 6
    assert not automorphism_group(cycle(6)).is_semiregular()
    k = FiniteAbelianGroup.of(3)
    xi = VoltageAssignment.from_arcs(wreath(6), k, {(0, 1): (1,)})
    assert voltage_action(xi).is_semiregular(range(derived_graph(xi).n))


@pytest.mark.parametrize("make", [lambda: cycle(7), lambda: wreath(4), rose_window_6_5_4,
                                  lambda: x_rmn(2, 3, 7)])
def test_orbit_stabilizer(make):
    g = automorphism_group(make())
    for v in range(g.degree):
        assert g.order() == len(g.orbit(v)) * g.point_stabilizer(v).order()


def _random_group(rng, degree, k):
    gens = []
    for _ in range(k):
        p = list(range(degree))
        rng.shuffle(p)
        gens.append(tuple(p))
    return gens


def test_membership_agrees_with_naive_closure():
    rng = random.Random(7)
    checked = 0
    groups = [automorphism_group(rose_window_6_5_4()).generators, automorphism_group(wreath(6)).generators,
              automorphism_group(praeger_xu(3)).generators]
    while checked < 25:
        gens = _random_group(rng, rng.randint(3, 7), rng.randint(1, 2))
        groups.append(gens)
        checked += 1
    for gens in groups:
        degree = len(gens[0])
        try:
            closure = naive_closure(degree, gens)
        except OverflowError:
            continue
        g = PermGroup(degree, gens, seed=rng.randint(0, 99))
        assert g.order() == len(closure)
        assert set(g.elements()) == closure
        for _ in range(30):
            p = list(range(degree))
            rng.shuffle(p)
            assert g.contains(tuple(p)) == (tuple(p) in closure)


def test_naive_closure_limit():
    with pytest.raises(OverflowError):
        naive_closure(8, [from_cycles(8, [tuple(range(8))]), from_cycles(8, [(0, 1)])], limit=100)


def test_semiregular_transitive_means_regular_order():
    for n in range(3, 10):
        g = PermGroup(n, [from_cycles(n, [tuple(range(n))])])
        assert g.is_semiregular() and g.is_transitive() and g.order() == n


def test_action_on_arcs():
    x = cycle(3)
    triv = action_on_arcs(PermGroup(3, []), x)
    assert triv.order() == 1 and len(triv.orbits()) == 6
    assert action_on_arcs(automorphism_group(x), x).is_transitive()
    big = x_rmn(2, 12, 13)
    aut = automorphism_group(big)
    arcs = action_on_arcs(aut, big)
    assert arcs.degree == 624 and len(arcs.orbits()) == 2
    for s, t in zip(aut.generators, arcs.generators):
        for i, (u, v) in enumerate(big.arcs):
            assert big.arcs[t[i]] == (s[u], s[v])


def test_action_on_arcs_rejects_non_automorphism():
    with pytest.raises(ValueError):
        action_on_arcs(PermGroup(4, [from_cycles(4, [(0, 1)])]), cycle(4))


def test_is_automorphism():
    assert is_automorphism(cycle(5), from_cycles(5, [(0, 1, 2, 3, 4)]))
    assert not is_automorphism(cycle(5), from_cycles(5, [(0, 1)]))
