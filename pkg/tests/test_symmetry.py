import itertools

import pytest

from halfarc.autgroup import automorphism_group
from halfarc.families import lex_cycle, praeger_xu, rose_window_6_5_4, wreath, x_rmn
from halfarc.graph import complete, cycle, from_edge_list, is_connected, valency
from halfarc.perm import PermGroup, from_cycles
from halfarc.symmetry import (
    SearchStatus, alternating_cycles, alternating_structure, analyze, arc_orbits, find_hat_subgroup,
    find_regular_subgroup, is_half_arc_transitive, orientation, stabilizer_order_check,
    transitivity_profile,
)


def test_profiles():
    w = wreath(6)
    p = transitivity_profile(w, automorphism_group(w))
    assert (p.vertex_transitive, p.edge_transitive, p.arc_transitive, p.half_arc_transitive) == (True, True, True, False)
    x = x_rmn(2, 12, 13)
    p = transitivity_profile(x, automorphism_group(x))
    assert (p.vertex_transitive, p.edge_transitive, p.arc_transitive, p.half_arc_transitive) == (True, True, False, True)
    p = transitivity_profile(cycle(3), PermGroup(3, []))
    assert not (p.vertex_transitive or p.edge_transitive or p.arc_transitive or p.half_arc_transitive)


def test_profile_rejects_non_automorphisms():
    with pytest.raises(ValueError):
        transitivity_profile(cycle(4), [from_cycles(4, [(0, 1)])])


def test_is_half_arc_transitive_examples():
    assert not is_half_arc_transitive(x_rmn(2, 3, 7))
    assert is_half_arc_transitive(x_rmn(2, 4, 17))


def test_orientation_of_x_2_12_13():
    x = x_rmn(2, 12, 13)
    o = orientation(x, automorphism_group(x))
    assert len(o.arc_orbit_1) == len(o.arc_orbit_2) == 312
    assert x.arcs[0] in o.arc_orbit_1
    assert {(v, u) for u, v in o.arc_orbit_1} == set(o.arc_orbit_2)
    # the induced orientation is 2-in 2-out everywhere
    assert all(len(a) == 2 for a in o.out_neighbours(x.n))
    assert all(len(a) == 2 for a in o.in_neighbours(x.n))


def test_orientation_requires_hat_action():
    with pytest.raises(ValueError):
        orientation(wreath(6), automorphism_group(wreath(6)))


def _hat_family():
    return [x_rmn(2, 12, 13), x_rmn(2, 4, 17), x_rmn(2, 3, 9)]


@pytest.mark.parametrize("x", _hat_family())
def test_arc_orbits_of_hat_actions_have_size_edges(x):
    aut = automorphism_group(x)
    orbs = arc_orbits(x, aut.generators)
    assert len(orbs) == 2 and all(len(o) == x.num_edges for o in orbs)


def test_alternating_structure_x_2_12_13():
    x = x_rmn(2, 12, 13)
    o = orientation(x, automorphism_group(x))
    s = alternating_structure(x, o)
    assert s.radius == 13 and s.attachment_number == 13 and s.tightly_attached
    # every vertex lies on exactly two alternating cycles of length 2 * radius
    assert all(len(c) == 2 * s.radius for c in s.cycles)
    assert len(s.cycles) * len(s.cycles[0]) == 2 * x.n
    for cyc in alternating_cycles(x, o):
        assert len(cyc) == 2 * s.radius


def test_alternating_structure_x_2_4_17():
    x = x_rmn(2, 4, 17)
    s = alternating_structure(x, orientation(x, automorphism_group(x)))
    assert s.radius == 17 and s.tightly_attached


def test_stabilizer_check():
    for x in (x_rmn(2, 12, 13), x_rmn(2, 4, 17)):
        c = stabilizer_order_check(x, automorphism_group(x))
        assert c.hypotheses_met and c.order == 2
    rot = PermGroup(12, [from_cycles(12, [tuple(range(12))])])
    c = stabilizer_order_check(cycle(12), rot)
    assert c.order == 1 and not c.hypotheses_met


def test_find_hat_subgroup_on_order_12_graphs():
    for x in (wreath(6), rose_window_6_5_4()):
        found = find_hat_subgroup(x)
        assert found.status is SearchStatus.FOUND
        assert found.group.order() == 24
        assert transitivity_profile(x, found.group).half_arc_transitive


def test_find_hat_subgroup_c3_rotation():
    # valency 2 is even: the rotation group has two arc orbits, one per direction
    found = find_hat_subgroup(cycle(3))
    assert found.status is SearchStatus.FOUND
    assert found.group.order() == 3


@pytest.mark.parametrize("make", [lambda: complete(4), lambda: _petersen()])
def test_find_hat_subgroup_odd_valency_none(make):
    found = find_hat_subgroup(make())
    assert found.status is SearchStatus.NONE and found.group is None


def test_find_hat_subgroup_budget_gives_unknown():
    found = find_hat_subgroup(wreath(6), budget=1)
    assert found.status in (SearchStatus.UNKNOWN, SearchStatus.FOUND)
    if found.status is SearchStatus.UNKNOWN:
        assert found.group is None


def test_find_regular_subgroup_cayley_witness():
    found = find_regular_subgroup(lex_cycle(5))
    assert found.status is SearchStatus.FOUND
    assert found.group.is_regular()


def _petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def _cube():
    verts = list(itertools.product((0, 1), repeat=3))
    idx = {v: i for i, v in enumerate(verts)}
    return from_edge_list(8, [(idx[a], idx[b]) for a in verts for b in verts
                              if sum(x != y for x, y in zip(a, b)) == 1])


def _k33():
    return from_edge_list(6, [(a, 3 + b) for a in range(3) for b in range(3)])


def _prism():
    return from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])


def _heawood():
    return from_edge_list(14, [(i, (i + 1) % 14) for i in range(14)] +
                          [(i, (i + 5) % 14) for i in range(0, 14, 2)])


@pytest.mark.parametrize("x", [complete(4), _k33(), _petersen(), _cube(), _prism(), _heawood()])
def test_odd_valency_vertex_edge_transitive_is_arc_transitive(x):
    assert valency(x) == 3 and is_connected(x)
    p = transitivity_profile(x, automorphism_group(x))
    if p.vertex_transitive and p.edge_transitive:
        assert p.arc_transitive
    assert not p.half_arc_transitive


@pytest.mark.parametrize("x", [wreath(6), rose_window_6_5_4(), praeger_xu(5), cycle(7), x_rmn(2, 3, 7),
                               x_rmn(2, 12, 13), complete(5)])
def test_arc_transitive_implies_edge_and_vertex(x):
    p = transitivity_profile(x, automorphism_group(x))
    if p.arc_transitive:
        assert p.edge_transitive and p.vertex_transitive


def test_report_format():
    text = analyze(wreath(6)).format()
    assert text == ("n=12\nedges=24\nregular=true\nvt=true\net=true\nat=true\nhat=false\n"
                    "aut_order=768\nradius=-\nattachment=-\ntight=-\n")
    rep = analyze(x_rmn(2, 4, 17))
    assert rep.hat and rep.radius == 17 and rep.tight and rep.aut_order == 136
