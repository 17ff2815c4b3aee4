from math import comb

import pytest

from ccnsec.network import (
    AdversarySpec,
    adversary_sets,
    build_ccn,
    build_fig2,
    build_network,
    candidate_pool,
    mincut,
)

ORIENTATIONS = ("directed", "undirected", "bidirected")


@pytest.mark.parametrize("m,h", [(3, 2), (4, 3), (6, 3), (5, 2)])
def test_ccn_counts(m, h):
    net = build_ccn(m, h)
    assert len(net.receivers) == comb(m, h)
    expected = h + h + h * (m - h) + m + h * comb(m, h)
    assert len(net.edges) == expected
    for j in range(1, m + 1):
        assert net.indegree(f"A{j}") == (1 if j <= h else h)


@pytest.mark.parametrize("orientation", ORIENTATIONS)
@pytest.mark.parametrize("m,h", [(3, 2), (4, 3), (6, 3)])
def test_mincut_is_h(m, h, orientation):
    net = build_ccn(m, h, orientation)
    assert {mincut(net, "S", r) for r in net.receivers} == {h}


def test_bidirected_doubles_edges():
    d, b = build_ccn(4, 3), build_ccn(4, 3, "bidirected")
    assert len(b.edges) == 2 * len(d.edges)
    assert sum(e.backward for e in b.edges) == len(d.edges)


def test_undirected_edges_carry_both_ways():
    e = build_ccn(3, 2, "undirected").edge("S1--A3")
    assert e.can_carry("S1", "A3") and e.can_carry("A3", "S1")
    d = build_ccn(3, 2).edge("S1->A3")
    assert d.can_carry("S1", "A3") and not d.can_carry("A3", "S1")


@pytest.mark.parametrize("bad", [(2, 1), (2, 3), (1, 1)])
def test_ccn_rejects(bad):
    with pytest.raises(ValueError):
        build_ccn(*bad)


def test_fig2_shapes():
    assert mincut(build_fig2("a", 3), "S", "R") == 3
    c = build_fig2("c", 2, 2)
    assert len(c.links("S", "R")) == 2 and len(c.links("R", "S")) == 2
    assert mincut(c, "S", "R") == 2
    assert mincut(build_fig2("d", 3), "S", "R") == 3
    with pytest.raises(ValueError):
        build_fig2("e", 2)


def test_descriptor_round_trip():
    for net in (build_ccn(4, 3, "undirected"), build_fig2("c", 3, 1)):
        again = build_network(net.descriptor())
        assert again.edges == net.edges and again.receivers == net.receivers


def test_adversary_pool_sizes():
    net = build_ccn(3, 2)
    # S1, S2, A1..A3, B1..B3
    assert len(adversary_sets(net, AdversarySpec("node", 1))) == 8
    assert "S" in candidate_pool(net, AdversarySpec("node", 1, include_source=True))
    assert len(adversary_sets(net, AdversarySpec("edge", 2))) == comb(len(net.edges), 2)
    with pytest.raises(ValueError):
        AdversarySpec("link", 1)
    with pytest.raises(ValueError):
        AdversarySpec("node", 0)
