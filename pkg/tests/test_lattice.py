import networkx as nx
import pytest

from mtamari.errors import CapExceeded, EmptyIntervalError, NotACover, UsageError
from mtamari.lattice import (Lattice, build_lattice, cover_move, covers, interval_elements,
                             iter_intervals, join, leq, meet)
from mtamari.paths import fuss_catalan, short_name, validate_sequence

from conftest import GRID, lattice
from oracles import brute_covers, hasse_digraph, order_pairs

# the 16 drawn edges of the T_3^(2) Hasse diagram, lower end first
FIGURE_EDGES = {
    ("024", "014"), ("024", "023"), ("014", "004"), ("014", "013"), ("004", "003"),
    ("013", "003"), ("013", "012"), ("003", "002"), ("023", "012"), ("023", "022"),
    ("002", "001"), ("012", "001"), ("012", "011"), ("022", "011"), ("001", "000"),
    ("011", "000"),
}


def test_cover_move_examples():
    assert cover_move((0, 2, 4), 2, 1) == (0, 1, 4)
    assert cover_move((0, 1, 2), 2, 1) == (0, 0, 1)
    assert cover_move((0, 2, 4), 2, 2) == (0, 2, 3)
    with pytest.raises(NotACover):
        cover_move((0, 2, 2), 2, 2)
    with pytest.raises(UsageError):
        cover_move((0, 2, 4), 2, 3)


def test_covers_examples():
    assert {s for _, s in covers((0, 2, 4), 2)} == {(0, 1, 4), (0, 2, 3)}
    assert covers((0, 0, 0), 2) == []
    assert {s for _, s in covers((0, 1, 2), 2)} == {(0, 0, 1), (0, 1, 1)}


def test_figure_two_lattice(t32):
    assert len(t32) == 12 and t32.num_edges == 16
    drawn = {(short_name(t32.elements[s]), short_name(t32.elements[t])) for s, t, _ in t32.edges()}
    assert drawn == FIGURE_EDGES
    assert t32.elements[t32.zero] == (0, 2, 4)
    assert t32.elements[t32.one] == (0, 0, 0)


@pytest.mark.parametrize("m", [1, 2, 5])
def test_height_one(m):
    lat = build_lattice(m, 1)
    assert len(lat) == 1 and lat.num_edges == 0 and lat.zero == lat.one == 0


def test_catalan_case():
    assert len(build_lattice(1, 3)) == 5


def test_build_refuses_over_cap():
    with pytest.raises(CapExceeded) as info:
        build_lattice(3, 4, cap=100)
    assert info.value.required == 140


def test_leq_examples(t32, ids):
    assert leq(t32, *ids("024", "000"))
    assert not leq(t32, *ids("004", "011"))
    assert leq(t32, *ids("013", "001"))


def test_interval_examples(t32, ids):
    assert interval_elements(t32, *ids("012", "001")).members == set(ids("012", "001"))
    a = ids("013")
    assert interval_elements(t32, a, a).members == {a}
    assert len(interval_elements(t32, t32.zero, t32.one)) == 12
    with pytest.raises(EmptyIntervalError):
        interval_elements(t32, *ids("004", "011"))


def test_join_meet_examples(t32, ids):
    assert join(t32, *ids("004", "023")) == ids("001")
    assert join(t32, *ids("014", "023")) == ids("012")
    for x in range(len(t32)):
        assert meet(t32, x, t32.zero) == t32.zero
        assert join(t32, x, x) == x


@pytest.mark.parametrize("m,n", GRID)
def test_structure_against_networkx(m, n):
    lat = lattice(m, n)
    assert len(lat) == fuss_catalan(m, n)
    g = hasse_digraph(lat)
    assert nx.is_directed_acyclic_graph(g)
    # no transitive edges among the generated covers
    assert set(nx.transitive_reduction(g).edges()) == set(g.edges())
    pairs = order_pairs(lat)
    for a in range(len(lat)):
        for b in range(len(lat)):
            assert leq(lat, a, b) == ((a, b) in pairs)
    assert all((lat.zero, z) in pairs and (z, lat.one) in pairs for z in range(len(lat)))


@pytest.mark.parametrize("m,n", GRID)
def test_covers_are_contiguous_unit_decrements(m, n):
    lat = lattice(m, n)
    for s, t, pos in lat.edges():
        a, b = lat.elements[s], lat.elements[t]
        assert validate_sequence(b, m).valid
        diff = [p for p in range(n) if a[p] != b[p]]
        assert diff == list(range(pos, diff[-1] + 1))
        assert all(a[p] - b[p] == 1 for p in diff)
        assert b in brute_covers(a, m)
    for k, outs in enumerate(lat.up_covers):
        for pos, t in outs:
            assert (pos, k) in lat.down_covers[t]


@pytest.mark.parametrize("m,n", [(1, 4), (2, 3), (2, 4), (3, 3)])
def test_join_and_meet_by_brute_force(m, n):
    lat = lattice(m, n)
    pairs = order_pairs(lat)
    N = len(lat)
    for a in range(N):
        for b in range(N):
            ub = [z for z in range(N) if (a, z) in pairs and (b, z) in pairs]
            least = [z for z in ub if all((z, w) in pairs for w in ub)]
            lb = [z for z in range(N) if (z, a) in pairs and (z, b) in pairs]
            greatest = [z for z in lb if all((w, z) in pairs for w in lb)]
            assert [join(lat, a, b)] == least
            assert [meet(lat, a, b)] == greatest


def test_on_demand_reachability_matches_precomputed():
    fast = build_lattice(2, 4)
    slow = build_lattice(2, 4, reach_threshold=10)
    assert not slow._precomputed
    for a in range(len(fast)):
        assert fast.upset_mask(a) == slow.upset_mask(a)
        assert fast.downset_mask(a) == slow.downset_mask(a)
    assert [v.mask for v in iter_intervals(fast)] == [v.mask for v in iter_intervals(slow)]


@pytest.mark.parametrize("m,n", GRID)
def test_json_round_trip(m, n):
    lat = lattice(m, n)
    text = lat.to_json()
    back = Lattice.from_json(text)
    assert back == lat
    assert back.to_json() == text
