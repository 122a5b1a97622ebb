import pytest
from hypothesis import given, strategies as st

from mtamari.errors import CapExceeded, NotACover
from mtamari.lattice import build_lattice, interval_elements, iter_intervals
from mtamari.shelling import (EdgeLabel, MaximalChain, candidate_falling_labels,
                              containment_mismatches, count_maximal_chains, edge_label,
                              falling_chains, is_falling, is_rising, label_leq, maximal_chains,
                              rising_chain, verify_el, word_lex_leq)

from conftest import GRID, lattice
from oracles import hasse_path_count

L = EdgeLabel


def words(chains):
    return [tuple((x.j, x.v) for x in c.word) for c in chains]


def test_edge_label_examples():
    assert edge_label((0, 2, 4), (0, 1, 4)) == L(2, 2)
    assert edge_label((0, 2, 4), (0, 2, 3), m=2) == L(3, 4)
    assert edge_label((0, 1, 2), (0, 0, 1), m=2) == L(2, 1)
    with pytest.raises(NotACover):
        edge_label((0, 2, 4), (0, 1, 2), m=2)
    with pytest.raises(NotACover):
        edge_label((0, 2, 4), (0, 2, 4))


def test_figure_three_label_multiset(t32):
    got = sorted((e.j, e.v) for e in (edge_label(t32.elements[s], t32.elements[t], 2)
                                      for s, t, _ in t32.edges()))
    drawn = sorted([(2, 2), (3, 4), (2, 1), (3, 4), (3, 4), (2, 1), (3, 3), (3, 3),
                    (2, 2), (3, 3), (3, 2), (2, 1), (3, 2), (2, 2), (3, 1), (2, 1)])
    assert got == drawn


def test_label_order_examples():
    assert label_leq(L(2, 2), L(3, 4))
    assert label_leq(L(3, 4), L(3, 3))
    assert not label_leq(L(3, 3), L(3, 4))
    assert label_leq(L(2, 1), L(2, 1))


labels = st.builds(EdgeLabel, st.integers(1, 6), st.integers(0, 12))


@given(labels, labels, labels)
def test_label_order_is_total(x, y, z):
    assert sum([x < y, x == y, y < x]) == 1
    assert label_leq(x, y) or label_leq(y, x)
    if label_leq(x, y) and label_leq(y, z):
        assert label_leq(x, z)


def test_word_lex_examples():
    assert word_lex_leq([L(2, 2)], [L(2, 2), L(3, 1)])
    assert not word_lex_leq([L(2, 2), L(3, 1)], [L(2, 2)])
    assert word_lex_leq([L(2, 2), L(2, 1)], [L(3, 4)])
    w = [L(3, 4), L(2, 2)]
    assert word_lex_leq(w, w)


def test_chain_counts_on_figure(t32, ids):
    assert len(list(maximal_chains(interval_elements(t32, *ids("012", "001"))))) == 1
    a = ids("022")
    chains = list(maximal_chains(interval_elements(t32, a, a)))
    assert chains == [MaximalChain((a,), ())]
    full = interval_elements(t32, t32.zero, t32.one)
    assert len(list(maximal_chains(full))) == 7 == hasse_path_count(t32, t32.zero, t32.one)


def test_chain_cap_refuses(t32):
    with pytest.raises(CapExceeded):
        list(maximal_chains(interval_elements(t32, t32.zero, t32.one), cap=6))


def test_rising_chain_of_whole_lattice(t32):
    chain = rising_chain(interval_elements(t32, t32.zero, t32.one))
    assert words([chain]) == [((2, 2), (2, 1), (3, 4), (3, 3), (3, 2), (3, 1))]
    assert chain.describe(t32) == "024->014->004->003->002->001->000"


def test_rising_chain_small_cases(t32, ids):
    chain = rising_chain(interval_elements(t32, *ids("013", "001")))
    assert chain.describe(t32) == "013->003->002->001"
    assert words([chain]) == [((2, 1), (3, 3), (3, 2))]
    a = ids("013")
    assert rising_chain(interval_elements(t32, a, a)).word == ()


def test_rising_and_falling_predicates(t32, ids):
    assert is_rising([L(2, 2), L(3, 4), L(3, 3)])
    assert not is_falling([L(2, 2), L(3, 4), L(3, 3)])
    assert is_falling([L(3, 4), L(2, 2)])
    assert is_rising([L(2, 1)]) and is_falling([L(2, 1)])
    assert is_rising([]) and is_falling([])


def test_falling_chain_examples(t32, ids):
    assert words(falling_chains(interval_elements(t32, *ids("024", "012")))) == [((3, 4), (2, 2))]
    assert falling_chains(interval_elements(t32, *ids("024", "004"))) == []
    a = ids("003")
    assert words(falling_chains(interval_elements(t32, a, a))) == [()]


def test_candidate_falling_labels(t32):
    assert candidate_falling_labels((0, 2, 4), (0, 1, 2), 2) == (L(3, 4), L(2, 2))
    assert candidate_falling_labels((0, 1, 3), (0, 1, 3), 2) == ()
    # prediction is empty though the single edge 012 -> 001 is a falling chain
    assert candidate_falling_labels((0, 1, 2), (0, 0, 1), 2) == ()


def test_falling_label_mismatches_are_reported(t32, ids):
    report = verify_el(t32)
    pairs = {(r.a, r.b) for r in report.falling_mismatches}
    assert tuple(ids("012", "001")) in pairs
    assert tuple(ids("024", "012")) not in pairs


def test_containment_predicates_diverge():
    assert (4, True, False) in containment_mismatches((0, 1, 2, 4), 2)
    assert containment_mismatches((0, 2, 4), 2) == []


@pytest.mark.parametrize("m,n", GRID + [(3, 4)])
def test_el_property(m, n):
    report = verify_el(lattice(m, n) if (m, n) in GRID else build_lattice(m, n))
    assert report.violations == []
    assert all(r.num_rising == 1 and r.lex_first_is_rising and r.num_falling <= 1
               for r in report.rows)


@pytest.mark.parametrize("m,n", GRID)
def test_chain_machinery_on_every_interval(m, n):
    lat = lattice(m, n)
    for view in iter_intervals(lat):
        chains = list(maximal_chains(view))
        assert len(chains) == count_maximal_chains(view)
        assert len(set(c.ids for c in chains)) == len(chains)
        assert [c for c in chains if is_falling(c)] == falling_chains(view)
        built = rising_chain(view)
        assert is_rising(built) and set(built.ids) <= view.members
        for c in chains:
            assert all(x != y for x, y in zip(c.word, c.word[1:]))
            for x, y in zip(c.ids, c.ids[1:]):
                lab = edge_label(lat.elements[x], lat.elements[y])
                assert lat.elements[x][lab.j - 2] < lat.elements[x][lab.j - 1]


@pytest.mark.parametrize("m,n", [(1, 5), (2, 4)])
def test_chain_count_matches_networkx(m, n):
    lat = lattice(m, n)
    assert count_maximal_chains(interval_elements(lat, lat.zero, lat.one)) == \
        hasse_path_count(lat, lat.zero, lat.one)


def test_parallel_report_is_identical():
    lat = lattice(2, 4)
    assert verify_el(lat, workers=2).rows == verify_el(lat).rows


def test_report_csv(t32):
    text = verify_el(t32).to_csv(t32)
    lines = text.splitlines()
    assert lines[0] == "a,b,num_chains,num_rising,num_falling,lex_first_is_rising,violation"
    assert len(lines) == 59
    assert "024,000,7,1,0,1," in lines
