from itertools import product

import pytest
from hypothesis import given

from hyperramsey.coloring import (
    ColoringCapExceeded,
    WeakColoring,
    chi_w_complete,
    min_color_class,
    t_complete,
    weak_chromatic_number,
)
from hyperramsey.hypergraph import Hypergraph, HypergraphError, complete_hypergraph, empty_hypergraph
from hyperramsey.trees import loose_path

from strategies import hypergraphs


def brute_weak(h):
    """(chi_w, t) by trying every assignment."""
    best = None
    for assignment in product(range(h.order), repeat=h.order):
        if any(len({assignment[v] for v in e}) == 1 for e in h.edges):
            continue
        used = sorted(set(assignment))
        sizes = [assignment.count(c) for c in used]
        key = (len(used), min(sizes))
        best = key if best is None or key < best else best
    return best


def test_examples():
    assert weak_chromatic_number(complete_hypergraph(7, 3))[0] == 4
    assert weak_chromatic_number(loose_path(5, 3))[0] == 2
    assert weak_chromatic_number(empty_hypergraph(4, 3))[0] == 1
    assert min_color_class(complete_hypergraph(4, 3)) == 2
    assert min_color_class(complete_hypergraph(5, 3)) == 1
    assert min_color_class(empty_hypergraph(4, 3)) == 4


@pytest.mark.parametrize("n,r,chi,t", [(8, 3, 4, 2), (7, 3, 4, 1), (6, 2, 6, 1), (9, 4, 3, 3), (10, 4, 4, 1)])
def test_closed_forms(n, r, chi, t):
    assert (chi_w_complete(n, r), t_complete(n, r)) == (chi, t)


@pytest.mark.parametrize("r", [2, 3, 4])
@pytest.mark.parametrize("n", range(1, 9))
def test_closed_forms_match_search(n, r):
    k = complete_hypergraph(n, r)
    chi, wc = weak_chromatic_number(k, shortcut=False)
    assert chi == chi_w_complete(n, r)
    assert min_color_class(k, shortcut=False) == t_complete(n, r)
    assert wc.is_valid_for(k) and wc.color_count == chi


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_t_is_periodic_in_steps_of_r_minus_one(r):
    for n in range(r + 1, 40):
        assert t_complete(n, r) == t_complete(n - r + 1, r)


@given(hypergraphs(max_order=6))
def test_search_matches_brute_force(h):
    if h.order == 0:
        return
    chi, wc = weak_chromatic_number(h)
    assert wc.is_valid_for(h) and wc.color_count == chi
    assert (chi, min_color_class(h)) == brute_weak(h)


@given(hypergraphs(max_order=7))
def test_witness_is_lexicographically_least(h):
    if h.order == 0:
        return
    chi, wc = weak_chromatic_number(h, shortcut=False)
    for assignment in product(range(chi), repeat=h.order):
        if assignment >= wc.assignment:
            break
        ok = set(assignment) == set(range(chi)) and all(len({assignment[v] for v in e}) > 1 for e in h.edges)
        assert not ok, assignment


def test_complete_witness_is_valid():
    for r in (2, 3, 4):
        for n in range(1, 20):
            k = complete_hypergraph(n, r)
            chi, wc = weak_chromatic_number(k)
            assert wc.is_valid_for(k)
            assert min(wc.class_sizes()) == t_complete(n, r)


def test_cap():
    h = loose_path(13, 3)
    with pytest.raises(ColoringCapExceeded):
        weak_chromatic_number(h)
    assert weak_chromatic_number(h, cap=13)[0] == 2
    # complete hypergraphs bypass the cap
    assert weak_chromatic_number(complete_hypergraph(30, 3))[0] == 15


def test_rejects_empty_order():
    with pytest.raises(HypergraphError):
        weak_chromatic_number(Hypergraph(0, 3, ()))


def test_invalid_coloring_detected():
    assert not WeakColoring((0, 0, 0), 1).is_valid_for(complete_hypergraph(3, 3))
    assert not WeakColoring((0, 2, 0), 3).is_valid_for(complete_hypergraph(3, 3))
