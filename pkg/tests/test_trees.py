import random
from itertools import combinations
from math import factorial

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperramsey.acceptance import random_dense_host, small_hypergraphs
from hyperramsey.hypergraph import Hypergraph, complete_hypergraph, components, is_embedding, is_isomorphic
from hyperramsey.trees import (
    TREE_METHODS,
    TreeError,
    add_free_edge,
    check_degree_embedding,
    edge_count_for_order,
    enumerate_trees,
    free_hyperedges,
    is_tree,
    loose_cycle_c4,
    loose_path,
    loose_paths_from,
    remove_free_edge,
    star_tree,
    tree_certificate,
)

from strategies import hypergraphs, incidence_graph, nx_is_tree


def labeled_tree_count(n, r):
    """Number of r-uniform hypertrees spanning n labelled vertices."""
    k = (n - 1) // (r - 1)
    return n ** (k - 1) * factorial(n - 1) // (factorial(k) * factorial(r - 1) ** k)


def automorphism_count(h):
    g = incidence_graph(h)
    matcher = nx.algorithms.isomorphism.GraphMatcher(g, g, node_match=lambda a, b: a["kind"] == b["kind"])
    edge_perms = {tuple(sorted(((k, v) for k, v in m.items() if k[0] == "v"))) for m in matcher.isomorphisms_iter()}
    return len(edge_perms)


# --- constructors


def test_loose_path_examples():
    assert loose_path(5, 3).edges == ((0, 1, 2), (2, 3, 4))
    assert loose_path(3, 3).edges == ((0, 1, 2),)
    assert loose_path(7, 3).edges == ((0, 1, 2), (2, 3, 4), (4, 5, 6))


@pytest.mark.parametrize("m,r", [(4, 3), (6, 3), (5, 4), (2, 3)])
def test_loose_path_rejects_bad_order(m, r):
    with pytest.raises(TreeError):
        loose_path(m, r)


def test_loose_path_order_formula():
    for r in (2, 3, 4, 5):
        for k in range(1, 6):
            m = r + (k - 1) * (r - 1)
            p = loose_path(m, r)
            assert len(p.edges) == k == edge_count_for_order(m, r)
            for a, b in zip(p.edges, p.edges[1:]):
                assert len(set(a) & set(b)) == 1


def test_c4_shape():
    c4 = loose_cycle_c4()
    assert c4.order == 4 and c4.edges == ((0, 1, 2), (1, 2, 3))
    assert tuple(c4.degrees()) == (1, 2, 2, 1)
    assert not any(is_tree(c4, m) for m in TREE_METHODS)


# --- recognisers


@pytest.mark.parametrize("method", TREE_METHODS)
def test_recogniser_examples(method):
    assert is_tree(loose_path(7, 3), method)
    assert not is_tree(loose_cycle_c4(), method)
    assert not is_tree(Hypergraph(6, 3, ((0, 1, 2), (3, 4, 5))), method)
    assert not is_tree(Hypergraph(0, 3, ()), method)
    assert not is_tree(Hypergraph(1, 3, ()), method)


def test_unknown_method():
    with pytest.raises(TreeError):
        is_tree(loose_path(5, 3), "guess")


def test_recognisers_agree_exhaustively():
    graphs = small_hypergraphs(7, 3, 3)
    for h in graphs:
        verdicts = {is_tree(h, m) for m in TREE_METHODS}
        assert verdicts == {nx_is_tree(h)}, h


def test_small_hypergraph_census_is_isomorphism_free():
    graphs = small_hypergraphs(5, 3, 2)
    for a, b in combinations(graphs, 2):
        assert not is_isomorphic(a, b)
    # brute force: classes on exactly 5 vertices, 0..2 edges, found via networkx
    reps = []
    for k in range(3):
        for es in combinations(combinations(range(5), 3), k):
            h = Hypergraph(5, 3, es)
            if not any(nx.is_isomorphic(incidence_graph(h), incidence_graph(x),
                                        node_match=lambda a, b: a["kind"] == b["kind"]) for x in reps):
                reps.append(h)
    assert len([g for g in graphs if g.order == 5]) == len(reps)


@given(hypergraphs(max_order=8, r=3, max_edges=4))
def test_recognisers_match_incidence_oracle(h):
    want = nx_is_tree(h)
    for method in TREE_METHODS:
        assert is_tree(h, method) == want


@given(hypergraphs(max_order=9, r=4, max_edges=3))
def test_recognisers_match_oracle_r4(h):
    want = nx_is_tree(h)
    for method in TREE_METHODS:
        assert is_tree(h, method) == want


def test_certificate_replays():
    for m in (3, 5, 7, 9):
        for t in enumerate_trees(m, 3):
            cert = tree_certificate(t)
            assert cert is not None and cert.replay(t)
            assert len(cert.build_order) == len(t.edges)
    assert tree_certificate(loose_cycle_c4()) is None


# --- enumeration


@pytest.mark.parametrize("m,count", [(3, 1), (5, 1), (7, 2)])
def test_enumeration_counts(m, count):
    trees = enumerate_trees(m, 3)
    assert len(trees) == count
    assert all(is_tree(t) for t in trees)


def test_order_seven_trees_are_path_and_star():
    trees = enumerate_trees(7, 3)
    assert sum(is_isomorphic(t, loose_path(7, 3)) for t in trees) == 1
    assert sum(is_isomorphic(t, star_tree(3, 3)) for t in trees) == 1


@pytest.mark.parametrize("m", [5, 7])
def test_enumeration_matches_labelled_brute_force(m):
    trees = enumerate_trees(m, 3)
    k = edge_count_for_order(m, 3)
    labelled = [Hypergraph(m, 3, es) for es in combinations(combinations(range(m), 3), k)]
    labelled = [h for h in labelled if nx_is_tree(h)]
    assert len(labelled) == labeled_tree_count(m, 3)
    classes = []
    for h in labelled:
        if not any(is_isomorphic(h, c) for c in classes):
            classes.append(h)
    assert len(classes) == len(trees)


@pytest.mark.parametrize("m,r", [(9, 3), (7, 4), (10, 4), (9, 5)])
def test_enumeration_orbit_sum(m, r):
    """Sum of m!/|Aut(T)| over the classes must count every labelled tree once."""
    trees = enumerate_trees(m, r)
    for a, b in combinations(trees, 2):
        assert not is_isomorphic(a, b)
    assert sum(factorial(m) // automorphism_count(t) for t in trees) == labeled_tree_count(m, r)


def test_enumeration_rejects_bad_order():
    with pytest.raises(TreeError):
        enumerate_trees(6, 3)


# --- structural properties of trees


def small_trees():
    return [t for r in (3, 4) for m in range(r, 11) if (m - r) % (r - 1) == 0 for t in enumerate_trees(m, r)]


def test_removing_any_edge_leaves_r_components():
    for t in small_trees():
        for e in t.edges:
            assert len(components(t.without_edge(e))) == t.r


def test_unique_loose_path_between_vertices():
    for t in small_trees():
        if t.order > 9:
            continue
        for u in range(t.order):
            counts = loose_paths_from(t, u)
            for w in range(t.order):
                if w != u:
                    assert counts.get(w, 0) == 1, (t, u, w)


def test_free_hyperedge_examples():
    assert free_hyperedges(loose_path(7, 3)) == [(0, 1, 2), (4, 5, 6)]
    assert free_hyperedges(loose_path(3, 3)) == [(0, 1, 2)]
    assert len(free_hyperedges(star_tree(3, 3))) == 3
    with pytest.raises(TreeError):
        free_hyperedges(loose_cycle_c4())


def test_free_edges_exist_and_removal_keeps_a_tree():
    for t in small_trees():
        free = free_hyperedges(t)
        assert free
        for e in free:
            if len(t.edges) > 1:
                assert is_tree(remove_free_edge(t, e))


def test_adding_free_edge_keeps_a_tree():
    for t in small_trees():
        for v in range(t.order):
            assert is_tree(add_free_edge(t, v))


# --- minimum-degree embedding


def test_degree_embedding_complete_host():
    rep = check_degree_embedding(complete_hypergraph(5, 3), loose_path(5, 3))
    assert rep.min_degree == 6 and rep.bound == 6 and rep.guaranteed
    assert rep.embedding is not None


def test_degree_embedding_below_bound_is_not_guaranteed():
    k5 = complete_hypergraph(5, 3)
    host = Hypergraph(5, 3, tuple(e for e in k5.edges if 4 not in e))
    rep = check_degree_embedding(host, loose_path(5, 3))
    assert not rep.guaranteed and not rep.counterexample


def test_degree_embedding_requires_matching_uniformity():
    with pytest.raises(Exception):
        check_degree_embedding(complete_hypergraph(5, 2), loose_path(5, 3))


@pytest.mark.parametrize("seed", range(25))
def test_degree_embedding_seeded_hosts(seed):
    rng = random.Random(seed)
    for m in (5, 7):
        for t in enumerate_trees(m, 3):
            p = rng.randint(m, 8)
            host = random_dense_host(rng, p, m)
            rep = check_degree_embedding(host, t)
            assert rep.guaranteed
            assert rep.embedding is not None and is_embedding(host, t, rep.embedding)


@given(st.integers(5, 8), st.randoms(use_true_random=False))
def test_host_generator_respects_bound(p, rng):
    host = random_dense_host(rng, p, 5)
    rep = check_degree_embedding(host, loose_path(5, 3))
    assert rep.guaranteed and not rep.counterexample
