import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfsat.canon import (
    canonical_form,
    canonical_form_bruteforce,
    canonical_labeling,
    is_automorphism,
    pair_orbits,
    vertex_orbits,
)
from lfsat.graph import Graph, complement_nonedges, complete_graph, cycle_graph, empty_graph, path_graph, petersen_graph, star_graph

from conftest import graphs, random_graph


def all_labelled_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def test_relabelled_cycle_has_same_key():
    c4 = cycle_graph(4)
    assert canonical_form(c4) == canonical_form(c4.relabel([2, 1, 0, 3]))


def test_star_and_path_differ():
    assert canonical_form(star_graph(3)) != canonical_form(path_graph(4))


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
def test_number_of_isomorphism_classes(n, count):
    assert len({canonical_form(g) for g in all_labelled_graphs(n)}) == count


@pytest.mark.parametrize("n", range(1, 6))
def test_agrees_with_permutation_oracle_exhaustively(n):
    keys = {}
    for g in all_labelled_graphs(n):
        keys.setdefault(canonical_form_bruteforce(g), set()).add(canonical_form(g))
    # one fast key per oracle class, and no key shared between classes
    assert all(len(v) == 1 for v in keys.values())
    assert len({next(iter(v)) for v in keys.values()}) == len(keys)


def test_agrees_with_oracle_on_six_vertices(rng):
    # every 6-vertex class, each in two random labellings
    from lfsat.search import enumerate_graphs

    reps = list(enumerate_graphs(6))
    assert len(reps) == 156
    seen = set()
    for g in reps:
        perm = list(range(6))
        rng.shuffle(perm)
        h = g.relabel(perm)
        assert canonical_form(g) == canonical_form(h)
        assert canonical_form_bruteforce(g) == canonical_form_bruteforce(h)
        seen.add(canonical_form(g))
    assert len(seen) == 156


def test_random_pairs_against_networkx(rng):
    for _ in range(5000):
        n = rng.randint(1, 8)
        g = random_graph(rng, n)
        if rng.random() < 0.5:
            perm = list(range(n))
            rng.shuffle(perm)
            h = g.relabel(perm)
        else:
            h = random_graph(rng, n)
        same = nx.is_isomorphic(g.to_networkx(), h.to_networkx())
        assert (canonical_form(g) == canonical_form(h)) == same


def test_generators_are_automorphisms():
    g = petersen_graph()
    lab = canonical_labeling(g)
    assert lab.generators
    assert all(is_automorphism(g, p) for p in lab.generators)
    assert vertex_orbits(g.n, lab.generators) == [list(range(10))]


def test_pair_orbits_of_empty_graph():
    g = empty_graph(5)
    gens = canonical_labeling(g).generators
    orbits = pair_orbits(list(complement_nonedges(g)), gens, 5)
    assert len(orbits) == 1
    rep, members = orbits[0]
    assert rep == (0, 1) and len(members) == 10
    for pair, perm in members.items():
        a, b = perm[0], perm[1]
        assert tuple(sorted((a, b))) == pair


def test_large_symmetric_graph_is_fast():
    # 40 isolated vertices: orbit pruning must keep this trivial
    assert canonical_form(empty_graph(40)) == canonical_form(empty_graph(40).relabel(list(range(39, -1, -1))))
    assert canonical_form(complete_graph(30))


@settings(max_examples=200)
@given(graphs(max_n=9), st.randoms(use_true_random=False))
def test_key_invariant_under_relabelling(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    assert canonical_form(g) == canonical_form(g.relabel(perm))
