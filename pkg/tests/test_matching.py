import json

import pytest
from hypothesis import given

from lfsat.families import binary_tree_pair, make_fan
from lfsat.graph import complete_graph, cycle_graph, empty_graph, mask_of, path_graph, petersen_graph, star_graph
from lfsat.matching import (
    TutteBergeCertificate,
    alpha_prime_monotone_check,
    check_tutte_berge,
    matching_number,
    max_matching,
    max_matching_bruteforce,
    odd_components,
    tutte_berge_certificate,
    tutte_berge_min_exhaustive,
    tutte_berge_value,
)
from lfsat.search import enumerate_graphs

from conftest import graphs, random_graph


def _is_matching(g, edges):
    used = set()
    for u, v in edges:
        if not g.has_edge(u, v) or u in used or v in used:
            return False
        used |= {u, v}
    return True


@pytest.mark.parametrize(
    "g, size",
    [(path_graph(4), 2), (complete_graph(3), 1), (petersen_graph(), 5), (make_fan(3), 3)],
    ids=["P4", "K3", "petersen", "fan3"],
)
def test_matching_sizes(g, size):
    m = max_matching(g)
    assert m.size == size == len(m.edges)
    assert _is_matching(g, m.edges)
    assert max_matching_bruteforce(g).size == size


def test_bruteforce_examples():
    assert max_matching_bruteforce(empty_graph(5)).size == 0
    assert max_matching_bruteforce(cycle_graph(6)).size == 3


def test_bruteforce_refuses_large_graphs():
    with pytest.raises(ValueError):
        max_matching_bruteforce(empty_graph(17))


def test_oracle_on_every_graph_up_to_eight_vertices():
    count = 0
    for n in range(1, 9):
        for g in enumerate_graphs(n):
            assert max_matching(g).size == max_matching_bruteforce(g).size
            count += 1
    assert count == 1 + 2 + 4 + 11 + 34 + 156 + 1044 + 12346


def test_oracle_on_random_graphs(rng):
    for _ in range(10_000):
        g = random_graph(rng, rng.randint(1, 16))
        m = max_matching(g)
        assert _is_matching(g, m.edges)
        assert m.size == max_matching_bruteforce(g).size


def test_matching_within_mask():
    g = path_graph(6)
    assert matching_number(g, mask_of([0, 1, 2])) == 1
    assert matching_number(g, 0) == 0


def test_certificate_examples():
    k3 = tutte_berge_certificate(complete_graph(3))
    assert (k3.witness_set, k3.odd_components, k3.alpha_prime) == ((), 1, 1)
    star = tutte_berge_certificate(star_graph(3))
    assert (star.witness_set, star.odd_components, star.alpha_prime) == ((0,), 3, 1)


def test_tree_witness_of_size_four():
    t = binary_tree_pair()
    # removing the four middle vertices leaves 8 isolated leaves and the joined roots
    s = mask_of([1, 2, 8, 9])
    assert odd_components(t, s) == 8
    assert tutte_berge_value(t, s) == 2 * 5
    cert = tutte_berge_certificate(t)
    assert cert.alpha_prime == 5 and check_tutte_berge(t, cert)
    # the first minimiser in (size, lex) order is smaller than the hand-picked one
    assert cert.witness_set == (0, 8, 9) and cert.odd_components == 7


def test_certificate_json_round_trip():
    cert = tutte_berge_certificate(petersen_graph())
    doc = json.loads(json.dumps(cert.to_json()))
    assert set(doc) == {"alpha_prime", "witness_set", "odd_components", "matching"}
    assert TutteBergeCertificate.from_json(doc) == cert


def test_tampered_certificate_fails():
    g = petersen_graph()
    cert = tutte_berge_certificate(g)
    bad = TutteBergeCertificate(cert.witness_set, cert.odd_components + 1, cert.alpha_prime, cert.matching)
    assert not check_tutte_berge(g, bad)


def test_gallai_edmonds_branch_for_larger_graphs(rng):
    for _ in range(20):
        g = random_graph(rng, rng.randint(21, 30), 0.1)
        cert = tutte_berge_certificate(g)
        assert check_tutte_berge(g, cert)
        assert cert.alpha_prime == matching_number(g)


def test_monotone_check_examples():
    assert alpha_prime_monotone_check(empty_graph(2), 0, 1)
    assert alpha_prime_monotone_check(complete_graph(3) + empty_graph(1), 0, 3)
    with pytest.raises(ValueError):
        alpha_prime_monotone_check(complete_graph(4), 0, 1)


@given(graphs(max_n=12))
def test_tutte_berge_identity(g):
    best, _ = tutte_berge_min_exhaustive(g)
    assert best == 2 * matching_number(g)
    assert check_tutte_berge(g, tutte_berge_certificate(g))


@given(graphs(min_n=2, max_n=12))
def test_adding_an_edge_raises_matching_by_at_most_one(g):
    base = matching_number(g)
    for u, v in list(g.complement().edges())[:5]:
        assert base <= matching_number(g.add_edge(u, v)) <= base + 1
