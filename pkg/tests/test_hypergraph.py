import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxturan.errors import BudgetExceeded
from boxturan.hypergraph import (
    BoxWitness,
    Hypergraph,
    box_pair_scan,
    dumps_edgelist,
    find_complete_rpartite,
    link_search,
    loads_edgelist,
)


def graph(sizes, edges):
    return Hypergraph([list(range(n)) for n in sizes], edges)


def oracle_has_complete(H, sizes):
    # every choice of vertex subsets, no pruning
    choices = [itertools.combinations(range(n), s) for n, s in zip(H.part_sizes, sizes)]
    return any(all(e in H.edges for e in itertools.product(*parts)) for parts in itertools.product(*choices))


def test_validation():
    with pytest.raises(ValueError):
        graph((2, 2), [(0, 0, 0)])
    with pytest.raises(ValueError):
        graph((2, 2), [(0, 2)])
    H = graph((2, 3), [(0, 1), (0, 1), (1, 2)])
    assert H.num_edges == 2 and H.num_vertices == 5
    assert (0, 1) in H and (1, 1) not in H
    assert H.sorted_edges() == [(0, 1), (1, 2)]


def test_complete_bipartite_found():
    H = graph((2, 2), itertools.product(range(2), repeat=2))
    w = find_complete_rpartite(H, (2, 2))
    assert w == BoxWitness(((0, 1), (0, 1)))
    assert all(e in H for e in w.edges)


def test_six_cycle_has_no_four_cycle():
    c6 = [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)]
    H = graph((3, 3), c6)
    assert find_complete_rpartite(H, (2, 2)) is None
    assert not oracle_has_complete(H, (2, 2))


def test_sizes_must_fit():
    H = graph((2, 2), [(0, 0)])
    with pytest.raises(ValueError):
        find_complete_rpartite(H, (3, 1))
    with pytest.raises(ValueError):
        find_complete_rpartite(H, (0, 1))
    with pytest.raises(ValueError):
        find_complete_rpartite(H, (1, 1, 1))


def test_budget_exceeded():
    rng = random.Random(1)
    H = graph((8, 8, 8), [e for e in itertools.product(range(8), repeat=3) if rng.random() < 0.5])
    with pytest.raises(BudgetExceeded):
        link_search(H, (2, 2, 2), budget=5)


def test_planted_box_among_noise():
    rng = random.Random(7)
    n = 12
    edges = {e for e in itertools.product(range(n), repeat=3) if rng.random() < 0.02}
    box = [(1, 5), (2, 9), (0, 11)]
    edges |= set(itertools.product(*box))
    H = graph((n, n, n), edges)
    w = find_complete_rpartite(H, (2, 2, 2))
    assert w is not None and all(e in H for e in w.edges)
    assert all(len(set(part)) == 2 for part in w.parts)


@st.composite
def small_hypergraphs(draw):
    r = draw(st.integers(2, 3))
    sizes = tuple(draw(st.integers(2, 6 if r == 2 else 4)) for _ in range(r))
    cells = list(itertools.product(*[range(n) for n in sizes]))
    density = draw(st.sampled_from([0.2, 0.4, 0.6, 0.8]))
    rnd = draw(st.randoms(use_true_random=False))
    edges = [c for c in cells if rnd.random() < density]
    return graph(sizes, edges)


@settings(max_examples=150, deadline=None)
@given(small_hypergraphs())
def test_pair_scan_matches_oracle(H):
    sizes = (2,) * H.r
    w = find_complete_rpartite(H, sizes)
    assert (w is not None) == oracle_has_complete(H, sizes)
    if w is not None:
        assert all(e in H for e in w.edges)


@settings(max_examples=150, deadline=None)
@given(small_hypergraphs(), st.data())
def test_general_sizes_match_oracle(H, data):
    sizes = tuple(data.draw(st.integers(1, min(3, n))) for n in H.part_sizes)
    w = find_complete_rpartite(H, sizes)
    assert (w is not None) == oracle_has_complete(H, sizes)
    if w is not None:
        assert [len(p) for p in w.parts] == list(sizes)
        assert all(len(set(p)) == len(p) for p in w.parts)
        assert all(e in H for e in w.edges)
        assert len(w.edges) == math.prod(sizes)


@settings(max_examples=80, deadline=None)
@given(small_hypergraphs())
def test_scan_and_link_search_agree(H):
    sizes = (2,) * H.r
    assert (box_pair_scan(H) is None) == (link_search(H, sizes) is None)


# serialization


def test_edgelist_round_trip_with_labels():
    H = Hypergraph([[1, 2, 3], [5, 7]], [(0, 1), (2, 0)])
    text = dumps_edgelist(H, field="GF(2^2)/1,1,1")
    assert text.splitlines()[0] == "# r=2 parts=3,2"
    assert "0:1 1:7" in text.splitlines()
    H2, meta = loads_edgelist(text)
    assert H2 == H
    assert meta["field"] == "GF(2^2)/1,1,1"


def test_edgelist_without_labels_lines():
    H, meta = loads_edgelist("# r=2 parts=2,2\n0:4 1:9\n1:9 0:6\n")
    assert H.labels == ((4, 6), (9, 0))
    assert H.num_edges == 2
    assert meta["r"] == 2


def test_empty_edgelist():
    H, _ = loads_edgelist("# r=2 parts=0,0\n")
    assert H.num_edges == 0


@pytest.mark.parametrize(
    "text",
    [
        "0:1 1:1\n",
        "# r=2 parts=2,2\n0:1\n",
        "# r=2 parts=2,2\n0:1 0:2\n",
        "# r=2 parts=2\n",
        "# r=2 parts=1,1\n0:1 1:1\n0:2 1:1\n",
        "# r=2 parts=2,2\n0-1 1:1\n",
    ],
)
def test_malformed_edgelists(text):
    with pytest.raises(ValueError):
        loads_edgelist(text)
