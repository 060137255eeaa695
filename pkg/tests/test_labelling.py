import json
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from plabel.graphs import Graph, incidence_graph, make_path, make_star
from plabel.labelling import (
    Edge,
    Vertex,
    element_from_name,
    element_key,
    element_name,
    elements_of,
    full_lists,
    is_valid,
    labelling_from_json,
    labelling_to_json,
    lists_from_json,
    lists_to_json,
    lp1_is_valid,
    p_ball,
    pull_back_labelling,
    pull_back_lists,
    respects_lists,
    transport_labelling,
    transport_lists,
)


def test_edge_normalizes():
    assert Edge(3, 1) == Edge(1, 3)
    with pytest.raises(ValueError):
        Edge(2, 2)


def test_element_order_vertices_before_edges():
    g = Graph(3, [(1, 2), (0, 1)])
    assert elements_of(g) == [Vertex(0), Vertex(1), Vertex(2), Edge(0, 1), Edge(1, 2)]


def test_element_names_round_trip():
    for x in (Vertex(7), Edge(2, 9)):
        assert element_from_name(element_name(x)) == x
    with pytest.raises(ValueError):
        element_from_name("w:3")


def test_p_ball_examples():
    assert p_ball(5, 2) == {4, 5, 6}
    assert p_ball(7, 1) == {7}
    assert p_ball(0, 3) == {-2, -1, 0, 1, 2}
    assert p_ball(4, 0) == set()
    with pytest.raises(ValueError):
        p_ball(1, -1)


@given(st.integers(-5, 20), st.integers(1, 6))
def test_p_ball_size_and_membership(x, p):
    ball = p_ball(x, p)
    assert len(ball) == 2 * p - 1
    assert ball == {c for c in range(x - p, x + p + 1) if abs(c - x) < p}


def test_is_valid_single_edge():
    g = make_path(2)
    good = {Vertex(0): 0, Edge(0, 1): 2, Vertex(1): 4}
    assert is_valid(g, 2, good, total=True).ok
    bad = {Vertex(0): 0, Edge(0, 1): 1, Vertex(1): 3}
    report = is_valid(g, 2, bad)
    assert not report.ok
    assert [v.family for v in report.violations] == ["vertex-edge"]


def test_is_valid_empty_and_total_flag():
    g = make_path(3)
    assert is_valid(g, 2, {}).ok
    report = is_valid(g, 2, {}, total=True)
    assert not report.ok
    assert all(v.family == "unlabelled" for v in report.violations)
    assert len(report.violations) == 5


def test_is_valid_reports_all_violation_families():
    g = make_star(2)  # path 1-0-2
    c = {Vertex(1): 3, Vertex(2): 3, Edge(0, 1): 5, Edge(0, 2): 5, Vertex(0): 5}
    report = is_valid(g, 1, c)
    fams = sorted(v.family for v in report.violations)
    # leaves are non-adjacent so equal vertex colors are fine; the edges clash
    # at the center, and the center sits on both its edges
    assert fams == ["edge-edge", "vertex-edge", "vertex-edge"]


def test_is_valid_p0_degenerates_to_proper_colorings():
    tri = Graph(3, [(0, 1), (1, 2), (0, 2)])
    c = {
        Vertex(0): 0, Vertex(1): 1, Vertex(2): 2,
        Edge(0, 1): 0, Edge(1, 2): 1, Edge(0, 2): 2,
    }
    # vertex color equals incident edge color: fine at p=0
    assert is_valid(tri, 0, c, total=True).ok


def test_is_valid_domain_error():
    g = make_path(2)
    with pytest.raises(ValueError):
        is_valid(g, 1, {Vertex(9): 0})
    with pytest.raises(ValueError):
        is_valid(g, 1, {Edge(0, 9): 0})


def test_p1_matches_total_coloring_predicate():
    # adjacent/incident elements must simply be distinct
    g = make_path(3)
    c = {Vertex(0): 2, Edge(0, 1): 1, Vertex(1): 0, Edge(1, 2): 2, Vertex(2): 1}
    assert is_valid(g, 1, c, total=True).ok
    c[Edge(1, 2)] = 1
    assert not is_valid(g, 1, c).ok


def test_respects_lists():
    lists = {Vertex(0): {0, 1}, Vertex(1): {2}}
    assert respects_lists({Vertex(0): 0}, lists)
    assert not respects_lists({Vertex(0): 2}, lists)
    with pytest.raises(ValueError):
        respects_lists({Vertex(9): 0}, lists)


def test_full_list_assignment_always_respected():
    g = make_star(3)
    lists = full_lists(g, range(5))
    c = {x: 4 for x in elements_of(g)}
    assert respects_lists(c, lists)


def test_lp1_validity():
    p3 = make_path(3)
    assert lp1_is_valid(p3, 2, {0: 0, 1: 2, 2: 4}).ok
    report = lp1_is_valid(p3, 2, {0: 0, 1: 2, 2: 0})
    assert not report.ok and report.violations[0].family == "distance-2"
    assert lp1_is_valid(Graph(1), 5, {0: 0}).ok
    # adjacent separation
    assert not lp1_is_valid(p3, 3, {0: 0, 1: 2}).ok
    with pytest.raises(ValueError):
        lp1_is_valid(p3, 1, {9: 0})


def test_lp1_distance_two_means_exactly_two():
    tri = Graph(3, [(0, 1), (1, 2), (0, 2)])
    # in a triangle every pair is adjacent, never at distance two
    assert lp1_is_valid(tri, 1, {0: 0, 1: 1, 2: 2}).ok
    assert not lp1_is_valid(tri, 2, {0: 0, 1: 1}).ok


def test_transport_round_trip_and_example():
    g = make_path(2)
    im = incidence_graph(g)
    c = {Vertex(0): 0, Edge(0, 1): 2, Vertex(1): 4}
    labels = transport_labelling(im, c)
    assert labels == {0: 0, 1: 4, 2: 2}
    assert lp1_is_valid(im.derived, 2, labels).ok
    assert pull_back_labelling(im, labels) == c
    assert transport_labelling(im, {}) == {}
    lists = {Vertex(0): {0, 1}, Vertex(1): {2}, Edge(0, 1): {5, 6}}
    assert pull_back_lists(im, transport_lists(im, lists)) == {
        x: set(v) for x, v in lists.items()
    }


def _all_labellings(elems, colors):
    for combo in product(colors, repeat=len(elems)):
        yield dict(zip(elems, combo))


@pytest.mark.parametrize(
    "g", [make_path(2), make_path(3), Graph(3, [(0, 1), (1, 2), (0, 2)])]
)
@pytest.mark.parametrize("p", [0, 1, 2])
def test_incidence_equivalence_exhaustive(g, p):
    # total labellings of g correspond to vertex labellings of the
    # subdivision: same verdict, element by element
    im = incidence_graph(g)
    elems = elements_of(g)
    colors = range(2 * p + 2)
    for c in _all_labellings(elems, colors):
        direct = is_valid(g, p, c, total=True).ok
        bridged = lp1_is_valid(im.derived, p, transport_labelling(im, c)).ok
        assert direct == bridged


@given(st.integers(0, 2**30), st.integers(2, 8), st.integers(0, 3), st.integers(0, 6))
def test_incidence_equivalence_random(seed, n, p, extra):
    import random

    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
    g = Graph(n, edges)
    if g.n + g.m > 8:
        return
    im = incidence_graph(g)
    elems = elements_of(g)
    c = {x: rng.randrange(0, 2 * p + 2 + extra) for x in elems if rng.random() < 0.8}
    direct = is_valid(g, p, c).ok
    bridged = lp1_is_valid(im.derived, p, transport_labelling(im, c)).ok
    assert direct == bridged


@given(st.integers(0, 2**30), st.integers(0, 3), st.integers(0, 5))
def test_shift_invariance(seed, p, t):
    import random

    rng = random.Random(seed)
    g = make_star(3)
    c = {x: rng.randrange(0, 8) for x in elements_of(g) if rng.random() < 0.8}
    shifted = {x: color + t for x, color in c.items()}
    assert is_valid(g, p, c).ok == is_valid(g, p, shifted).ok


@given(st.integers(0, 2**30), st.integers(0, 3))
def test_restriction_monotonicity(seed, p):
    import random

    rng = random.Random(seed)
    n = rng.randrange(2, 7)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
    g = Graph(n, edges)
    c = {x: rng.randrange(0, 2 * p + 3) for x in elements_of(g)}
    if not is_valid(g, p, c).ok:
        return
    sub_edges = [e for e in g.sorted_edges() if rng.random() < 0.6]
    sub = Graph(n, sub_edges)
    restricted = {x: c[x] for x in elements_of(sub)}
    assert is_valid(sub, p, restricted).ok


def test_labelling_json_round_trip_and_key_order():
    g = make_star(2)
    c = {Edge(0, 2): 5, Vertex(1): 1, Vertex(0): 3, Edge(0, 1): 7}
    text = labelling_to_json(2, c)
    keys = list(json.loads(text)["labels"])
    assert keys == ["v:0", "v:1", "e:0-1", "e:0-2"]
    p, back = labelling_from_json(text)
    assert p == 2 and back == c


def test_lists_json_round_trip():
    lists = {Vertex(0): {3, 1}, Edge(0, 1): {0, 9, 4}}
    text = lists_to_json(1, lists)
    obj = json.loads(text)
    assert obj["lists"]["e:0-1"] == [0, 4, 9]
    p, back = lists_from_json(text)
    assert p == 1 and back == {Vertex(0): {1, 3}, Edge(0, 1): {0, 4, 9}}


def test_element_key_orders_mixed_sets():
    xs = [Edge(0, 1), Vertex(2), Edge(0, 2), Vertex(0)]
    assert sorted(xs, key=element_key) == [Vertex(0), Vertex(2), Edge(0, 1), Edge(0, 2)]
