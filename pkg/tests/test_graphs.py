import itertools

import pytest

from tutte_ss.errors import InvalidAlphabet, LevelOutOfRange
from tutte_ss.graphs import (
    GENERATORS,
    MAX_GRAPH_LEVEL,
    Multigraph,
    build_contracted,
    build_hanoi,
    build_sierpinski,
    canonical_form,
    component_count,
    connected_components,
    generator_image,
    graph_from_json,
    graph_to_json,
    special_edges,
    word_to_id,
)


@pytest.mark.parametrize("n,v,e", [(1, 3, 3), (2, 6, 9), (3, 15, 27)])
def test_sierpinski_examples(n, v, e):
    g, corners = build_sierpinski(n)
    assert (g.vertex_count, g.edge_count) == (v, e)
    assert len(set(corners)) == 3


@pytest.mark.parametrize("n", range(1, 7))
def test_sierpinski_counts_and_shape(n):
    g, corners = build_sierpinski(n)
    assert g.vertex_count == (3 ** n + 3) // 2
    assert g.edge_count == 3 ** n
    assert not g.has_loops()
    assert len({tuple(sorted(e)) for e in g.edges}) == g.edge_count
    assert g.is_connected()
    # corners have degree 2, every other vertex degree 4
    degrees = [g.degree(v) for v in range(g.vertex_count)]
    assert sorted(degrees[c] for c in corners) == [2, 2, 2]
    assert degrees.count(4) == g.vertex_count - 3


def test_sierpinski_level_one_is_triangle():
    g, _ = build_sierpinski(1)
    assert sorted(tuple(sorted(e)) for e in g.edges) == [(0, 1), (0, 2), (1, 2)]


def test_hanoi_level_one_with_loops():
    g, corners = build_hanoi(1, include_loops=True)
    assert g.vertex_count == 3 and g.edge_count == 6 and g.loop_count() == 3
    loops = {(g.vertex_labels[u], lab) for (u, v), lab in zip(g.edges, g.edge_labels) if u == v}
    assert loops == {("0", "c"), ("1", "b"), ("2", "a")}
    assert tuple(corners) == (0, 1, 2)


def test_hanoi_level_two_labels():
    g, _ = build_hanoi(2)
    assert (g.vertex_count, g.edge_count) == (9, 12)
    labelled = {(g.vertex_labels[u], g.vertex_labels[v], lab) for (u, v), lab in zip(g.edges, g.edge_labels)}
    assert ("00", "10", "a") in labelled
    assert ("00", "20", "b") in labelled


@pytest.mark.parametrize("n", range(1, 7))
def test_hanoi_counts_and_degrees(n):
    g, corners = build_hanoi(n)
    assert g.vertex_count == 3 ** n
    assert g.edge_count == (3 ** (n + 1) - 3) // 2
    assert g.is_connected()
    gl, _ = build_hanoi(n, include_loops=True)
    assert gl.edge_count == g.edge_count + 3
    for v in range(gl.vertex_count):
        incident = sorted(lab for (a, b), lab in zip(gl.edges, gl.edge_labels) if v in (a, b))
        assert incident == ["a", "b", "c"]
    assert [gl.vertex_labels[c] for c in corners] == ["0" * n, "1" * n, "2" * n]


def test_generator_examples():
    assert generator_image("00", "a") == "10"
    assert generator_image("00", "b") == "20"
    assert generator_image("00", "c") == "00"
    assert generator_image("21", "a") == "20"


@pytest.mark.parametrize("length", range(1, 7))
def test_generators_are_involutions(length):
    for letters in itertools.product("012", repeat=length):
        w = "".join(letters)
        for g in GENERATORS:
            assert generator_image(generator_image(w, g), g) == w


@pytest.mark.parametrize("bad", ["", "013", "ab"])
def test_generator_bad_alphabet(bad):
    with pytest.raises(InvalidAlphabet):
        generator_image(bad, "a")


def test_special_edges_join_distinct_copies():
    for n in range(2, 6):
        g, _ = build_hanoi(n)
        edge_set = {tuple(sorted(e)) for e in g.edges}
        for u, v, lab in special_edges(n):
            assert u[-1] != v[-1]
            assert tuple(sorted((word_to_id(u), word_to_id(v)))) in edge_set
            assert generator_image(u, lab) == v


@pytest.mark.parametrize("n,v,e", [(2, 6, 9), (3, 24, 36), (4, 78, 117)])
def test_contracted_counts(n, v, e):
    g, corners = build_contracted(n)
    assert (g.vertex_count, g.edge_count) == (v, e)
    assert g.vertex_count == 3 ** n - 3 and g.edge_count == (3 ** (n + 1) - 9) // 2
    assert g.is_connected() and len(set(corners)) == 3


def test_contracted_two_is_sierpinski_two():
    assert canonical_form(build_contracted(2)[0]) == canonical_form(build_sierpinski(2)[0])


def test_contracted_corners_are_outer_words():
    g, corners = build_contracted(3)
    assert [g.vertex_labels[c] for c in corners] == ["000", "111", "222"]


def test_connected_components_examples():
    k3, _ = build_sierpinski(1)
    assert len(connected_components(k3, [])) == 3
    assert len(connected_components(k3)) == 1
    g2, _ = build_sierpinski(2)
    triangle = [k for k, (u, v) in enumerate(g2.edges) if u < 3 and v < 3]
    assert len(triangle) == 3
    assert component_count(g2, triangle) == 4


def test_level_caps():
    for builder in (build_sierpinski, build_hanoi):
        with pytest.raises(LevelOutOfRange):
            builder(0)
        with pytest.raises(LevelOutOfRange):
            builder(MAX_GRAPH_LEVEL + 1)
    with pytest.raises(LevelOutOfRange):
        build_contracted(1)


def test_builders_are_deterministic():
    for builder in (build_sierpinski, build_hanoi, build_contracted):
        assert builder(3) == builder(3)


def test_json_roundtrip():
    g, corners = build_hanoi(2)
    s = graph_to_json(g, corners)
    assert s.startswith('{"n":2,"family":"hanoi","vertices":')
    g2, c2 = graph_from_json(s)
    assert g2 == g and c2 == corners


def test_multigraph_validation():
    with pytest.raises(ValueError):
        Multigraph(2, ((0, 2),))
