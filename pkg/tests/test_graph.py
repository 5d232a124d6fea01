import io

import pytest

from mlstc.graph import (
    MultilayerGraph,
    ParseError,
    candidate_new_edges,
    edge,
    format_mledges,
    layer_count_of,
    parse_multilayer_edgelist,
    read_mledges,
    write_mledges,
)


def test_parse_two_layers():
    G = parse_multilayer_edgelist("L1 a b\nL1 b c\nL2 a b\n")
    assert G.n == 3 and G.k == 2 and G.m == 3
    assert G.layer_names == ("L1", "L2")
    assert G.labels == ("a", "b", "c")
    assert G.layers[0] == {(0, 1), (1, 2)}
    assert G.layers[1] == {(0, 1)}
    assert G.aggregated == {(0, 1): 0b11, (1, 2): 0b01}
    assert layer_count_of(G, (0, 1)) == 2


def test_comments_blank_lines_and_duplicates():
    text = "# header\n\nL1 a b\nL1 b a\nL1 a b\n  # indented comment\nL1 b c\n"
    G = parse_multilayer_edgelist(text)
    assert G.m == 2
    assert G.stats.duplicates == 2
    assert G.stats.comments == 2


def test_column_order():
    G = parse_multilayer_edgelist("a b L1\nb c L1\n", columns=("src", "dst", "layer"))
    assert G.layer_names == ("L1",)
    assert G.layers[0] == {(0, 1), (1, 2)}


@pytest.mark.parametrize("text, lineno", [
    ("L1 a b\nL1 a\n", 2),
    ("L1 a b c\n", 1),
    ("L1 a b\n\nL1 c c\n", 3),
])
def test_parse_errors_report_line(text, lineno):
    with pytest.raises(ParseError) as exc:
        parse_multilayer_edgelist(text)
    assert exc.value.lineno == lineno
    assert f"line {lineno}" in str(exc.value)


def test_empty_input_rejected():
    with pytest.raises(ParseError):
        parse_multilayer_edgelist("# only a comment\n")


def test_bad_columns_rejected():
    with pytest.raises(ValueError):
        parse_multilayer_edgelist("L1 a b\n", columns=("layer", "src", "src"))


def test_stream_input_and_round_trip(tmp_path):
    G = parse_multilayer_edgelist(io.StringIO("x 1 2\nx 2 3\ny 3 1\n"))
    path = tmp_path / "g.mledges"
    write_mledges(G, path)
    H = read_mledges(path)
    assert format_mledges(H) == format_mledges(G)
    assert H.layers == G.layers and H.labels == G.labels


def test_edge_canonical_and_self_loop():
    assert edge(3, 1) == (1, 3)
    with pytest.raises(ValueError):
        edge(2, 2)


def test_from_edge_lists_with_labels():
    G = MultilayerGraph.from_edge_lists([[("a", "b"), ("b", "c")], [("c", "a")]])
    assert G.labels == ("a", "b", "c")
    assert G.layers[1] == {(0, 2)}
    H = MultilayerGraph.from_edge_lists([[(0, 1)]], labels=["p", "q", "r"])
    assert H.n == 3


def test_invalid_graph_rejected():
    with pytest.raises(ValueError):
        MultilayerGraph(("a", "b"), ("L",), (frozenset({(1, 0)}),))
    with pytest.raises(ValueError):
        MultilayerGraph(("a",), (), ())


def test_layer_subgraph_and_bad_layer():
    G = MultilayerGraph.from_edge_lists([[(0, 1), (1, 2)], [(0, 1)]])
    H = G.layer_subgraph(1)
    assert H.k == 1 and H.n == G.n and H.layers[0] == G.layers[1]
    with pytest.raises(IndexError):
        G.layer_subgraph(2)


def test_candidate_new_edges():
    G = MultilayerGraph.from_edge_lists([[(0, 1), (1, 2), (2, 3)]])
    assert candidate_new_edges(G, 0) == {(0, 2), (1, 3)}
