"""Tests for pyqfim.hypergraph."""
import itertools
from functools import reduce

import numpy as np
import pytest

from pyqfim.errors import HypergraphError
from pyqfim.hypergraph import (
    Hypergraph,
    build_state,
    edges_from_cli,
    parse_hypergraph,
    three_uniform_hyperedge,
    triangle_graph,
)
from pyqfim.statevec import apply_cz, plus_state


def _pairwise_reference(n, edges):
    """Graph state from the phase (-1)^(sum over edges of x_i x_j)."""
    amplitudes = []
    for bits in itertools.product((0, 1), repeat=n):
        parity = sum(bits[i - 1] * bits[j - 1] for i, j in edges)
        amplitudes.append((-1) ** parity)
    return np.array(amplitudes) / np.sqrt(2**n)


class TestBuildState:
    """Tests covering build_state."""

    def test_triangle(self):
        """Triangle graph gives (1,1,1,-1,1,-1,-1,-1)/sqrt(8)."""
        state = build_state(triangle_graph())
        expected = np.array([1, 1, 1, -1, 1, -1, -1, -1]) / np.sqrt(8)
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-15)

    def test_single_hyperedge(self):
        """The 3-uniform hyperedge negates only |111>."""
        state = build_state(three_uniform_hyperedge())
        expected = np.array([1, 1, 1, 1, 1, 1, 1, -1]) / np.sqrt(8)
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-15)

    def test_no_edges(self):
        """An empty edge set leaves |+>^n."""
        state = build_state(Hypergraph.from_edges(3, []))
        np.testing.assert_array_equal(
            state.amplitudes, plus_state(3).amplitudes
        )

    def test_edge_order_irrelevant(self):
        """Every application order gives bitwise identical amplitudes."""
        edges = [(1, 2), (2, 3, 4), (1, 4), (1, 2, 3, 4)]
        results = [
            reduce(apply_cz, order, plus_state(4)).amplitudes
            for order in itertools.permutations(edges)
        ]
        for amplitudes in results[1:]:
            np.testing.assert_array_equal(amplitudes, results[0])

    @pytest.mark.parametrize(
        "edges",
        (
            [(1, 2)],
            [(1, 2), (2, 3), (3, 4), (4, 1)],
            [(1, 3), (2, 4), (1, 4), (2, 3), (1, 2)],
        ),
        ids=("edge", "square", "dense"),
    )
    def test_graph_matches_pairwise_reference(self, edges):
        """Graphs match a direct phase-polynomial construction."""
        hypergraph = Hypergraph.from_edges(4, edges)
        assert hypergraph.is_graph
        np.testing.assert_allclose(
            build_state(hypergraph).amplitudes,
            _pairwise_reference(4, edges),
            atol=1e-15,
        )

    def test_amplitudes_are_signed_uniform(self):
        """Hypergraph amplitudes are exactly +-2**(-n/2)."""
        hypergraph = Hypergraph.from_edges(4, [(1, 2, 3), (2, 4), (1, 3, 4)])
        amplitudes = build_state(hypergraph).amplitudes
        assert np.all(amplitudes.imag == 0)
        np.testing.assert_array_equal(np.abs(amplitudes.real), 0.25)


class TestHypergraph:
    """Tests covering Hypergraph validation and canonical form."""

    def test_canonical_form(self):
        """Edges are sorted within and across."""
        hypergraph = Hypergraph.from_edges(3, [(3, 1), (2, 1)])
        assert hypergraph.edges == ((1, 2), (1, 3))
        assert hypergraph.serialize() == "3; 1 2; 1 3"

    def test_equality_ignores_order(self):
        """Two edge orders give equal hypergraphs."""
        assert Hypergraph.from_edges(3, [(1, 2), (2, 3)]) == (
            Hypergraph.from_edges(3, [(3, 2), (2, 1)])
        )

    @pytest.mark.parametrize(
        "n,edges,message",
        (
            (0, [], "positive"),
            (3, [(1, 4)], "outside"),
            (3, [(0, 1)], "outside"),
            (3, [(1,)], "loop"),
            (3, [(1, 1)], "loop"),
            (3, [(1, 2), (2, 1)], "duplicate"),
        ),
    )
    def test_invalid(self, n, edges, message):
        """Invalid hypergraphs raise HypergraphError."""
        with pytest.raises(HypergraphError, match=message):
            Hypergraph.from_edges(n, edges)

    def test_is_graph(self):
        """A hyperedge of three vertices is not a graph edge."""
        assert triangle_graph().is_graph
        assert not three_uniform_hyperedge().is_graph


class TestParseHypergraph:
    """Tests covering parse_hypergraph."""

    def test_triangle(self):
        """The triangle parses to the canonical triangle graph."""
        assert parse_hypergraph("3; 1 2; 2 3; 3 1") == triangle_graph()

    def test_hyperedge(self):
        """A single three vertex edge."""
        assert parse_hypergraph("3; 1 2 3") == three_uniform_hyperedge()

    @pytest.mark.parametrize(
        "text", ("3; 1 2; 1 3; 2 3", "3; 1 2 3", "4", "4; 1 2; 1 2 3 4")
    )
    def test_serialize_round_trip(self, text):
        """Parsing then serializing canonical text is the identity."""
        assert parse_hypergraph(text).serialize() == text

    def test_free_whitespace_and_trailing_separator(self):
        """Newlines and a trailing ';' are accepted."""
        hypergraph = parse_hypergraph("3;\n  1 2;\n  2 3;\n")
        assert hypergraph.edges == ((1, 2), (2, 3))

    def test_loop_rejected_with_location(self):
        """A repeated vertex is a loop, reported at the edge."""
        with pytest.raises(HypergraphError, match="loop") as excinfo:
            parse_hypergraph("3; 1 1")
        assert (excinfo.value.line, excinfo.value.col) == (1, 4)
        assert "line 1, column 4" in str(excinfo.value)

    def test_out_of_range_location(self):
        """The offending vertex is located on its own line."""
        with pytest.raises(HypergraphError) as excinfo:
            parse_hypergraph("3;\n1 2;\n2 5")
        assert (excinfo.value.line, excinfo.value.col) == (3, 3)

    def test_zero_vertex(self):
        """Vertex labels start at 1."""
        with pytest.raises(HypergraphError, match="outside"):
            parse_hypergraph("3; 0 1")

    def test_duplicate_edge(self):
        """The same edge twice is rejected at the second occurrence."""
        with pytest.raises(HypergraphError, match="duplicate") as excinfo:
            parse_hypergraph("3; 1 2; 2 1")
        assert excinfo.value.col == 9

    @pytest.mark.parametrize(
        "text", ("", "3; a b", "3; 1 2;; 2 3", "3, 1 2", "3; 1 -2")
    )
    def test_malformed(self, text):
        """Malformed tokens raise with a location."""
        with pytest.raises(HypergraphError, match="malformed") as excinfo:
            parse_hypergraph(text)
        assert excinfo.value.line is not None

    def test_zero_vertex_count(self):
        """The vertex count must be positive."""
        with pytest.raises(HypergraphError, match="positive"):
            parse_hypergraph("0")


class TestEdgesFromCli:
    """Tests covering edges_from_cli."""

    def test_converts_to_text(self):
        """Comma separated edges become the edge-list format."""
        text = edges_from_cli("1 2,2 3, 3 1", 3)
        assert text == "3; 1 2; 2 3; 3 1"
        assert parse_hypergraph(text) == triangle_graph()
