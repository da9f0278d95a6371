# This file is part of pyqfim. See LICENSE file for license information.
"""Graphs, hypergraphs and the states they define.

A hypergraph state is |+>^N with one C^(k-1)Z per hyperedge of k
vertices; a graph is the case where every edge has two vertices.

Hypergraphs are read from and written to a one-line text format::

    n; e1; e2; ...

where n is the vertex count and each edge is a space separated list of
vertex labels in 1..n, e.g. "3; 1 2; 2 3; 3 1" for the triangle.
"""

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Tuple

import pyparsing as pp

from pyqfim.errors import HypergraphError
from pyqfim.statevec import QubitState, apply_cz, plus_state

log = logging.getLogger(__name__)

Edge = Tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """Vertex count and a canonical, duplicate free tuple of edges."""

    n_vertices: int
    edges: Tuple[Edge, ...] = ()

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[Iterable[int]]):
        """Validate edges and return the hypergraph in canonical form.

        Raises:
            HypergraphError: on a bad vertex count, a vertex outside
                1..n_vertices, a loop, a repeated vertex or a duplicate
                edge

        """
        if not isinstance(n_vertices, int) or n_vertices < 1:
            raise HypergraphError(
                "vertex count must be a positive integer, got {!r}".format(
                    n_vertices
                )
            )
        seen = set()
        for edge in edges:
            edge = list(edge)
            _check_edge(n_vertices, edge)
            key = tuple(sorted(edge))
            if key in seen:
                raise HypergraphError(
                    "duplicate edge {}".format(" ".join(map(str, key)))
                )
            seen.add(key)
        return cls(n_vertices, tuple(sorted(seen)))

    @property
    def is_graph(self):
        """Return True when every edge joins exactly two vertices."""
        return all(len(edge) == 2 for edge in self.edges)

    def serialize(self) -> str:
        """Return the canonical edge-list text."""
        parts = [str(self.n_vertices)]
        parts.extend(" ".join(map(str, edge)) for edge in self.edges)
        return "; ".join(parts)

    def __str__(self):
        """Return the canonical edge-list text."""
        return self.serialize()


def _check_edge(n_vertices, edge):
    for vertex in edge:
        if not isinstance(vertex, int) or not 1 <= vertex <= n_vertices:
            raise HypergraphError(
                "vertex {!r} outside 1..{}".format(vertex, n_vertices)
            )
    if len(set(edge)) != len(edge):
        raise HypergraphError(
            "loop: edge {} repeats a vertex".format(" ".join(map(str, edge)))
        )
    if len(edge) < 2:
        raise HypergraphError(
            "loop: edge {} has a single vertex".format(edge[0])
        )


def triangle_graph() -> Hypergraph:
    """Return the 3-vertex cycle graph."""
    return Hypergraph.from_edges(3, [(1, 2), (2, 3), (3, 1)])


def three_uniform_hyperedge() -> Hypergraph:
    """Return the 3-vertex hypergraph with the single hyperedge {1, 2, 3}."""
    return Hypergraph.from_edges(3, [(1, 2, 3)])


def build_state(hypergraph: Hypergraph) -> QubitState:
    """Apply one C^kZ per edge to |+>^n.

    The gates are diagonal and commute, so the edge order is irrelevant.
    """
    log.debug("building state for hypergraph %s", hypergraph)
    initial = plus_state(hypergraph.n_vertices)
    return reduce(apply_cz, hypergraph.edges, initial)


@dataclass(frozen=True)
class _Vertex:
    value: int
    line: int
    col: int


def _vertex_action(text, loc, tokens):
    return _Vertex(int(tokens[0]), pp.lineno(loc, text), pp.col(loc, text))


def _grammar():
    vertex = pp.Word(pp.nums).setName("vertex label")
    vertex.setParseAction(_vertex_action)
    header = pp.Word(pp.nums).setName("vertex count")
    header.setParseAction(_vertex_action)
    edge = pp.Group(pp.OneOrMore(vertex)).setName("edge")
    return (
        header("n")
        + pp.Group(pp.ZeroOrMore(pp.Suppress(";") + edge))("edges")
        + pp.Optional(pp.Suppress(";"))
        + pp.StringEnd()
    )


GRAMMAR = _grammar()


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the edge-list text format.

    Args:
        text: e.g. "3; 1 2 3"; whitespace, including newlines, is free and
              a trailing ";" is accepted

    Returns:
        Hypergraph in canonical form

    Raises:
        HypergraphError: with the line and column of the offending token

    """
    try:
        parsed = GRAMMAR.parseString(text, parseAll=True)
    except pp.ParseException as e:
        raise HypergraphError(
            "malformed edge list: {}".format(e.msg), e.lineno, e.col
        ) from None
    header = parsed["n"]
    if header.value < 1:
        raise HypergraphError(
            "vertex count must be positive", header.line, header.col
        )
    seen = set()
    for group in parsed.get("edges", []):
        edge = list(group)
        first = edge[0]
        try:
            _check_edge(header.value, [vertex.value for vertex in edge])
        except HypergraphError as e:
            outside = [v for v in edge if not 1 <= v.value <= header.value]
            bad = outside[0] if outside else first
            raise HypergraphError(str(e), bad.line, bad.col) from None
        key = tuple(sorted(vertex.value for vertex in edge))
        if key in seen:
            raise HypergraphError(
                "duplicate edge {}".format(" ".join(map(str, key))),
                first.line,
                first.col,
            )
        seen.add(key)
    return Hypergraph(header.value, tuple(sorted(seen)))


def edges_from_cli(edges: str, vertices: int) -> str:
    """Convert the --edges "1 2,2 3" / --vertices 3 form to edge-list text."""
    parts = [str(vertices)]
    parts.extend(edge.strip() for edge in edges.split(",") if edge.strip())
    return "; ".join(parts)
