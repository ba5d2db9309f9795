"""Plain-text formats: edge lists, orientations, key=value reports and DOT."""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import GraphError
from .graph import PartialOrientation, UndirectedGraph


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _ints(lineno: int, line: str, count: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise GraphError(f"line {lineno}: expected {count} integers, got {line!r}")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise GraphError(f"line {lineno}: expected integers, got {line!r}") from None


def parse_edge_list(text: str) -> UndirectedGraph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``; ``#`` comments and blanks are skipped."""
    lines = list(_data_lines(text))
    if not lines:
        raise GraphError("empty edge list")
    n, m = _ints(*lines[0], 2)
    if n < 0 or m < 0:
        raise GraphError(f"line {lines[0][0]}: negative size")
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, found {len(body)}")
    return UndirectedGraph(n, [tuple(_ints(ln, line, 2)) for ln, line in body])


def dump_edge_list(g: UndirectedGraph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def read_graph(path: str) -> UndirectedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def parse_orientation(g: UndirectedGraph, text: str) -> PartialOrientation:
    """Read arcs ``"u v"`` (u -> v) for ``g``; every listed pair must be an edge of ``g``."""
    o = PartialOrientation(g)
    for lineno, line in _data_lines(text):
        u, v = _ints(lineno, line, 2)
        if not g.has_edge(u, v):
            raise GraphError(f"line {lineno}: ({u}, {v}) is not an edge")
        if o.is_oriented(u, v):
            raise GraphError(f"line {lineno}: edge ({u}, {v}) listed twice")
        o.orient(u, v)
    return o


def dump_orientation(o: PartialOrientation) -> str:
    return "".join(f"{a} {b}\n" for a, b in o.arcs())


def dump_report(record: Mapping[str, object]) -> str:
    return "".join(f"{k}={v}\n" for k, v in record.items())


def parse_report(text: str) -> dict[str, str]:
    out = {}
    for lineno, line in _data_lines(text):
        key, sep, value = line.partition("=")
        if not sep:
            raise GraphError(f"line {lineno}: expected key=value, got {line!r}")
        out[key.strip()] = value.strip()
    return out


def to_dot(g: UndirectedGraph, o: PartialOrientation | None = None, name: str = "G") -> str:
    """DOT text; a ``digraph`` with ``a -> b;`` lines when an orientation is given."""
    lines: Iterable[str]
    if o is None:
        head = f"graph {name} {{"
        lines = [f"  {u} -- {v};" for u, v in g.edges]
    else:
        head = f"digraph {name} {{"
        lines = []
        for u, v in g.edges:
            arc = o.arc(u, v)
            lines.append(f"  {arc[0]} -> {arc[1]};" if arc else f"  {u} -> {v} [dir=none];")
    isolated = [f"  {v};" for v in g.vertices() if not g.adj[v]]
    return "\n".join([head, *isolated, *lines, "}"]) + "\n"
