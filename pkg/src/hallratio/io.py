"""Reading and writing graphs as edge lists or JSON.

JSON is the canonical format (it carries block metadata)::

    {"n": 5, "edges": [[0, 1], ...], "blocks": [[0, 1], [2]], "meta": {...}}

The edge-list format is one ``u v`` pair per line, 0-based, with an
optional ``p <n> <m>`` header (``p edge <n> <m>`` is accepted too). Lines
starting with ``c`` or ``#`` are comments.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from .blocks import BlockGraph
from .graph import Graph, GraphError, Subgraph

__all__ = [
    "GraphFormatError",
    "parse_edge_list",
    "format_edge_list",
    "parse_json_graph",
    "graph_to_json",
    "read_graph",
    "write_graph",
    "read_subgraph",
    "subgraph_to_json",
]


class GraphFormatError(GraphError):
    """Malformed graph file; ``line`` or ``field`` locates the problem."""

    def __init__(self, message: str, *, line: Optional[int] = None, field: Optional[str] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.field = field


def parse_edge_list(text: str) -> Graph:
    n_decl = m_decl = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c#%":
            continue
        parts = line.split()
        if parts[0] == "p":
            nums = parts[2:] if len(parts) == 4 else parts[1:]
            if len(nums) != 2:
                raise GraphFormatError("header must be 'p <n> <m>'", line=lineno)
            try:
                n_decl, m_decl = int(nums[0]), int(nums[1])
            except ValueError:
                raise GraphFormatError("non-integer header value", line=lineno) from None
            continue
        if parts[0] == "e" and len(parts) == 3:
            parts = parts[1:]
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {raw!r}", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {raw!r}", line=lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError("vertex indices must be nonnegative", line=lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", line=lineno)
        if n_decl is not None and max(u, v) >= n_decl:
            raise GraphFormatError(f"vertex {max(u, v)} exceeds declared n={n_decl}", line=lineno)
        edges.append((u, v))
    n = n_decl if n_decl is not None else max((max(e) for e in edges), default=-1) + 1
    g = Graph(n, edges)
    if m_decl is not None and g.m != m_decl:
        raise GraphFormatError(f"header declares m={m_decl} but {g.m} distinct edges were read")
    return g


def format_edge_list(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def _int_field(obj: dict, key: str) -> int:
    val = obj[key]
    if not isinstance(val, int) or isinstance(val, bool):
        raise GraphFormatError("must be an integer", field=key)
    return val


def parse_json_graph(text: str) -> Union[Graph, BlockGraph]:
    """Parse the JSON graph format; returns a :class:`BlockGraph` when ``blocks`` is present."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(exc.msg, line=exc.lineno) from None
    if not isinstance(obj, dict):
        raise GraphFormatError("top level must be an object")
    if "n" not in obj:
        raise GraphFormatError("missing", field="n")
    n = _int_field(obj, "n")
    raw_edges = obj.get("edges", [])
    if not isinstance(raw_edges, list):
        raise GraphFormatError("must be a list", field="edges")
    edges = []
    for idx, e in enumerate(raw_edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise GraphFormatError("each edge must be a pair of integers", field=f"edges[{idx}]")
        edges.append((e[0], e[1]))
    try:
        g = Graph(n, edges)
    except GraphError as exc:
        raise GraphFormatError(str(exc), field="edges") from None
    if "blocks" not in obj or obj["blocks"] is None:
        return g
    blocks = obj["blocks"]
    if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
        raise GraphFormatError("must be a list of index lists", field="blocks")
    try:
        return BlockGraph(g, [list(b) for b in blocks], meta=obj.get("meta") or {})
    except GraphError as exc:
        raise GraphFormatError(str(exc), field="blocks") from None


def graph_to_json(g: Union[Graph, BlockGraph]) -> str:
    """Canonical JSON text: sorted edges, compact separators, trailing newline."""
    obj: dict = {}
    if isinstance(g, BlockGraph):
        obj["n"] = g.graph.n
        obj["edges"] = [list(e) for e in g.graph.sorted_edges()]
        obj["blocks"] = [list(b) for b in g.blocks]
        if g.meta:
            obj["meta"] = g.meta
    else:
        obj["n"] = g.n
        obj["edges"] = [list(e) for e in g.sorted_edges()]
    return json.dumps(obj, separators=(",", ":"), sort_keys=False) + "\n"


def _sniff(text: str, path: Optional[Path]) -> str:
    if path is not None and path.suffix.lower() == ".json":
        return "json"
    return "json" if text.lstrip().startswith("{") else "edgelist"


def read_graph(source: Union[str, Path], fmt: Optional[str] = None) -> Union[Graph, BlockGraph]:
    """Read a graph from a file path. ``fmt`` is ``"json"``, ``"edgelist"`` or sniffed."""
    path = Path(source)
    text = path.read_text()
    fmt = fmt or _sniff(text, path)
    if fmt == "json":
        return parse_json_graph(text)
    if fmt == "edgelist":
        return parse_edge_list(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def write_graph(g: Union[Graph, BlockGraph], dest: Union[str, Path], fmt: Optional[str] = None) -> None:
    path = Path(dest)
    if fmt is None:
        fmt = "json" if path.suffix.lower() == ".json" or isinstance(g, BlockGraph) else "edgelist"
    if fmt == "json":
        path.write_text(graph_to_json(g))
    elif fmt == "edgelist":
        path.write_text(format_edge_list(g.graph if isinstance(g, BlockGraph) else g))
    else:
        raise ValueError(f"unknown graph format {fmt!r}")


def read_subgraph(source: Union[str, Path], host: Graph) -> Subgraph:
    """Read ``{"vertices": [...], "edges": [[u, v], ...]}``.

    If ``edges`` is absent the subgraph induced on ``vertices`` is used;
    if ``vertices`` is absent the endpoints of ``edges`` are used.
    """
    text = Path(source).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(exc.msg, line=exc.lineno) from None
    if not isinstance(obj, dict) or ("vertices" not in obj and "edges" not in obj):
        raise GraphFormatError("subgraph needs 'vertices' and/or 'edges'")
    verts = obj.get("vertices")
    if "edges" not in obj:
        h = Subgraph.induced(host, verts)
    else:
        h = Subgraph.from_edges([tuple(e) for e in obj["edges"]], verts or ())
    h.validate(host)
    return h


def subgraph_to_json(h: Subgraph) -> str:
    return json.dumps({"vertices": sorted(h.vertices), "edges": [list(e) for e in sorted(h.edges)]},
                      separators=(",", ":")) + "\n"
