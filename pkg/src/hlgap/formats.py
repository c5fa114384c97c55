"""Graph and bridge file formats plus DOT export.

Graph JSON contract (1-based vertices, i < j, finite nonzero weights):

    {"n": 6, "labels": ["1", ...], "edges": [[1, 2, 1.0], ...],
     "loops": [[1, 0.5], ...]}

Bridge JSON contract (edges list the set entries of the binary pattern):

    {"k_B": 2, "bridge_set": [1, 3], "edges": [[6, 3], ...]}

Graph sources given as "builtin:NAME" resolve through the builtin registry.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .bridge import BridgeMatrix, BridgedGraph
from .errors import FormatError
from .graphs import WeightedGraph
from .molecules import builtin_graph
from .symmat import SymMatrix


def parse_graph_json(obj: dict) -> WeightedGraph:
    """Validate and materialize a graph from its JSON object."""
    if not isinstance(obj, dict):
        raise FormatError("graph JSON must be an object")
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise FormatError('"n" must be a positive integer')
    labels = obj.get("labels")
    if labels is not None:
        if (
            not isinstance(labels, list)
            or len(labels) != n
            or not all(isinstance(s, str) for s in labels)
        ):
            raise FormatError(f'"labels" must be a list of {n} strings')
    a = np.zeros((n, n))
    edges = obj.get("edges", [])
    if not isinstance(edges, list):
        raise FormatError('"edges" must be a list')
    for entry in edges:
        if not isinstance(entry, list) or len(entry) != 3:
            raise FormatError(f"edge {entry!r} must be [i, j, w]")
        i, j, w = entry
        if not (isinstance(i, int) and isinstance(j, int)):
            raise FormatError(f"edge {entry!r} has non-integer endpoints")
        if not (1 <= i < j <= n):
            raise FormatError(f"edge {entry!r} must satisfy 1 <= i < j <= n")
        if not isinstance(w, (int, float)) or isinstance(w, bool):
            raise FormatError(f"edge {entry!r} has a non-numeric weight")
        w = float(w)
        if not np.isfinite(w) or w == 0.0:
            raise FormatError(f"edge {entry!r} weight must be finite and nonzero")
        if a[i - 1, j - 1] != 0.0:
            raise FormatError(f"duplicate edge ({i}, {j})")
        a[i - 1, j - 1] = w
        a[j - 1, i - 1] = w
    loops = obj.get("loops", [])
    if not isinstance(loops, list):
        raise FormatError('"loops" must be a list')
    for entry in loops:
        if not isinstance(entry, list) or len(entry) != 2:
            raise FormatError(f"loop {entry!r} must be [i, w]")
        i, w = entry
        if not isinstance(i, int) or not 1 <= i <= n:
            raise FormatError(f"loop {entry!r} vertex out of range")
        if not isinstance(w, (int, float)) or isinstance(w, bool):
            raise FormatError(f"loop {entry!r} has a non-numeric weight")
        w = float(w)
        if not np.isfinite(w) or w == 0.0:
            raise FormatError(f"loop {entry!r} weight must be finite and nonzero")
        if a[i - 1, i - 1] != 0.0:
            raise FormatError(f"duplicate loop at vertex {i}")
        a[i - 1, i - 1] = w
    return WeightedGraph(SymMatrix(a), tuple(labels) if labels else ())


def graph_to_json(graph: WeightedGraph) -> dict:
    """Graph JSON object; float weights survive a round trip bit-exactly."""
    a = graph.adjacency.data
    n = graph.n
    edges = [
        [i + 1, j + 1, float(a[i, j])]
        for i in range(n)
        for j in range(i + 1, n)
        if a[i, j] != 0.0
    ]
    out: dict = {"n": n, "labels": list(graph.labels), "edges": edges}
    loops = [[i + 1, float(a[i, i])] for i in range(n) if a[i, i] != 0.0]
    if loops:
        out["loops"] = loops
    return out


def load_graph(source: str) -> WeightedGraph:
    """Load a graph from "builtin:NAME" or a JSON file path."""
    if source.startswith("builtin:"):
        return builtin_graph(source[len("builtin:") :])
    text = Path(source).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: {exc}") from exc
    return parse_graph_json(obj)


def parse_bridge_json(obj: dict, n: int, m: int) -> tuple[tuple[int, ...], np.ndarray]:
    """Validate a bridge object against graph sizes; returns (bridge_set,
    full n x m binary pattern)."""
    if not isinstance(obj, dict):
        raise FormatError("bridge JSON must be an object")
    bridge_set = obj.get("bridge_set")
    if (
        not isinstance(bridge_set, list)
        or not bridge_set
        or not all(isinstance(b, int) for b in bridge_set)
    ):
        raise FormatError('"bridge_set" must be a nonempty list of integers')
    if len(set(bridge_set)) != len(bridge_set):
        raise FormatError('"bridge_set" has duplicates')
    if not all(1 <= b <= m for b in bridge_set):
        raise FormatError(f'"bridge_set" must lie within 1..{m}')
    k_b = obj.get("k_B")
    if k_b is not None and k_b != len(bridge_set):
        raise FormatError(f'"k_B" = {k_b} but the bridge set has {len(bridge_set)} vertices')
    htilde = np.zeros((n, m))
    edges = obj.get("edges", [])
    if not isinstance(edges, list):
        raise FormatError('"edges" must be a list')
    allowed = set(bridge_set)
    for entry in edges:
        if not isinstance(entry, list) or len(entry) != 2:
            raise FormatError(f"bridge edge {entry!r} must be [a_vertex, b_vertex]")
        i, j = entry
        if not (isinstance(i, int) and isinstance(j, int)):
            raise FormatError(f"bridge edge {entry!r} has non-integer endpoints")
        if not 1 <= i <= n:
            raise FormatError(f"bridge edge {entry!r}: first vertex out of 1..{n}")
        if j not in allowed:
            raise FormatError(f"bridge edge {entry!r}: second vertex not in the bridge set")
        if htilde[i - 1, j - 1] != 0.0:
            raise FormatError(f"duplicate bridge edge ({i}, {j})")
        htilde[i - 1, j - 1] = 1.0
    return tuple(bridge_set), htilde


def load_bridge(path: str, n: int, m: int) -> tuple[tuple[int, ...], np.ndarray]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    return parse_bridge_json(obj, n, m)


def bridge_to_json(bm: BridgeMatrix) -> dict:
    ht = bm.htilde.data
    edges = [
        [i + 1, j + 1]
        for i in range(ht.shape[0])
        for j in range(ht.shape[1])
        if ht[i, j] != 0.0
    ]
    return {"k_B": bm.k_b, "bridge_set": list(bm.bridge_set), "edges": edges}


def _dot_body(a: np.ndarray, labels: tuple[str, ...], bridge_rows: int = 0) -> list[str]:
    n = a.shape[0]
    lines = []
    for i in range(n):
        shade = ' style=filled fillcolor="#dce6f2"' if bridge_rows and i >= bridge_rows else ""
        lines.append(f'  v{i + 1} [label="{labels[i]}"{shade}];')
    for i in range(n):
        for j in range(i, n):
            if a[i, j] != 0.0:
                style = ""
                if bridge_rows and i < bridge_rows <= j:
                    style = " style=dashed"
                lines.append(f'  v{i + 1} -- v{j + 1} [label="{a[i, j]:.6g}"{style}];')
    return lines


def graph_to_dot(graph: WeightedGraph) -> str:
    """DOT text: one node per vertex, one edge per nonzero upper-triangle
    entry, weights printed to 6 significant digits."""
    lines = ["graph G {", "  node [shape=circle];"]
    lines += _dot_body(graph.adjacency.data, graph.labels)
    lines.append("}")
    return "\n".join(lines) + "\n"


def bridged_to_dot(bridged: BridgedGraph) -> str:
    """DOT text of a bridged graph with the second part shaded and bridge
    edges dashed."""
    g = bridged.as_graph()
    lines = ["graph G {", "  node [shape=circle];"]
    lines += _dot_body(g.adjacency.data, g.labels, bridge_rows=bridged.graph_a.n)
    lines.append("}")
    return "\n".join(lines) + "\n"
