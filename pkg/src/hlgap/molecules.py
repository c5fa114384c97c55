"""Built-in molecular graphs.

Six-vertex benzene and fulvene skeletons, their weighted voltage variants,
and pyridine. The weighted variants carry the gauge diagonals used by the
bundled benchmark table; the unweighted ones use the identity gauge.

Pyridine note: the quoted gauge D = diag(sqrt(h), k/sqrt(h), 1, 1, 1,
k/sqrt(h)) with h = 0.5, k = 0.8 gives the heteroatom loop weight h and
C-N bond weight k, but the two ring C-C bonds adjacent to positions 2 and
6 come out as k/sqrt(h) ~ 1.1314 rather than the standard 1. The builtin
reproduces that gauge verbatim rather than patching it.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import UnknownBuiltin
from .graphs import VoltageDecomposition, WeightedGraph
from .symmat import SymMatrix

_BENZENE_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1))
_FULVENE_EDGES = ((1, 2), (1, 5), (2, 3), (3, 4), (4, 5), (4, 6))

_PYRIDINE_H_N = 0.5
_PYRIDINE_K_CN = 0.8


def _binary(n: int, edges, loops=()) -> SymMatrix:
    a = np.zeros((n, n))
    for i, j in edges:
        a[i - 1, j - 1] = 1.0
        a[j - 1, i - 1] = 1.0
    for i in loops:
        a[i - 1, i - 1] = 1.0
    return SymMatrix(a)


def _pyridine_gauge() -> tuple[float, ...]:
    root_h = math.sqrt(_PYRIDINE_H_N)
    k_over = _PYRIDINE_K_CN / root_h
    return (root_h, k_over, 1.0, 1.0, 1.0, k_over)


_REGISTRY: dict[str, tuple[SymMatrix, tuple[float, ...]]] = {
    "benzene": (_binary(6, _BENZENE_EDGES), (1.0,) * 6),
    "fulvene": (_binary(6, _FULVENE_EDGES), (1.0,) * 6),
    "pyridine": (_binary(6, _BENZENE_EDGES, loops=(1,)), _pyridine_gauge()),
    "benzene-weighted": (_binary(6, _BENZENE_EDGES), (1.0, 1.0, 2.0, 1.0, 1.0, 2.0)),
    "fulvene-weighted": (_binary(6, _FULVENE_EDGES), (1.0, 1.0, 2.0, 0.5, 2.0, 4.0)),
}

_ALIASES = {
    "B0": "benzene-weighted",
    "F0": "fulvene-weighted",
    "B0bar": "benzene",
    "F0bar": "fulvene",
    "benzene-bar": "benzene",
    "fulvene-bar": "fulvene",
}

BUILTIN_NAMES = tuple(sorted(_REGISTRY))
BUILTIN_ALIASES = dict(_ALIASES)


def resolve_builtin_name(name: str) -> str:
    canonical = _ALIASES.get(name, name)
    if canonical not in _REGISTRY:
        known = ", ".join(list(BUILTIN_NAMES) + sorted(_ALIASES))
        raise UnknownBuiltin(f"unknown builtin graph {name!r} (known: {known})")
    return canonical


def builtin_voltage(name: str) -> VoltageDecomposition:
    """Voltage decomposition (binary pattern + gauge diagonal) of a builtin."""
    binary, d = _REGISTRY[resolve_builtin_name(name)]
    return VoltageDecomposition(binary, np.array(d))


def builtin_graph(name: str) -> WeightedGraph:
    """Weighted adjacency of a builtin graph."""
    return builtin_voltage(name).weighted()
