"""Weighted graphs, voltage decompositions, spectra and HOMO-LUMO quantities.

Vertices are 1-based in every public interface; adjacency diagonals encode
loops. A graph is a voltage graph when its weighted adjacency factors as
A = D Abar D with Abar binary and D a nonzero diagonal gauge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    NoNegativeEigenvalue,
    NonBinaryInput,
    NoPositiveEigenvalue,
    NotAPermutation,
    NotVoltageGraph,
    SingularMatrix,
    ZeroDiagonal,
    ZeroEigenvalue,
)
from .symmat import SymMatrix, invert, sym_eigenvalues


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(str(i + 1) for i in range(n))


@dataclass(frozen=True)
class WeightedGraph:
    """Vertex-labeled undirected graph with real edge weights and loops."""

    adjacency: SymMatrix
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", _default_labels(self.adjacency.n))
        elif len(self.labels) != self.adjacency.n:
            raise ValueError(
                f"{len(self.labels)} labels for {self.adjacency.n} vertices"
            )

    @property
    def n(self) -> int:
        return self.adjacency.n

    @staticmethod
    def from_rows(rows: Sequence[Sequence[float]], labels: Sequence[str] = ()) -> "WeightedGraph":
        return WeightedGraph(SymMatrix.from_rows(rows), tuple(labels))


@dataclass(frozen=True)
class VoltageDecomposition:
    """Binary adjacency plus nonzero diagonal gauge with A = D Abar D."""

    binary: SymMatrix
    d: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.d, dtype=np.float64).copy()
        if d.shape != (self.binary.n,):
            raise ValueError("gauge diagonal length does not match the adjacency")
        if np.any(d == 0.0) or not np.all(np.isfinite(d)):
            raise ZeroDiagonal("gauge diagonal entries must be finite and nonzero")
        d.flags.writeable = False
        object.__setattr__(self, "d", d)

    def weighted(self) -> WeightedGraph:
        return from_voltage(self.binary, self.d)


@dataclass(frozen=True)
class HomoLumo:
    """HOMO/LUMO eigenvalues under the half-filling index convention."""

    lambda_homo: float
    lambda_lumo: float
    closed_shell: bool


def from_voltage(binary: SymMatrix, d: Sequence[float]) -> WeightedGraph:
    """Weighted graph with adjacency D Abar D from a binary pattern and gauge."""
    bd = binary.data
    if not np.all((bd == 0.0) | (bd == 1.0)):
        raise NonBinaryInput("voltage pattern must have entries in {0, 1}")
    dv = np.asarray(list(d), dtype=np.float64)
    if dv.shape != (binary.n,):
        raise ZeroDiagonal(f"gauge diagonal has length {dv.shape[0]}, expected {binary.n}")
    if np.any(dv == 0.0) or not np.all(np.isfinite(dv)):
        raise ZeroDiagonal("gauge diagonal entries must be finite and nonzero")
    return WeightedGraph(SymMatrix(np.outer(dv, dv) * bd))


def recover_voltage(graph: WeightedGraph, tol: float = 1e-9) -> VoltageDecomposition:
    """Recover a (binary, D) voltage decomposition of a weighted graph.

    Spanning-tree gauge fixing per connected component, solved in the
    log-magnitude domain with sign propagation along tree edges. Bipartite
    loop-free components keep a free scale, anchored to D_root = +1; loops
    and odd co-tree edges pin the scale instead. Every edge and loop is
    verified against the reconstruction within tol; failure raises
    NotVoltageGraph.
    """
    a = graph.adjacency.data
    n = graph.n
    pattern = a != 0.0
    off_pattern = pattern.copy()
    np.fill_diagonal(off_pattern, False)
    scale = max(1.0, graph.adjacency.max_norm())

    log_off = np.zeros(n)  # gauge-independent log-magnitude offset
    parity = np.ones(n)  # +1 / -1 multiplier of the free log anchor t
    sign = np.ones(n)
    d = np.zeros(n)
    seen = np.zeros(n, dtype=bool)

    for root in range(n):
        if seen[root]:
            continue
        component = [root]
        seen[root] = True
        log_off[root] = 0.0
        parity[root] = 1.0
        sign[root] = 1.0
        tree = set()
        queue = [root]
        while queue:
            i = queue.pop(0)
            for j in np.flatnonzero(off_pattern[i]):
                j = int(j)
                if not seen[j]:
                    seen[j] = True
                    log_off[j] = math.log(abs(a[i, j])) - log_off[i]
                    parity[j] = -parity[i]
                    sign[j] = math.copysign(1.0, a[i, j]) * sign[i]
                    tree.add((min(i, j), max(i, j)))
                    component.append(j)
                    queue.append(j)

        # Anchor equations pin the free scale: loops need D_i^2 = w_ii and
        # odd co-tree edges make the parity multipliers fail to cancel.
        anchor = None
        for i in component:
            if pattern[i, i]:
                if a[i, i] <= 0.0:
                    raise NotVoltageGraph(
                        f"loop weight at vertex {i + 1} is not positive"
                    )
                anchor = (0.5 * math.log(a[i, i]) - log_off[i]) / parity[i]
                break
        if anchor is None:
            for i in component:
                for j in np.flatnonzero(off_pattern[i]):
                    j = int(j)
                    if j <= i or (i, j) in tree:
                        continue
                    e = parity[i] + parity[j]
                    if e != 0.0:
                        anchor = (math.log(abs(a[i, j])) - log_off[i] - log_off[j]) / e
                        break
                if anchor is not None:
                    break
        t = anchor if anchor is not None else 0.0
        for i in component:
            d[i] = sign[i] * math.exp(log_off[i] + parity[i] * t)

    binary = SymMatrix(pattern.astype(np.float64))
    reconstructed = np.outer(d, d) * binary.data
    worst = float(np.max(np.abs(reconstructed - a)))
    if worst > tol * scale:
        raise NotVoltageGraph(
            f"no consistent gauge diagonal exists (worst edge defect {worst:.3e})"
        )
    return VoltageDecomposition(binary, d)


def spectrum(graph: WeightedGraph) -> np.ndarray:
    """Adjacency eigenvalues sorted descending."""
    return sym_eigenvalues(graph.adjacency)


def _split_spectrum(values: np.ndarray, tau: float) -> tuple[np.ndarray, np.ndarray]:
    if np.min(np.abs(values)) <= tau:
        raise ZeroEigenvalue(
            "graph is not invertible: an eigenvalue sits within the zero threshold"
        )
    return values[values > tau], values[values < -tau]


def spectral_gap(graph: WeightedGraph) -> float:
    """Gap between the smallest positive and largest negative eigenvalue."""
    values = spectrum(graph)
    positive, negative = _split_spectrum(values, graph.adjacency.tau_zero())
    if positive.size == 0:
        raise NoPositiveEigenvalue("spectrum has no positive eigenvalue")
    if negative.size == 0:
        raise NoNegativeEigenvalue("spectrum has no negative eigenvalue")
    return float(positive[-1] - negative[0])


def homo_lumo(graph: WeightedGraph) -> HomoLumo:
    """HOMO/LUMO pair: k = n/2 (n even) or (n+1)/2 (n odd) on the
    descending spectrum; for odd n both point at the same eigenvalue."""
    values = spectrum(graph)
    n = graph.n
    if n % 2 == 0:
        k = n // 2
        lam_homo = float(values[k - 1])
        lam_lumo = float(values[k])
    else:
        k = (n + 1) // 2
        lam_homo = float(values[k - 1])
        lam_lumo = lam_homo
    return HomoLumo(lam_homo, lam_lumo, closed_shell=lam_homo > 0.0 > lam_lumo)


def huckel_energies(graph: WeightedGraph, alpha: float, beta: float) -> np.ndarray:
    """Orbital energies E_k = alpha + beta * lambda_k over the spectrum."""
    return alpha + beta * spectrum(graph)


def is_arbitrarily_bridgeable(
    graph: WeightedGraph, vertices: Sequence[int], tol: float = 1e-9
) -> bool:
    """True when the inverse adjacency vanishes on the given vertex block.

    Vertices are 1-based. The zero principal block of A^-1 is exactly the
    condition that makes H B^-1 H^T collapse for any bridge supported there.
    """
    idx = _vertex_indices(graph.n, vertices)
    try:
        inv = invert(graph.adjacency)
    except SingularMatrix as exc:
        raise ZeroEigenvalue(str(exc)) from exc
    block = inv.data[np.ix_(idx, idx)]
    return bool(np.max(np.abs(block)) <= tol)


def _vertex_indices(n: int, vertices: Sequence[int]) -> list[int]:
    idx = []
    for v in vertices:
        if not isinstance(v, (int, np.integer)) or not 1 <= int(v) <= n:
            raise ValueError(f"vertex {v!r} is not in 1..{n}")
        idx.append(int(v) - 1)
    if len(set(idx)) != len(idx):
        raise ValueError("vertex set contains duplicates")
    return idx


def permute(graph: WeightedGraph, pi: Sequence[int]) -> WeightedGraph:
    """Relabel vertices: vertex i moves to position pi[i-1] (1-based)."""
    n = graph.n
    images = list(pi)
    if sorted(images) != list(range(1, n + 1)):
        raise NotAPermutation(f"{pi!r} is not a permutation of 1..{n}")
    dest = np.array(images, dtype=int) - 1
    new_adj = np.zeros_like(graph.adjacency.data)
    new_adj[np.ix_(dest, dest)] = graph.adjacency.data
    new_labels = [""] * n
    for i, p in enumerate(dest):
        new_labels[p] = graph.labels[i]
    return WeightedGraph(SymMatrix(new_adj), tuple(new_labels))


def binary_degrees(graph: WeightedGraph) -> np.ndarray:
    """Per-vertex count of off-diagonal nonzero adjacency entries (loops
    excluded)."""
    off = graph.adjacency.data != 0.0
    np.fill_diagonal(off, False)  # off is a fresh boolean array
    return off.sum(axis=1).astype(int)
