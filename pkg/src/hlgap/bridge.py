"""Bridged graph construction over a bipartite connector.

Two voltage graphs are joined through a rectangular block H supported on a
bridge vertex set of the second graph. When the second graph's inverse
adjacency vanishes on that set, H B^-1 H^T collapses to zero, the Schur
complement equals A, and the bridged inverse takes a closed block form.

Bridge sets are arbitrary vertex subsets of the second graph; internally
they play the role of the leading block after a conceptual permutation, so
the column-support requirement is stated against the set rather than a
position range.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    ColumnConstraintViolated,
    NonBinaryInput,
    NotBridgeable,
    SingularMatrix,
    ZeroEigenvalue,
)
from .graphs import WeightedGraph, _vertex_indices, is_arbitrarily_bridgeable
from .symmat import Block, SymMatrix, assemble, invert


@dataclass(frozen=True)
class BridgeMatrix:
    """Bipartite bridge: binary pattern, weighted block, and bridge set.

    Columns are indexed by the second graph's own vertex numbering; every
    nonzero column must belong to the bridge set.
    """

    htilde: Block
    h: Block
    bridge_set: tuple[int, ...]

    def __post_init__(self):
        if self.htilde.data.shape != self.h.data.shape:
            raise ValueError("binary and weighted blocks differ in shape")
        if not set(self.bridge_set) <= set(range(1, self.htilde.cols + 1)):
            raise ValueError("bridge set exceeds the column range")
        allowed = np.zeros(self.htilde.cols, dtype=bool)
        allowed[[b - 1 for b in self.bridge_set]] = True
        if np.any(self.htilde.data[:, ~allowed] != 0.0):
            raise ColumnConstraintViolated(
                "bridge pattern has support outside the bridge set"
            )

    @property
    def k_b(self) -> int:
        return len(self.bridge_set)

    @classmethod
    def from_binary(
        cls,
        htilde: Block | np.ndarray,
        da: Sequence[float],
        db: Sequence[float],
        bridge_set: Sequence[int],
    ) -> "BridgeMatrix":
        """Weight a binary pattern with the two gauge diagonals.

        ``htilde`` is either a full n x m block or a compact n x k_B block
        whose columns follow the bridge set order.
        """
        ht = htilde.data if isinstance(htilde, Block) else np.asarray(htilde, dtype=np.float64)
        if not np.all((ht == 0.0) | (ht == 1.0)):
            raise NonBinaryInput("bridge pattern must have entries in {0, 1}")
        da = np.asarray(list(da), dtype=np.float64)
        db = np.asarray(list(db), dtype=np.float64)
        bset = tuple(int(b) for b in bridge_set)
        if ht.shape[1] == len(bset) and len(bset) != db.shape[0]:
            full = np.zeros((ht.shape[0], db.shape[0]))
            full[:, [b - 1 for b in bset]] = ht
            ht = full
        if ht.shape != (da.shape[0], db.shape[0]):
            raise ValueError(
                f"bridge pattern is {ht.shape}, expected {da.shape[0]}x{db.shape[0]}"
            )
        h = da[:, None] * ht * db[None, :]
        return cls(Block(ht), Block(h), bset)


@dataclass(frozen=True)
class BridgedGraph:
    """Assembled bridged graph with its provenance."""

    c: SymMatrix
    graph_a: WeightedGraph
    graph_b: WeightedGraph
    bridge: BridgeMatrix

    def as_graph(self) -> WeightedGraph:
        labels = tuple(f"A{i + 1}" for i in range(self.graph_a.n)) + tuple(
            f"B{j + 1}" for j in range(self.graph_b.n)
        )
        return WeightedGraph(self.c, labels)


def bipartite_adjacency(h: Block) -> SymMatrix:
    """Adjacency [[0, H], [H^T, 0]] of the bipartite connector graph."""
    n, m = h.rows, h.cols
    a = np.zeros((n + m, n + m))
    a[:n, n:] = h.data
    a[n:, :n] = h.data.T
    return SymMatrix(a)


def check_column_constraint(htilde: Block, k_b: int) -> bool:
    """True iff every entry in columns k_b+1..m is zero (leading-block
    convention, for bridge sets already permuted to the front)."""
    if k_b > htilde.cols:
        raise ValueError(f"k_B = {k_b} exceeds {htilde.cols} columns")
    return bool(np.all(htilde.data[:, k_b:] == 0.0))


def build_bridged(
    ga: WeightedGraph, gb: WeightedGraph, bm: BridgeMatrix, tol: float = 1e-9
) -> BridgedGraph:
    """Assemble the bridged graph, checking bridgeability of gb first."""
    if bm.h.rows != ga.n or bm.h.cols != gb.n:
        raise ValueError(
            f"bridge block is {bm.h.rows}x{bm.h.cols}, expected {ga.n}x{gb.n}"
        )
    if not is_arbitrarily_bridgeable(gb, bm.bridge_set, tol):
        raise NotBridgeable(
            f"second graph is not arbitrarily bridgeable over {bm.bridge_set}"
        )
    c = assemble(ga.adjacency, gb.adjacency, bm.h)
    return BridgedGraph(c, ga, gb, bm)


def verify_null_quadratic(gb: WeightedGraph, bm: BridgeMatrix, tol: float = 1e-10) -> bool:
    """Check that H B^-1 H^T vanishes for this bridge."""
    try:
        b_inv = invert(gb.adjacency)
    except SingularMatrix as exc:
        raise ZeroEigenvalue(str(exc)) from exc
    quad = bm.h.data @ b_inv.data @ bm.h.data.T
    scale = max(1.0, bm.h.max_norm() ** 2 * b_inv.max_norm())
    return bool(np.max(np.abs(quad)) <= tol * scale)


def bridged_inverse(
    ga: WeightedGraph, gb: WeightedGraph, bm: BridgeMatrix, tol: float = 1e-9
) -> SymMatrix:
    """Closed-form inverse of the bridged adjacency.

    With the Schur complement collapsing to A, the blocks are A^-1,
    -A^-1 H B^-1 and B^-1 + B^-1 H^T A^-1 H B^-1; the upper-left block is
    exactly the assembled A^-1.
    """
    build_bridged(ga, gb, bm, tol)  # runs the shared precondition checks
    n, m = ga.n, gb.n
    a_inv = invert(ga.adjacency)
    b_inv = invert(gb.adjacency)
    hb = bm.h.data @ b_inv.data
    upper_right = -a_inv.data @ hb
    lower_right = b_inv.data + hb.T @ a_inv.data @ hb
    c = np.zeros((n + m, n + m))
    c[:n, :n] = a_inv.data
    c[:n, n:] = upper_right
    c[n:, :n] = upper_right.T
    c[n:, n:] = (lower_right + lower_right.T) / 2.0
    return SymMatrix(c)


def congruence_factors(gb: WeightedGraph, bm: BridgeMatrix) -> tuple[np.ndarray, np.ndarray]:
    """The unit-triangular pair (Q, Z) with Z = Q^-1 that block-diagonalizes
    the bridged inverse: Q = [[I, -H B^-1], [0, I]], Z = [[I, H B^-1], [0, I]]."""
    n, m = bm.h.rows, bm.h.cols
    hb = bm.h.data @ invert(gb.adjacency).data
    q = np.eye(n + m)
    z = np.eye(n + m)
    q[:n, n:] = -hb
    z[:n, n:] = hb
    return q, z
