"""Dense symmetric matrix kernel.

Self-contained linear algebra for the small matrices this package works
with: eigendecomposition (cyclic Jacobi), inversion through the same
factorization, semidefiniteness / Loewner ordering tests, and Schur
complement block inversion. All types are immutable after construction
and every operation is a pure function.

Tolerances are absolute-relative hybrids scaled by max(1, ||M||_max),
which suits adjacency-like matrices with entries of order one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _jacobi
from .errors import DimensionMismatch, SingularMatrix

#: Relative threshold on the smallest |eigenvalue| below which a matrix is
#: treated as singular.
TAU_ZERO = 1e-9


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SymMatrix:
    """Immutable dense real symmetric matrix."""

    data: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.data, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] < 1:
            raise ValueError("matrix dimension must be at least 1")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix is not exactly symmetric")
        object.__setattr__(self, "data", _freeze(a.copy()))

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def max_norm(self) -> float:
        """Largest absolute entry (the max norm used for tolerance scaling)."""
        return float(np.max(np.abs(self.data)))

    def tau_zero(self) -> float:
        """Singularity threshold for this matrix: 1e-9 * max(1, ||M||_max)."""
        return TAU_ZERO * max(1.0, self.max_norm())

    def allclose(self, other: "SymMatrix", tol: float = 1e-9) -> bool:
        """Entrywise comparison within tol * max(1, ||self||_max)."""
        if other.n != self.n:
            return False
        bound = tol * max(1.0, self.max_norm())
        return bool(np.max(np.abs(self.data - other.data)) <= bound)

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        if other.n != self.n:
            raise DimensionMismatch(f"cannot add {self.n}x{self.n} and {other.n}x{other.n}")
        return SymMatrix(self.data + other.data)

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        if other.n != self.n:
            raise DimensionMismatch(f"cannot subtract {other.n}x{other.n} from {self.n}x{self.n}")
        return SymMatrix(self.data - other.data)

    def scaled(self, factor: float) -> "SymMatrix":
        return SymMatrix(self.data * float(factor))

    @staticmethod
    def from_rows(rows: Sequence[Sequence[float]]) -> "SymMatrix":
        return SymMatrix(np.array(rows, dtype=np.float64))

    @staticmethod
    def identity(n: int) -> "SymMatrix":
        return SymMatrix(np.eye(n))

    @staticmethod
    def zeros(n: int) -> "SymMatrix":
        return SymMatrix(np.zeros((n, n)))

    @staticmethod
    def diagonal(values: Iterable[float]) -> "SymMatrix":
        return SymMatrix(np.diag(np.array(list(values), dtype=np.float64)))

    @staticmethod
    def symmetrized(a: np.ndarray) -> "SymMatrix":
        """Wrap a numerically near-symmetric array, averaging the halves."""
        a = np.asarray(a, dtype=np.float64)
        return SymMatrix((a + a.T) / 2.0)


@dataclass(frozen=True)
class Block:
    """Immutable dense rectangular matrix (off-diagonal bridge blocks)."""

    data: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.data, dtype=np.float64)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-d block, got shape {a.shape}")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError("block dimensions must be at least 1x1")
        if not np.all(np.isfinite(a)):
            raise ValueError("block entries must be finite")
        object.__setattr__(self, "data", _freeze(a.copy()))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def T(self) -> "Block":
        return Block(self.data.T)

    def max_norm(self) -> float:
        return float(np.max(np.abs(self.data)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "Block":
        return Block(np.zeros((rows, cols)))

    @staticmethod
    def from_rows(rows: Sequence[Sequence[float]]) -> "Block":
        return Block(np.array(rows, dtype=np.float64))


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues (descending) and orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _freeze(np.asarray(self.values, dtype=np.float64).copy()))
        object.__setattr__(self, "vectors", _freeze(np.asarray(self.vectors, dtype=np.float64).copy()))


def sym_eigen(m: SymMatrix) -> EigenSystem:
    """Full eigendecomposition with eigenvalues sorted descending."""
    values, vectors = _jacobi.eigh_descending(m.data, want_vectors=True)
    return EigenSystem(values, vectors)


def sym_eigenvalues(m: SymMatrix) -> np.ndarray:
    """Eigenvalues only (descending); cheaper than sym_eigen."""
    return _jacobi.eigvals_descending(m.data)


def invert(m: SymMatrix) -> SymMatrix:
    """Inverse through the eigendecomposition V diag(1/lambda) V^T.

    Raises SingularMatrix when the smallest |eigenvalue| falls below the
    tau_zero threshold, so the same factorization serves both the
    singularity test and the inverse.
    """
    eig = sym_eigen(m)
    smallest = float(np.min(np.abs(eig.values)))
    if smallest < m.tau_zero():
        raise SingularMatrix(
            f"matrix is singular within tolerance (min |eigenvalue| = {smallest:.3e})"
        )
    inv = (eig.vectors / eig.values) @ eig.vectors.T
    return SymMatrix.symmetrized(inv)


def is_psd(m: SymMatrix, tol: float = 1e-9) -> bool:
    """Positive semidefiniteness: lambda_min >= -tol * max(1, ||M||_max)."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    values = sym_eigenvalues(m)
    return bool(values[-1] >= -tol * max(1.0, m.max_norm()))


def psd_margin(m: SymMatrix) -> float:
    """Smallest eigenvalue, the quantitative feasibility margin."""
    return float(sym_eigenvalues(m)[-1])


def loewner_leq(a: SymMatrix, b: SymMatrix, tol: float = 1e-9) -> bool:
    """Loewner partial order: a <= b iff b - a is positive semidefinite."""
    if a.n != b.n:
        raise DimensionMismatch(f"cannot order {a.n}x{a.n} against {b.n}x{b.n}")
    return is_psd(b - a, tol)


def _check_block_dims(a: SymMatrix, b: SymMatrix, h: Block) -> None:
    if h.rows != a.n or h.cols != b.n:
        raise DimensionMismatch(
            f"bridge block is {h.rows}x{h.cols}, expected {a.n}x{b.n}"
        )


def assemble(a: SymMatrix, b: SymMatrix, h: Block) -> SymMatrix:
    """Stack [[A, H], [H^T, B]] into one symmetric matrix."""
    _check_block_dims(a, b, h)
    n, m = a.n, b.n
    c = np.zeros((n + m, n + m))
    c[:n, :n] = a.data
    c[:n, n:] = h.data
    c[n:, :n] = h.data.T
    c[n:, n:] = b.data
    return SymMatrix(c)


def schur_complement(a: SymMatrix, b: SymMatrix, h: Block) -> SymMatrix:
    """S = A - H B^-1 H^T (the pivot block of the block inverse)."""
    _check_block_dims(a, b, h)
    b_inv = invert(b)
    quad = h.data @ b_inv.data @ h.data.T
    return SymMatrix.symmetrized(a.data - quad)


def block_inverse(a: SymMatrix, b: SymMatrix, h: Block) -> SymMatrix:
    """Inverse of [[A, H], [H^T, B]] assembled from Schur complement blocks.

    Requires A, B and S = A - H B^-1 H^T all nonsingular.
    """
    _check_block_dims(a, b, h)
    invert(a)  # precondition check only; the formula uses S^-1 and B^-1
    b_inv = invert(b)
    s_inv = invert(schur_complement(a, b, h))
    n, m = a.n, b.n
    hb = h.data @ b_inv.data
    upper_right = -s_inv.data @ hb
    lower_right = b_inv.data + hb.T @ s_inv.data @ hb
    c = np.zeros((n + m, n + m))
    c[:n, :n] = s_inv.data
    c[:n, n:] = upper_right
    c[n:, :n] = upper_right.T
    c[n:, n:] = (lower_right + lower_right.T) / 2.0
    return SymMatrix(c)
