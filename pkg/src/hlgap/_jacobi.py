"""Cyclic Jacobi rotation kernel for dense symmetric eigenproblems.

One implementation, two execution modes: the sweep routine is written in
njit-able Python and compiled with numba when available (no fastmath, so
the interpreted fallback produces bit-identical results). Matrices here
are tiny (<= ~20x20), where Jacobi converges unconditionally and keeps
the whole numerical path free of external solver state.
"""

from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None


def _jacobi_sweeps(a, v, want_vectors, tol_off, max_sweeps):
    # Rotates a in place until the off-diagonal Frobenius norm drops below
    # tol_off; accumulates rotations into v when want_vectors is set.
    # Returns the number of sweeps used, or -1 if the cap was exceeded.
    n = a.shape[0]
    sweeps = 0
    while sweeps <= max_sweeps:
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        if math.sqrt(2.0 * off) <= tol_off:
            return sweeps
        if sweeps == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                a[p, p] = a[p, p] - t * apq
                a[q, q] = a[q, q] + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * akq
                        a[p, k] = a[k, p]
                        a[k, q] = s * akp + c * akq
                        a[q, k] = a[k, q]
                if want_vectors:
                    for k in range(n):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = c * vkp - s * vkq
                        v[k, q] = s * vkp + c * vkq
        sweeps += 1
    return -1


if njit is not None:
    _jacobi_sweeps = njit(cache=True, nogil=True)(_jacobi_sweeps)

#: Relative off-diagonal convergence threshold (times the Frobenius norm).
OFF_DIAGONAL_TOL = 1e-12
#: Sweep cap; cyclic Jacobi on symmetric input converges far earlier.
MAX_SWEEPS = 100


def eigh_descending(matrix: np.ndarray, want_vectors: bool = True):
    """Eigendecompose a symmetric matrix, eigenvalues sorted descending.

    Returns ``(values, vectors)`` with vectors as orthonormal columns, or
    ``(values, None)`` when ``want_vectors`` is false. Raises RuntimeError
    if the sweep cap is exceeded (cannot happen for symmetric input short
    of NaN poisoning; treated as an internal error, not a domain error).
    """
    a = np.array(matrix, dtype=np.float64, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.float64)
    fro = math.sqrt(float(np.sum(a * a)))
    sweeps = _jacobi_sweeps(a, v, want_vectors, OFF_DIAGONAL_TOL * fro, MAX_SWEEPS)
    if sweeps < 0:
        raise RuntimeError("Jacobi iteration cap exceeded (internal error)")
    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    if not want_vectors:
        return values, None
    return values, v[:, order]


def eigvals_descending(matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues only, sorted descending."""
    return eigh_descending(matrix, want_vectors=False)[0]
