"""Semidefinite representations of the spectral gap and their certificates.

The gap of an invertible adjacency C equals the optimal value of

    max  mu + eta   s.t.  mu C^-1 <= I,  -eta C^-1 <= I,  mu, eta >= 0

in the Loewner order. Because the eigenvalues of C^-1 are the reciprocals
of those of C, the optimum is available analytically: mu* is the smallest
positive eigenvalue of C and eta* the negated largest negative one.
``gap_analytic`` takes that route; ``gap_bisection`` deliberately does
not, locating mu* and eta* purely through semidefinite feasibility probes
on C^-1 so the two can serve as independent cross-checks.

For bridged graphs the same program congruence-transforms into a pair of
explicit block matrix inequalities in A^-1, B^-1 and H B^-1, which
``certify_bridged_lmi`` evaluates with quantitative margins.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bridge import BridgeMatrix
from .errors import (
    DefiniteMatrix,
    InfeasiblePoint,
    NonBinaryInput,
    SingularMatrix,
    ZeroEigenvalue,
)
from .graphs import WeightedGraph
from .symmat import Block, SymMatrix, invert, loewner_leq, psd_margin, sym_eigenvalues

#: Relative feasibility slack on certificate margins.
MARGIN_TOL = 1e-8


@dataclass(frozen=True)
class GapCertificate:
    """Claimed gap value mu + eta with per-block feasibility margins."""

    mu: float
    eta: float
    gap: float
    margins: tuple[float, ...]

    def __post_init__(self):
        if self.mu < 0.0 or self.eta < 0.0:
            raise ValueError("mu and eta must be nonnegative")
        if self.gap != self.mu + self.eta:
            raise ValueError("gap must equal mu + eta")

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "eta": self.eta,
            "gap": self.gap,
            "margins": list(self.margins),
        }


def extreme_signed_eigenvalues(values: np.ndarray, tau: float) -> tuple[float, float]:
    """(smallest positive, largest negative) of a descending eigenvalue list.

    Raises ZeroEigenvalue when any |eigenvalue| sits within tau and
    DefiniteMatrix when the spectrum does not change sign.
    """
    if float(np.min(np.abs(values))) <= tau:
        raise ZeroEigenvalue("matrix has an eigenvalue within the zero threshold")
    positive = values[values > tau]
    negative = values[values < -tau]
    if positive.size == 0 or negative.size == 0:
        raise DefiniteMatrix("spectrum does not change sign; the gap is undefined")
    return float(positive[-1]), float(negative[0])


def gap_analytic(c: SymMatrix) -> GapCertificate:
    """Exact gap from the spectrum of C.

    mu = 1/lambda_max(C^-1) is the smallest positive eigenvalue of C and
    eta = -1/lambda_min(C^-1) the negated largest negative one; both are
    read off a single eigendecomposition of C. Margins are the smallest
    eigenvalues of I - mu C^-1 and I + eta C^-1, zero at this optimum.
    """
    values = sym_eigenvalues(c)
    lam_plus, lam_minus = extreme_signed_eigenvalues(values, c.tau_zero())
    mu = lam_plus
    eta = -lam_minus
    margin_mu = float(np.min(1.0 - mu / values))
    margin_eta = float(np.min(1.0 + eta / values))
    return GapCertificate(mu, eta, mu + eta, (margin_mu, margin_eta))


def _gershgorin_bounds(c: SymMatrix) -> tuple[float, float]:
    abs_off = np.abs(c.data).sum(axis=1) - np.abs(np.diag(c.data))
    diag = np.diag(c.data)
    return float(np.max(diag + abs_off)), float(np.min(diag - abs_off))


def gap_bisection(c: SymMatrix, tol: float = 1e-8) -> GapCertificate:
    """Gap located by bisection over Loewner feasibility of mu C^-1 <= I.

    Pure feasibility oracle: never reads eigenvalues of C itself. The
    bracket upper ends are Gershgorin row-sum bounds on the extreme
    eigenvalues of C plus one, which strictly dominate the optima.
    """
    tol = max(float(tol), 1e-12)
    try:
        c_inv = invert(c)
    except SingularMatrix as exc:
        raise ZeroEigenvalue(str(exc)) from exc
    identity = SymMatrix.identity(c.n)
    probe_tol = 1e-12
    if loewner_leq(c_inv, SymMatrix.zeros(c.n), probe_tol) or loewner_leq(
        SymMatrix.zeros(c.n), c_inv, probe_tol
    ):
        raise DefiniteMatrix("spectrum does not change sign; the gap is undefined")
    upper, lower = _gershgorin_bounds(c)

    def locate(direction: float, bracket_hi: float) -> float:
        lo, hi = 0.0, bracket_hi
        for _ in range(60):
            if hi - lo <= tol:
                break
            mid = (lo + hi) / 2.0
            if loewner_leq(c_inv.scaled(direction * mid), identity, probe_tol):
                lo = mid
            else:
                hi = mid
        return lo

    mu = locate(1.0, max(upper, 0.0) + 1.0)
    eta = locate(-1.0, -min(lower, 0.0) + 1.0)
    margin_mu = psd_margin(identity - c_inv.scaled(mu))
    margin_eta = psd_margin(identity + c_inv.scaled(eta))
    return GapCertificate(mu, eta, mu + eta, (margin_mu, margin_eta))


def bridged_lmi_blocks(
    ga: WeightedGraph, gb: WeightedGraph, bm: BridgeMatrix, mu: float, eta: float
) -> tuple[SymMatrix, SymMatrix]:
    """The two block matrix inequalities certifying mu + eta for a bridged
    graph: one subtracting mu times the inverses, one adding eta times."""
    try:
        a_inv = invert(ga.adjacency)
        b_inv = invert(gb.adjacency)
    except SingularMatrix as exc:
        raise ZeroEigenvalue(str(exc)) from exc
    n, m = ga.n, gb.n
    hb = bm.h.data @ b_inv.data
    gram = hb.T @ hb
    gram = (gram + gram.T) / 2.0

    def block(sign: float, value: float) -> SymMatrix:
        out = np.zeros((n + m, n + m))
        out[:n, :n] = np.eye(n) + sign * value * a_inv.data
        out[:n, n:] = hb
        out[n:, :n] = hb.T
        out[n:, n:] = np.eye(m) + sign * value * b_inv.data + gram
        return SymMatrix(out)

    return block(-1.0, mu), block(+1.0, eta)


def certify_bridged_lmi(
    ga: WeightedGraph,
    gb: WeightedGraph,
    bm: BridgeMatrix,
    mu: float,
    eta: float,
    margin_tol: float = MARGIN_TOL,
) -> GapCertificate:
    """Certify (mu, eta) against the bridged block inequalities.

    Returns the certificate with the smallest eigenvalue of each block as
    its margin; raises InfeasiblePoint when a margin falls below
    -margin_tol * max(1, ||block||_max).
    """
    if mu < 0.0 or eta < 0.0:
        raise InfeasiblePoint("mu and eta must be nonnegative")
    block_mu, block_eta = bridged_lmi_blocks(ga, gb, bm, mu, eta)
    margins = (psd_margin(block_mu), psd_margin(block_eta))
    for name, margin, block in (("mu", margins[0], block_mu), ("eta", margins[1], block_eta)):
        bound = margin_tol * max(1.0, block.max_norm())
        if margin < -bound:
            raise InfeasiblePoint(
                f"{name}-block is not positive semidefinite (margin {margin:.3e})",
                margins,
            )
    return GapCertificate(float(mu), float(eta), float(mu) + float(eta), margins)


def certify_relaxation_tightness(
    htilde: Block,
    da: Sequence[float],
    db: Sequence[float],
    tol: float = 1e-12,
) -> bool:
    """Witness that the Gram relaxation is exact at a binary bridge.

    With H = DA Htilde DB and W = H^T H, the diagonal of W must equal
    sum_l DA_ll H_lj DB_jj column by column (squares of binary entries are
    the entries themselves), and the slack L = W - H^T H must vanish
    identically. A positive semidefinite slack with zero diagonal has no
    room left: |L_ij| <= sqrt(L_ii L_jj) = 0.
    """
    ht = htilde.data
    if not np.all((ht == 0.0) | (ht == 1.0)):
        raise NonBinaryInput("bridge pattern must have entries in {0, 1}")
    da = np.asarray(list(da), dtype=np.float64)
    db = np.asarray(list(db), dtype=np.float64)
    h = da[:, None] * ht * db[None, :]
    w = h.T @ h
    diag_linear = (da @ h) * db
    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 1.0)
    diagonal_ok = bool(np.max(np.abs(np.diag(w) - diag_linear)) <= tol * scale)
    slack = w - h.T @ h
    slack_zero = bool(np.all(slack == 0.0))
    return diagonal_ok and slack_zero
