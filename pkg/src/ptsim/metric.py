"""Metric operators: construction, verification, signatures, and the
scalar-sum (eta + eta^{-1} = t I) analysis with its 3x3 obstruction witness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import errors
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    eig,
    fro,
    is_hermitian,
    rel_scale,
)
from .ptcore import Kind, PTSystem, classify

__all__ = [
    "MetricOperator",
    "SignatureReport",
    "positive_metric",
    "verify_metric",
    "metric_signature",
    "scalar_sum_metric_2d",
    "verify_scalar_sum",
    "scalar_sum_obstruction_demo",
    "H3",
    "Q3",
]

# Upper-triangular witness with spectrum {1,2,3}: unbroken, yet no metric of
# the form eta + eta^{-1} = t I exists.
Q3 = np.array([[1, 1, 1], [0, 1, 1], [0, 0, 1]], dtype=complex)
H3 = np.array([[1, 1, 1], [0, 2, 1], [0, 0, 3]], dtype=complex)


@dataclass(frozen=True)
class MetricOperator:
    eta: np.ndarray
    positive_definite: bool
    min_eigenvalue: float


@dataclass(frozen=True)
class SignatureReport:
    epsilons: tuple
    frame: np.ndarray


def _intertwining_residual(h, eta) -> float:
    return fro(h.conj().T @ eta - eta @ h)


def positive_metric(sys: PTSystem, tol: Tolerances = DEFAULT_TOL) -> MetricOperator:
    """Canonical positive-definite metric eta = (Psi Psi^dag)^{-1}.

    Psi is the eigenframe with unit-norm columns; the output is one
    representative of the multi-dimensional metric family.
    """
    c = classify(sys.H, sys.pt, tol)
    if c.kind is not Kind.UNBROKEN:
        raise errors.NotUnbrokenError(f"positive_metric: classification is {c.kind.value}")
    psi = c.eigenframe / np.linalg.norm(c.eigenframe, axis=0, keepdims=True)
    eta = np.linalg.inv(psi @ psi.conj().T)
    eta = 0.5 * (eta + eta.conj().T)
    w = np.linalg.eigvalsh(eta)
    return MetricOperator(eta, bool(w.min() > tol.psd_tol), float(w.min()))


def verify_metric(h, eta, tol: Tolerances = DEFAULT_TOL) -> MetricOperator:
    h = np.asarray(h, dtype=complex)
    eta = np.asarray(eta, dtype=complex)
    if h.shape != eta.shape or h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise errors.DimensionMismatchError("verify_metric: order mismatch")
    if not is_hermitian(eta, tol):
        raise errors.NotHermitianError("verify_metric: eta is not Hermitian")
    if _intertwining_residual(h, eta) > tol.eq_tol * rel_scale(h) * rel_scale(eta):
        raise errors.NotIntertwiningError("verify_metric: H^dag eta != eta H")
    w = np.linalg.eigvalsh(0.5 * (eta + eta.conj().T))
    return MetricOperator(eta, bool(w.min() > tol.psd_tol), float(w.min()))


def metric_signature(sys: PTSystem, eta, tol: Tolerances = DEFAULT_TOL) -> SignatureReport:
    """Sign vector of the metric in the eigenframe (simple spectrum only)."""
    c = classify(sys.H, sys.pt, tol)
    if c.kind is not Kind.UNBROKEN:
        raise errors.NotUnbrokenError("metric_signature: system is not unbroken")
    verify_metric(sys.H, eta, tol)
    d = eig(sys.H, tol)
    lam = d.eigenvalues
    scale = max(1.0, float(np.max(np.abs(lam))))
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            if abs(lam[i] - lam[j]) <= tol.real_tol * scale:
                raise errors.DegenerateSpectrumUnsupportedError(
                    "metric_signature: repeated eigenvalues are refused"
                )
    psi = d.eigenvector_matrix
    gram = psi.conj().T @ np.asarray(eta, dtype=complex) @ psi
    off = gram - np.diag(np.diag(gram))
    if fro(off) > 1e-8 * rel_scale(gram):
        raise errors.NumericalFailureError("metric_signature: Gram matrix is not diagonal")
    diag = np.real(np.diag(gram))
    eps = tuple(1 if v > 0 else -1 for v in diag)
    frame = psi / np.sqrt(np.abs(diag))[None, :]
    return SignatureReport(eps, frame)


def scalar_sum_metric_2d(sys: PTSystem, tol: Tolerances = DEFAULT_TOL):
    """det-normalized metric of a 2x2 unbroken system, with eta + eta^{-1} = t I."""
    if sys.H.shape[0] != 2:
        raise errors.WrongDimensionError("scalar_sum_metric_2d: n must be 2")
    base = positive_metric(sys, tol)
    det = np.linalg.det(base.eta).real
    eta = base.eta / np.sqrt(det)
    t = float(np.trace(eta).real)
    res = fro(eta + np.linalg.inv(eta) - t * np.eye(2))
    if res > tol.eq_tol * max(1.0, t):
        raise errors.NumericalFailureError(f"scalar_sum_metric_2d: residual {res:.3e}")
    w = np.linalg.eigvalsh(eta)
    return MetricOperator(eta, True, float(w.min())), t


def verify_scalar_sum(eta, tol: Tolerances = DEFAULT_TOL):
    """t such that eta + eta^{-1} = t I, or None if no such t exists."""
    eta = np.asarray(eta, dtype=complex)
    if not is_hermitian(eta, tol):
        raise errors.NotHermitianError("verify_scalar_sum: eta is not Hermitian")
    w = np.linalg.eigvalsh(0.5 * (eta + eta.conj().T))
    if w.min() <= tol.psd_tol:
        raise errors.NotPositiveDefiniteError("verify_scalar_sum: eta is not positive-definite")
    n = eta.shape[0]
    m = eta + np.linalg.inv(eta)
    t = float(np.trace(m).real) / n
    if fro(m - t * np.eye(n)) <= tol.eq_tol * max(1.0, abs(t)):
        return t
    return None


def scalar_sum_obstruction_demo(grid_points: int = 21) -> dict:
    """Lemma-4 witness for H3: no positive metric achieves eta + eta^{-1} = t I.

    Every positive metric of H3 has the form Q^{-dag} A Q^{-1} with diagonal
    A > 0. The demo scans A over a deterministic log grid on [0.1, 10]^3,
    reports the best-case residual at the optimal t per sample, and verifies
    the exact obstruction: entry (1,3) of A Q^{-1} Q^{-dag} A + Q^dag Q is
    constantly 1, while (t A)_{13} = 0 for any diagonal A.
    """
    qinv = np.linalg.inv(Q3)
    gram_inv = qinv @ qinv.conj().T  # Q^{-1} Q^{-dag}
    gram = Q3.conj().T @ Q3
    axis = np.geomspace(0.1, 10.0, grid_points)

    min_residual = np.inf
    entry13_min, entry13_max = np.inf, -np.inf
    samples = 0
    for a1 in axis:
        for a2 in axis:
            for a3 in axis:
                a = np.diag([a1, a2, a3]).astype(complex)
                lhs = a @ gram_inv @ a + gram
                e13 = lhs[0, 2]
                entry13_min = min(entry13_min, abs(e13))
                entry13_max = max(entry13_max, abs(e13))
                eta = qinv.conj().T @ a @ qinv
                m = eta + np.linalg.inv(eta)
                t = float(np.trace(m).real) / 3.0
                res = fro(m - t * np.eye(3))
                min_residual = min(min_residual, res)
                samples += 1

    # the obstruction entry is A-independent; report it once
    a_unit = np.eye(3, dtype=complex)
    entry13 = (a_unit @ gram_inv @ a_unit + gram)[0, 2]
    return {
        "min_residual": float(min_residual),
        "obstruction_entry_13": complex(entry13),
        "obstruction_entry_13_spread": float(entry13_max - entry13_min),
        "samples": samples,
    }
