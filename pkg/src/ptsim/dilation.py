"""Hermitian dilation of an unbroken Hamiltonian onto the doubled space.

The dilation record carries the coupling matrix tau = (eta - I)^{1/2}, the
four blocks of Hhat = [[H1, H2], [H2^dag, H4]], and the defining residuals:
    H1 + H2 tau = H
    H2^dag + H4 tau = tau H
Evolution under Hhat restricted to the graph subspace Y_tau = {(psi; tau psi)}
reproduces e^{-itH} in the top block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import errors
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    fro,
    is_hermitian,
    matrix_exp,
    principal_sqrt_psd,
    rel_scale,
)
from .metric import positive_metric, verify_metric
from .ptcore import Kind, PTSystem, classify

__all__ = [
    "Dilation",
    "build_dilation",
    "embed_state",
    "dilated_evolution",
    "embedding_membership",
    "in_tau_subspace",
]


@dataclass(frozen=True)
class Dilation:
    H: np.ndarray
    eta: np.ndarray
    tau: np.ndarray
    H1: np.ndarray
    H2: np.ndarray
    H4: np.ndarray
    Hhat: np.ndarray
    residuals: dict

    @property
    def dim(self) -> int:
        return self.H.shape[0]

    def to_obj(self) -> dict:
        from .io import matrix_to_obj

        return {
            "H": matrix_to_obj(self.H),
            "eta": matrix_to_obj(self.eta),
            "tau": matrix_to_obj(self.tau),
            "H1": matrix_to_obj(self.H1),
            "H2": matrix_to_obj(self.H2),
            "H4": matrix_to_obj(self.H4),
            "Hhat": matrix_to_obj(self.Hhat),
            "residuals": {k: float(v) for k, v in self.residuals.items()},
        }


def build_dilation(
    sys: PTSystem,
    eta=None,
    margin: float = 1.05,
    h1_choice: str = "zero",
    h1=None,
    rescale_supplied: bool = False,
    tol: Tolerances = DEFAULT_TOL,
) -> Dilation:
    """Assemble Hhat from (H, eta, H1).

    eta=None constructs the canonical positive metric and rescales it so its
    smallest eigenvalue equals ``margin`` (> 1 keeps tau invertible). A
    supplied eta must already satisfy lambda_min > 1 unless
    ``rescale_supplied`` is set. h1_choice is one of "zero", "paper"
    (H1 = tau H tau eta^{-1} + H eta^{-1}) or "supplied".
    """
    c = classify(sys.H, sys.pt, tol)
    if c.kind is not Kind.UNBROKEN:
        raise errors.NotUnbrokenError(f"build_dilation: classification is {c.kind.value}")
    h = sys.H
    n = h.shape[0]

    if eta is None:
        base = positive_metric(sys, tol).eta
        w = np.linalg.eigvalsh(base)
        eta = (margin / w.min()) * base
    else:
        eta = np.asarray(eta, dtype=complex)
        verify_metric(h, eta, tol)
        w = np.linalg.eigvalsh(0.5 * (eta + eta.conj().T))
        if w.min() <= 1.0:
            if not rescale_supplied:
                raise errors.EtaNotGreaterThanIError(
                    f"build_dilation: lambda_min(eta) = {w.min():.6g} <= 1"
                )
            eta = (margin / w.min()) * eta

    tau = principal_sqrt_psd(eta - np.eye(n), tol)
    tau_w = np.linalg.eigvalsh(tau)
    if tau_w.min() <= tol.psd_tol:
        raise errors.NumericalFailureError("build_dilation: tau is singular (eta at boundary)")
    tau_inv = np.linalg.inv(tau)

    if h1_choice == "zero":
        h1m = np.zeros((n, n), dtype=complex)
    elif h1_choice == "paper":
        eta_inv = np.linalg.inv(eta)
        h1m = tau @ h @ tau @ eta_inv + h @ eta_inv
        h1m = 0.5 * (h1m + h1m.conj().T)
    elif h1_choice == "supplied":
        h1m = np.asarray(h1, dtype=complex)
        if h1m.shape != (n, n) or not is_hermitian(h1m, tol):
            raise errors.SuppliedH1NotHermitianError("build_dilation: supplied H1 is not Hermitian")
    else:
        raise ValueError(f"unknown h1_choice {h1_choice!r}")

    h2 = (h - h1m) @ tau_inv
    h4 = (tau @ h - h2.conj().T) @ tau_inv
    hhat = np.block([[h1m, h2], [h2.conj().T, h4]])

    scale = rel_scale(h)
    residuals = {
        "hermiticity": fro(hhat - hhat.conj().T) / scale,
        "eq_h1h2": fro(h1m + h2 @ tau - h) / scale,
        "eq_h2h4": fro(h2.conj().T + h4 @ tau - tau @ h) / scale,
        "tau_sq": fro(tau @ tau - (eta - np.eye(n))) / rel_scale(eta),
    }
    hhat = 0.5 * (hhat + hhat.conj().T)
    return Dilation(h, eta, tau, h1m, h2, h4, hhat, residuals)


def in_tau_subspace(x, tau, tol: Tolerances = DEFAULT_TOL) -> bool:
    x = np.asarray(x, dtype=complex).reshape(-1)
    n = tau.shape[0]
    if x.shape[0] != 2 * n:
        raise errors.DimensionMismatchError("in_tau_subspace: length mismatch")
    return np.linalg.norm(x[n:] - tau @ x[:n]) <= tol.eq_tol * max(1.0, np.linalg.norm(x)) * max(
        1.0, fro(tau)
    )


def embed_state(psi, d: Dilation, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """(psi; tau psi) / ||sqrt(eta) psi||, a unit vector in Y_tau."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if np.linalg.norm(psi) == 0.0:
        raise errors.ZeroVectorError("embed_state: zero input")
    sqrt_eta = principal_sqrt_psd(d.eta, tol)
    denom = np.linalg.norm(sqrt_eta @ psi)
    return np.concatenate([psi, d.tau @ psi]) / denom


def dilated_evolution(d: Dilation, t: float, xhat, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    xhat = np.asarray(xhat, dtype=complex).reshape(-1)
    if not in_tau_subspace(xhat, d.tau, tol):
        raise errors.NotInSubspaceError("dilated_evolution: input is not in Y_tau")
    return matrix_exp(-1j * t * d.Hhat, tol) @ xhat


def embedding_membership(hhat, h, x, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Power condition P1 Hhat^k x = H^k P1 x for k = 0..2n.

    By Cayley-Hamilton on the 2n-dimensional Hhat, powers beyond the
    dimension add nothing.
    """
    hhat = np.asarray(hhat, dtype=complex)
    h = np.asarray(h, dtype=complex)
    x = np.asarray(x, dtype=complex).reshape(-1)
    n = h.shape[0]
    if hhat.shape != (2 * n, 2 * n) or x.shape[0] != 2 * n:
        raise errors.DimensionMismatchError("embedding_membership: shape mismatch")
    y = x.copy()
    z = x[:n].copy()
    for _ in range(2 * n + 1):
        scale = max(1.0, np.linalg.norm(y), np.linalg.norm(z))
        if np.linalg.norm(y[:n] - z) > tol.eq_tol * scale:
            return False
        y = hhat @ y
        z = h @ z
    return True
