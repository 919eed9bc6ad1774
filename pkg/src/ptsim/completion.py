"""Realize linear maps between n-dim subspaces of C^{2n} as
unitary-then-project-then-normalize, the physical primitive behind every
non-unitary pipeline stage.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import errors
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    fro,
    orthonormal_extension,
    principal_sqrt_psd,
)

__all__ = [
    "SubspaceMap",
    "CompletionResult",
    "unitary_completion",
    "zero_map_completion",
    "post_select",
]


@dataclass(frozen=True)
class SubspaceMap:
    """A: M -> N in the given orthonormal bases (2n x n columns each)."""

    m_basis: np.ndarray
    n_basis: np.ndarray
    action: np.ndarray

    def __post_init__(self):
        m, nb, a = (np.asarray(x, dtype=complex) for x in (self.m_basis, self.n_basis, self.action))
        object.__setattr__(self, "m_basis", m)
        object.__setattr__(self, "n_basis", nb)
        object.__setattr__(self, "action", a)
        if m.shape != nb.shape or m.ndim != 2:
            raise errors.DimensionMismatchError("SubspaceMap: basis shapes differ")
        ambient, k = m.shape
        if ambient != 2 * k:
            raise errors.DimensionMismatchError("SubspaceMap: ambient dim must be twice the subspace dim")
        if a.shape != (k, k):
            raise errors.DimensionMismatchError("SubspaceMap: action must be k x k")
        eye = np.eye(k)
        for name, b in (("M", m), ("N", nb)):
            if fro(b.conj().T @ b - eye) > 1e-10 * max(1.0, k):
                raise errors.DependentInputError(f"SubspaceMap: {name} basis is not orthonormal")

    @property
    def subspace_dim(self) -> int:
        return self.m_basis.shape[1]

    @property
    def ambient_dim(self) -> int:
        return self.m_basis.shape[0]


@dataclass(frozen=True)
class CompletionResult:
    U: np.ndarray
    P_N: np.ndarray
    scale: float


def _complement_basis(basis: np.ndarray, tol: Tolerances) -> np.ndarray:
    full = orthonormal_extension(list(basis.T), basis.shape[0], tol)
    return full[:, basis.shape[1]:]


def unitary_completion(m: SubspaceMap, tol: Tolerances = DEFAULT_TOL) -> CompletionResult:
    """Unitary U and projection P_N with P_N U v = scale * A v on M.

    Columns of A, scaled to unit total energy, give the N-components of the
    images; the deficit goes into N-perp through the principal PSD root of
    I - C^dag C. The extension of U beyond M is the deterministic
    orthonormal completion (gauge-free as far as P_N U on M is concerned).
    """
    k = m.subspace_dim
    a_norm = fro(m.action)
    if a_norm == 0.0:
        raise errors.ZeroMapError("unitary_completion: zero map; use zero_map_completion")
    c = m.action / a_norm
    d = principal_sqrt_psd(np.eye(k) - c.conj().T @ c, tol)
    w = _complement_basis(m.n_basis, tol)  # orthonormal basis of N-perp
    images = m.n_basis @ c + w @ d  # orthonormal image columns

    full_m = orthonormal_extension(list(m.m_basis.T), m.ambient_dim, tol)
    full_v = orthonormal_extension(list(images.T), m.ambient_dim, tol)
    u = full_v @ full_m.conj().T
    p_n = m.n_basis @ m.n_basis.conj().T
    return CompletionResult(u, p_n, 1.0 / a_norm)


def zero_map_completion(m: SubspaceMap, tol: Tolerances = DEFAULT_TOL) -> CompletionResult:
    """U sending M onto N-perp, so P_N U vanishes on M."""
    if fro(m.action) != 0.0:
        raise errors.DimensionMismatchError("zero_map_completion: action is nonzero")
    w = _complement_basis(m.n_basis, tol)
    full_m = orthonormal_extension(list(m.m_basis.T), m.ambient_dim, tol)
    full_v = np.hstack([w, m.n_basis])
    u = full_v @ full_m.conj().T
    p_n = m.n_basis @ m.n_basis.conj().T
    return CompletionResult(u, p_n, 0.0)


def post_select(state, p, tol: Tolerances = DEFAULT_TOL):
    """Project, renormalize, and report the branch probability.

    A vanishing branch returns (zero vector, 0.0) rather than erroring.
    """
    state = np.asarray(state, dtype=complex).reshape(-1)
    p = np.asarray(p, dtype=complex)
    if fro(p @ p - p) > tol.eq_tol * max(1.0, fro(p)) or fro(p - p.conj().T) > tol.eq_tol * max(
        1.0, fro(p)
    ):
        raise errors.NotProjectionError("post_select: P is not an orthogonal projection")
    nrm = np.linalg.norm(state)
    if abs(nrm - 1.0) > 1e-8:
        raise errors.NotNormalizedError("post_select: state must be unit-norm")
    out = p @ state
    prob = float(np.linalg.norm(out) ** 2)
    if prob <= tol.psd_tol:
        return np.zeros_like(state), 0.0
    return out / np.linalg.norm(out), prob
