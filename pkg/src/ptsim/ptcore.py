"""PT operator pairs, symmetry validation and unbroken/broken classification.

Conventions: T is the representation matrix of the anti-linear time-reversal
operator, so its action on a vector v is T @ conj(v). The product operator PT
is likewise anti-linear with matrix P @ T.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import errors
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    eig,
    fro,
    is_real_eigenvalue,
    rel_scale,
)

__all__ = [
    "PTPair",
    "PTSystem",
    "Kind",
    "Classification",
    "CanonicalForm",
    "validate_pt_pair",
    "is_pt_symmetric",
    "classify",
    "canonical_form",
    "construct_pt_from_eigenframe",
]


@dataclass(frozen=True)
class PTPair:
    P: np.ndarray
    T: np.ndarray
    PT: np.ndarray

    @property
    def dim(self) -> int:
        return self.P.shape[0]


@dataclass(frozen=True)
class PTSystem:
    H: np.ndarray
    pt: PTPair

    @staticmethod
    def from_hamiltonian(h, tol: Tolerances = DEFAULT_TOL) -> "PTSystem":
        """Build a PT pair for a diagonalizable H from its eigenframe.

        Takes P = I and T = Psi K conj(Psi^{-1}), which is a valid
        time-reversal matrix whenever the spectrum is closed under
        conjugation.
        """
        c = classify(h, None, tol)
        if c.kind is Kind.DEFECTIVE:
            raise errors.DefectiveInputError("from_hamiltonian: H is defective")
        if c.kind is Kind.NOT_PT_SYMMETRIC:
            raise errors.NotPTSymmetricError("from_hamiltonian: spectrum not conjugation-closed")
        j, psi, k = _paired_eigenframe(h, tol)
        ptm = construct_pt_from_eigenframe(psi, k, tol)
        pair = validate_pt_pair(np.eye(h.shape[0], dtype=complex), ptm, tol)
        return PTSystem(np.asarray(h, dtype=complex), pair)


class Kind(Enum):
    UNBROKEN = "UnbrokenPT"
    BROKEN_DIAGONALIZABLE = "BrokenDiagonalizable"
    DEFECTIVE = "Defective"
    NOT_PT_SYMMETRIC = "NotPTSymmetric"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    spectrum: np.ndarray
    eigenframe: np.ndarray | None

    def to_obj(self) -> dict:
        return {
            "kind": self.kind.value,
            "spectrum": [[z.real, z.imag] for z in self.spectrum],
        }


@dataclass(frozen=True)
class CanonicalForm:
    J: np.ndarray
    Psi: np.ndarray
    K: np.ndarray


def validate_pt_pair(p, t, tol: Tolerances = DEFAULT_TOL) -> PTPair:
    p = np.asarray(p, dtype=complex)
    t = np.asarray(t, dtype=complex)
    if p.shape != t.shape or p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise errors.DimensionMismatchError("validate_pt_pair: P, T must be square of equal order")
    n = p.shape[0]
    eye = np.eye(n)
    if fro(p @ p - eye) > tol.eq_tol * rel_scale(p @ p):
        raise errors.NotInvolutoryPError("P^2 != I")
    if fro(t @ t.conj() - eye) > tol.eq_tol * rel_scale(t @ t.conj()):
        raise errors.NotInvolutoryTError("T conj(T) != I")
    if fro(p @ t - t @ p.conj()) > tol.eq_tol * max(rel_scale(p), rel_scale(t)):
        raise errors.NonCommutingError("PT != T conj(P)")
    return PTPair(p, t, p @ t)


def is_pt_symmetric(h, pt: PTPair, tol: Tolerances = DEFAULT_TOL) -> bool:
    h = np.asarray(h, dtype=complex)
    if h.shape[0] != pt.dim or h.shape[0] != h.shape[1]:
        raise errors.DimensionMismatchError("is_pt_symmetric: order mismatch")
    m = pt.PT
    return fro(h @ m - m @ h.conj()) <= tol.eq_tol * rel_scale(h)


def classify(h, pt: PTPair | None = None, tol: Tolerances = DEFAULT_TOL) -> Classification:
    """Unbroken/broken/defective verdict from the spectrum and eigenframe.

    A PT pair is optional: diagonalizability plus an all-real spectrum is a
    complete criterion for unbrokenness. If the spectrum is not closed under
    conjugation the matrix cannot be PT-symmetric at all.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise errors.NonSquareError("classify: H must be square")
    if pt is not None and not is_pt_symmetric(h, pt, tol):
        d = eig(h, tol)
        return Classification(Kind.NOT_PT_SYMMETRIC, d.eigenvalues, None)
    d = eig(h, tol)
    if d.defective:
        return Classification(Kind.DEFECTIVE, d.eigenvalues, None)
    if all(is_real_eigenvalue(lam, tol) for lam in d.eigenvalues):
        return Classification(Kind.UNBROKEN, d.eigenvalues, d.eigenvector_matrix)
    if _conjugation_closed(d.eigenvalues, tol):
        return Classification(Kind.BROKEN_DIAGONALIZABLE, d.eigenvalues, d.eigenvector_matrix)
    return Classification(Kind.NOT_PT_SYMMETRIC, d.eigenvalues, None)


def _conjugation_closed(spectrum, tol: Tolerances) -> bool:
    try:
        _pair_spectrum(spectrum, tol)
    except errors.InconsistentSpectrumError:
        return False
    return True


def _pair_spectrum(spectrum, tol: Tolerances):
    """Indices of conjugate pairs (Im > 0 first) and of real eigenvalues."""
    pairs, reals = [], []
    used = [False] * len(spectrum)
    for i, lam in enumerate(spectrum):
        if used[i]:
            continue
        if is_real_eigenvalue(lam, tol):
            reals.append(i)
            used[i] = True
            continue
        match = None
        for j in range(len(spectrum)):
            if j == i or used[j]:
                continue
            if abs(spectrum[j] - np.conj(lam)) <= tol.real_tol * max(1.0, abs(lam)):
                match = j
                break
        if match is None:
            raise errors.InconsistentSpectrumError(
                f"complex eigenvalue {lam} has no conjugate partner"
            )
        used[i] = used[match] = True
        if lam.imag > 0:
            pairs.append((i, match))
        else:
            pairs.append((match, i))
    return pairs, reals


def _paired_eigenframe(h, tol: Tolerances):
    """(J, Psi, K) ordering conjugate pairs first, real eigenvalues trailing.

    Pair columns are kept as raw eigenvectors; no PT-dependent gauge applied.
    Used by from_hamiltonian where the PT is about to be *built* from Psi.
    """
    h = np.asarray(h, dtype=complex)
    d = eig(h, tol)
    pairs, reals = _pair_spectrum(d.eigenvalues, tol)
    cols, lams, kblocks = [], [], []
    for i, j in pairs:
        cols += [d.eigenvector_matrix[:, i], d.eigenvector_matrix[:, j]]
        lams += [d.eigenvalues[i], d.eigenvalues[j]]
        kblocks.append(np.array([[0, 1], [1, 0]], dtype=complex))
    for i in reals:
        cols.append(d.eigenvector_matrix[:, i])
        lams.append(complex(d.eigenvalues[i].real))
        kblocks.append(np.array([[1]], dtype=complex))
    psi = np.column_stack(cols)
    j = np.diag(lams)
    import scipy.linalg as sla

    k = sla.block_diag(*kblocks).astype(complex)
    return j, psi, k


def canonical_form(sys: PTSystem, tol: Tolerances = DEFAULT_TOL) -> CanonicalForm:
    """Eigenframe gauge-fixed against PT: Psi^{-1} H Psi = J, Psi^{-1} PT conj(Psi) = K.

    For a conjugate eigenvalue pair the partner column is PT conj(first
    column); for a real eigenvalue the column is put in the self-conjugate
    gauge PT conj(psi) = psi.
    """
    if not is_pt_symmetric(sys.H, sys.pt, tol):
        raise errors.NotPTSymmetricError("canonical_form: H is not PT-symmetric for this pair")
    d = eig(sys.H, tol)
    if d.defective:
        raise errors.DefectiveInputError("canonical_form: defective H is out of scope")
    ptm = sys.pt.PT
    pairs, reals = _pair_spectrum(d.eigenvalues, tol)

    cols, lams, kblocks = [], [], []
    for i, j in pairs:
        psi1 = d.eigenvector_matrix[:, i]
        psi2 = ptm @ psi1.conj()  # eigenvector for conj(lambda) by PT symmetry
        cols += [psi1, psi2]
        lams += [d.eigenvalues[i], np.conj(d.eigenvalues[i])]
        kblocks.append(np.array([[0, 1], [1, 0]], dtype=complex))
    for i in reals:
        psi = d.eigenvector_matrix[:, i]
        phi = psi + ptm @ psi.conj()
        if np.linalg.norm(phi) < 1e-8 * np.linalg.norm(psi):
            phi = 1j * (psi - ptm @ psi.conj())
        cols.append(phi / np.linalg.norm(phi))
        lams.append(complex(d.eigenvalues[i].real))
        kblocks.append(np.array([[1]], dtype=complex))

    psi = np.column_stack(cols)
    if np.linalg.cond(psi) > tol.defect_cond:
        raise errors.NumericalFailureError("canonical_form: gauge-fixed frame is singular")
    import scipy.linalg as sla

    jmat = np.diag(lams)
    kmat = sla.block_diag(*kblocks).astype(complex)
    return CanonicalForm(jmat, psi, kmat)


def construct_pt_from_eigenframe(psi, k, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """PT = Psi K conj(Psi^{-1}) for an invertible frame and a K block pattern."""
    psi = np.asarray(psi, dtype=complex)
    k = np.asarray(k, dtype=complex)
    if psi.shape != k.shape:
        raise errors.DimensionMismatchError("construct_pt_from_eigenframe: shape mismatch")
    if np.linalg.cond(psi) > tol.defect_cond:
        raise errors.SingularFrameError("construct_pt_from_eigenframe: frame not invertible")
    psi_inv = np.linalg.inv(psi)
    return psi @ k @ psi_inv.conj()
