"""Dense complex linear-algebra primitives used by every other module.

All matrices are numpy complex arrays. Operations are pure functions; values
may be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import errors

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "EigenDecomposition",
    "eig",
    "matrix_exp",
    "principal_sqrt_psd",
    "psd_power",
    "sylvester_hermitian_nullspace",
    "orthonormal_extension",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "fro",
    "rel_scale",
    "is_hermitian",
]

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# Eigendecomposition route for the exponential is used only below this
# conditioning; beyond it scaling-and-squaring is more trustworthy.
_EXPM_COND_LIMIT = 1e8


@dataclass(frozen=True)
class Tolerances:
    """Numerical policy knobs.

    eq_tol      residual tolerance for matrix equalities
    real_tol    relative tolerance for "this eigenvalue is real"
    defect_cond eigenvector-matrix condition number above which we refuse
    psd_tol     eigenvalue nonnegativity window
    """

    eq_tol: float = 1e-10
    real_tol: float = 1e-9
    defect_cond: float = 1e12
    psd_tol: float = 1e-12

    def __post_init__(self):
        for name in ("eq_tol", "real_tol", "defect_cond", "psd_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOL = Tolerances()


def fro(a) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def rel_scale(a) -> float:
    """max(1, ||A||_F), the denominator for relative residual checks."""
    return max(1.0, fro(a))


def _require_square(a, who: str) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise errors.NonSquareError(f"{who}: expected a square matrix, got shape {a.shape}")
    return a


def is_hermitian(a, tol: Tolerances = DEFAULT_TOL) -> bool:
    a = np.asarray(a, dtype=complex)
    return fro(a - a.conj().T) <= tol.eq_tol * rel_scale(a)


def is_real_eigenvalue(lam: complex, tol: Tolerances = DEFAULT_TOL) -> bool:
    return abs(lam.imag) <= tol.real_tol * max(1.0, abs(lam))


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvector_matrix: np.ndarray
    condition_estimate: float
    defective: bool

    @property
    def dim(self) -> int:
        return self.eigenvector_matrix.shape[0]


def eig(a, tol: Tolerances = DEFAULT_TOL) -> EigenDecomposition:
    """Eigendecomposition with a defectiveness verdict.

    The defective flag is raised when the eigenvector matrix is too
    ill-conditioned to trust, or when a cluster of nearly equal eigenvalues
    comes with nearly dependent eigenvectors (geometric multiplicity
    deficit). We refuse to classify such inputs further rather than
    silently mis-handle a Jordan block.
    """
    a = _require_square(a, "eig")
    try:
        lam, psi = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails
        raise errors.NumericalFailureError(f"eig did not converge: {exc}") from exc
    if not (np.all(np.isfinite(lam)) and np.all(np.isfinite(psi))):
        raise errors.NumericalFailureError("eig produced non-finite output")

    cond = float(np.linalg.cond(psi))
    defective = bool(not np.isfinite(cond) or cond > tol.defect_cond)

    if not defective:
        defective = _has_clustered_rank_deficit(lam, psi, tol)

    return EigenDecomposition(lam, psi, cond, defective)


def _has_clustered_rank_deficit(lam, psi, tol: Tolerances) -> bool:
    # A Jordan block perturbed at machine precision splits its eigenvalue by
    # ~sqrt(eps), so the cluster window must be much wider than real_tol.
    n = len(lam)
    scale = max(1.0, float(np.max(np.abs(lam))))
    window = max(tol.real_tol, 1e-6) * scale
    unassigned = list(range(n))
    while unassigned:
        i = unassigned.pop(0)
        cluster = [i]
        for j in list(unassigned):
            if abs(lam[i] - lam[j]) <= window:
                cluster.append(j)
                unassigned.remove(j)
        if len(cluster) > 1:
            s = np.linalg.svd(psi[:, cluster], compute_uv=False)
            if s[-1] <= 1e-6 * max(1.0, s[0]):
                return True
    return False


def matrix_exp(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """e^{A}: eigendecomposition when well-conditioned, else Pade/squaring."""
    a = _require_square(a, "matrix_exp")
    d = eig(a, tol)
    if not d.defective and d.condition_estimate <= _EXPM_COND_LIMIT:
        psi = d.eigenvector_matrix
        return psi @ np.diag(np.exp(d.eigenvalues)) @ np.linalg.inv(psi)
    return scipy.linalg.expm(a)


def principal_sqrt_psd(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues in [-psd_tol, 0) are clamped to zero; anything below the
    window is rejected.
    """
    return psd_power(a, 0.5, tol)


def psd_power(a, p: float, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """A^p for Hermitian PSD A via a single eigenframe.

    Using one eigh call per matrix keeps powers mutually consistent, e.g.
    psd_power(A, 0.5) @ psd_power(A, -0.5) = I to rounding.
    """
    a = _require_square(a, "psd_power")
    if not is_hermitian(a, tol):
        raise errors.NotHermitianError("psd_power: input is not Hermitian within eq_tol")
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    if np.min(w) < -tol.psd_tol:
        raise errors.NotPSDError(f"psd_power: eigenvalue {np.min(w):.3e} below -psd_tol")
    w = np.clip(w, 0.0, None)
    if p < 0 and np.min(w) == 0.0:
        raise errors.NotPositiveDefiniteError("psd_power: negative power of a singular matrix")
    s = v @ np.diag(w**p) @ v.conj().T
    return 0.5 * (s + s.conj().T)


def _hermitian_basis(n: int) -> list[np.ndarray]:
    """Real-linear basis of the n^2-dimensional space of Hermitian matrices."""
    basis = []
    for k in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[k, k] = 1.0
        basis.append(e)
    for k in range(n):
        for l in range(k + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[k, l] = e[l, k] = 1.0
            basis.append(e)
            f = np.zeros((n, n), dtype=complex)
            f[k, l] = 1j
            f[l, k] = -1j
            basis.append(f)
    return basis


def sylvester_hermitian_nullspace(h, tol: Tolerances = DEFAULT_TOL) -> list[np.ndarray]:
    """Real-linear basis of Hermitian X solving H^dag X = X H.

    The map X -> H^dag X - X H is linearized over the real n^2-dimensional
    space of Hermitian matrices; its nullspace is read off an SVD.
    """
    h = _require_square(h, "sylvester_hermitian_nullspace")
    n = h.shape[0]
    basis = _hermitian_basis(n)
    cols = []
    for b in basis:
        r = h.conj().T @ b - b @ h
        cols.append(np.concatenate([r.real.ravel(), r.imag.ravel()]))
    m = np.array(cols).T  # 2n^2 x n^2 real
    u, s, vh = np.linalg.svd(m)
    smax = s[0] if len(s) else 0.0
    cutoff = 1e-9 * max(1.0, smax)
    null_coords = [vh[i] for i in range(len(s)) if s[i] <= cutoff]
    # columns beyond rank(m) (if m is wide) are exact nullspace directions
    null_coords += [vh[i] for i in range(len(s), vh.shape[0])]
    out = []
    for c in null_coords:
        x = sum(ci * bi for ci, bi in zip(c, basis))
        x = 0.5 * (x + x.conj().T)
        out.append(x / fro(x))
    return out


def orthonormal_extension(vectors, dim: int, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Complete the given independent vectors to an orthonormal basis.

    Returns a dim x dim unitary whose first columns span span(vectors);
    already-orthonormal input is reproduced in place. Completion picks
    coordinate vectors by largest residual, so the output is deterministic.
    """
    vs = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
    if any(v.shape[0] != dim for v in vs):
        raise errors.DimensionMismatchError("orthonormal_extension: vector length != dim")
    if len(vs) > dim:
        raise errors.DependentInputError("orthonormal_extension: more vectors than dim")

    q = []
    for v in vs:
        w = v.copy()
        for u in q:
            w = w - u * (u.conj() @ w)
        # second GS pass for numerical orthogonality
        for u in q:
            w = w - u * (u.conj() @ w)
        nw = np.linalg.norm(w)
        if nw <= 1e-10 * max(1.0, np.linalg.norm(v)):
            raise errors.DependentInputError("orthonormal_extension: dependent input vectors")
        q.append(w / nw)

    while len(q) < dim:
        best, best_norm = None, -1.0
        for i in range(dim):
            w = np.zeros(dim, dtype=complex)
            w[i] = 1.0
            for u in q:
                w = w - u * (u.conj() @ w)
            nw = np.linalg.norm(w)
            if nw > best_norm + 1e-12:
                best, best_norm = w, nw
        q.append(best / np.linalg.norm(best))

    return np.column_stack(q)
