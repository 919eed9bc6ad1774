"""Independent straight-line oracles, deliberately separate from the library.

Everything here is written with elementary loops and truncated series so
regression constants frozen in the tests never depend on the code paths they
check.
"""

import numpy as np


def expm_taylor(a, terms=60):
    n = a.shape[0]
    out = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, terms):
        term = term @ a / k
        out = out + term
    return out


def brute_nosignaling_delta_s(alpha, s, t):
    """Explicit 4-dim state algebra for the direct (identity-scheme) experiment."""
    h0 = np.array(
        [[1j * s * np.sin(alpha), s], [s, -1j * s * np.sin(alpha)]], dtype=complex
    )
    u0 = expm_taylor(-1j * t * h0)
    bell = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    plus_y = np.array([1, 1j], dtype=complex) / np.sqrt(2)
    minus_y = np.array([1, -1j], dtype=complex) / np.sqrt(2)

    bob_plus = []
    for u_a in (np.eye(2, dtype=complex), sx):
        # (U0 U_A ⊗ e^{-it} I) |bell>, entry by entry
        m = u0 @ u_a
        final = np.zeros(4, dtype=complex)
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    final[2 * i + j] += m[i, k] * np.exp(-1j * t) * bell[2 * k + j]
        final = final / np.sqrt(sum(abs(x) ** 2 for x in final))
        total = 0.0
        for a_vec in (plus_y, minus_y):
            # probability of (a, +y)
            pr = 0.0 + 0.0j
            for i in range(2):
                for j in range(2):
                    pr += np.conj(a_vec[i] * plus_y[j]) * final[2 * i + j]
            total += abs(pr) ** 2
        bob_plus.append(total)
    return abs(bob_plus[0] - bob_plus[1])


def quadratic_eigs_2x2(a):
    """Eigenvalues of a 2x2 matrix from the characteristic polynomial."""
    tr = a[0, 0] + a[1, 1]
    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    disc = np.sqrt(tr * tr - 4 * det + 0j)
    return (tr + disc) / 2, (tr - disc) / 2


def hermitian_sylvester_nullity_bruteforce(h):
    """Nullity of X -> H^dag X - X H over Hermitian X, by Gaussian elimination.

    Built entry-by-entry over the real parameterization, independent of the
    library's SVD-based route.
    """
    n = h.shape[0]
    params = []
    for k in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[k, k] = 1
        params.append(e)
    for k in range(n):
        for l in range(k + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[k, l] = e[l, k] = 1
            params.append(e)
            f = np.zeros((n, n), dtype=complex)
            f[k, l] = 1j
            f[l, k] = -1j
            params.append(f)
    rows = []
    for b in params:
        r = h.conj().T @ b - b @ h
        rows.append([x for z in r.ravel() for x in (z.real, z.imag)])
    m = [list(col) for col in zip(*rows)]  # (2n^2) x (n^2)
    # Gaussian elimination with partial pivoting
    nrows, ncols = len(m), len(m[0])
    rank, pivot_row = 0, 0
    for col in range(ncols):
        best = max(range(pivot_row, nrows), key=lambda r: abs(m[r][col]), default=None)
        if best is None or abs(m[best][col]) < 1e-9:
            continue
        m[pivot_row], m[best] = m[best], m[pivot_row]
        pv = m[pivot_row][col]
        for r in range(nrows):
            if r != pivot_row and abs(m[r][col]) > 0:
                f = m[r][col] / pv
                for c in range(col, ncols):
                    m[r][c] -= f * m[pivot_row][c]
        pivot_row += 1
        rank += 1
        if pivot_row == nrows:
            break
    return ncols - rank
