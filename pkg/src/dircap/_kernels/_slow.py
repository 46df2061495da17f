"""NumPy fallback for the O(M^2) pair-sum kernels.

Each kernel sums over ordered pairs (j, k), j != k, of samples on the
uniform M-point circle grid, weighted by 1/chord(j,k)^2 where
chord(m) = 2 sin(pi m / M) is the chordal distance between grid points m
steps apart.  Sums run one diagonal offset at a time so the work stays in
vectorized NumPy; per-offset partials are combined with np.sum (pairwise
summation), giving a fixed, reproducible reduction order.
"""

import numpy as np

BACKEND = "numpy"


def _inv_chord_sq(M):
    m = np.arange(1, M)
    return 1.0 / (2.0 * np.sin(np.pi * m / M)) ** 2


def douglas_offdiag(z):
    """sum_{j != k} |z_j - z_k|^2 / chord(j-k)^2."""
    z = np.ascontiguousarray(z, dtype=np.complex128)
    M = z.shape[0]
    w = _inv_chord_sq(M)
    half = M // 2
    partial = np.empty(half, dtype=np.float64)
    for m in range(1, half + 1):
        dz = z - np.roll(z, m)
        partial[m - 1] = np.sum(dz.real**2 + dz.imag**2)
    # offsets m and M-m enumerate the same ordered pairs in opposite order
    total = 2.0 * np.sum(partial * w[:half])
    if M % 2 == 0:
        total -= partial[half - 1] * w[half - 1]
    return float(total)


def local_row(z, j):
    """sum_{k != j} |z_j - z_k|^2 / chord(j-k)^2."""
    z = np.ascontiguousarray(z, dtype=np.complex128)
    M = z.shape[0]
    w = _inv_chord_sq(M)
    dz = z[j] - np.delete(z, j)
    m = np.delete(np.arange(M), j)
    offs = (m - j) % M
    return float(np.sum((dz.real**2 + dz.imag**2) * w[offs - 1]))


def local_rows(z):
    """Vector of row sums: out[j] = sum_{k != j} |z_j - z_k|^2 / chord^2."""
    z = np.ascontiguousarray(z, dtype=np.complex128)
    M = z.shape[0]
    w = _inv_chord_sq(M)
    out = np.zeros(M, dtype=np.float64)
    for m in range(1, M):
        dz = z - np.roll(z, m)
        out += w[m - 1] * (dz.real**2 + dz.imag**2)
    return out


def lemma6_offdiag(z, eta):
    """sum_{j != k} |z_j - z_k|^(2 - 2 eta) / chord(j-k)^2."""
    z = np.ascontiguousarray(z, dtype=np.complex128)
    M = z.shape[0]
    w = _inv_chord_sq(M)
    half = M // 2
    q = 1.0 - eta
    partial = np.empty(half, dtype=np.float64)
    for m in range(1, half + 1):
        dz = z - np.roll(z, m)
        partial[m - 1] = np.sum((dz.real**2 + dz.imag**2) ** q)
    total = 2.0 * np.sum(partial * w[:half])
    if M % 2 == 0:
        total -= partial[half - 1] * w[half - 1]
    return float(total)


def crs_row(x, j):
    """sum_{k != j} (x_j^2 - x_k^2 - 2 x_k^2 log(x_j/x_k)) / chord(j-k)^2.

    x must be strictly positive.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    M = x.shape[0]
    w = _inv_chord_sq(M)
    xk = np.delete(x, j)
    m = np.delete(np.arange(M), j)
    offs = (m - j) % M
    vals = x[j] ** 2 - xk**2 - 2.0 * xk**2 * (np.log(x[j]) - np.log(xk))
    return float(np.sum(vals * w[offs - 1]))


def gamma_split(cmp, asq, u, bsq, p):
    """Restricted pair sums over Gamma = {(j, k) : cmp_k <= cmp_j}.

    Returns (A, B) with
      A = sum_Gamma asq_j |u_j - u_k|^2 / chord^2
      B = sum_Gamma bsq_k |p_j - p_k|^2 / chord^2
    Diagonal pairs contribute nothing (both differences vanish) and are
    excluded.  Ties cmp_k == cmp_j are kept for both orientations.
    """
    cmp = np.ascontiguousarray(cmp, dtype=np.float64)
    asq = np.ascontiguousarray(asq, dtype=np.float64)
    u = np.ascontiguousarray(u, dtype=np.complex128)
    bsq = np.ascontiguousarray(bsq, dtype=np.float64)
    p = np.ascontiguousarray(p, dtype=np.complex128)
    M = cmp.shape[0]
    w = _inv_chord_sq(M)
    pa = np.empty(M - 1, dtype=np.float64)
    pb = np.empty(M - 1, dtype=np.float64)
    for m in range(1, M):
        mask = np.roll(cmp, m) <= cmp  # k = j - m (mod M)
        du = u - np.roll(u, m)
        dp = p - np.roll(p, m)
        pa[m - 1] = np.sum((du.real**2 + du.imag**2) * asq * mask)
        pb[m - 1] = np.sum((dp.real**2 + dp.imag**2) * np.roll(bsq, m) * mask)
    # offset m pairs j with k = j - m, so the weight is 1/chord(m)^2
    return float(np.sum(pa * w)), float(np.sum(pb * w))
