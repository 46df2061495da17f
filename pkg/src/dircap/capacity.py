"""Logarithmic and alpha-weighted capacities via equilibrium measures.

Measures are piecewise uniform on disjoint cells covering the stored
support of a CircleSet; point masses have infinite logarithmic energy, so
the cell width is the regularization parameter.  The alpha = 0 energy uses
the kernel matrix log(1/|z_i - z_j|) with the exact arclength self-energy
log(1/h) + 3/2 on the diagonal; for alpha > 0 only the Fourier-side
quadratic form sum |mu^(n)|^2 / n^(1-alpha) is available.

The minimizer over the probability simplex is a projected-gradient descent
(Euclidean projection by sorting) with a Barzilai-Borwein trial step and
Armijo backtracking, so the energy is non-increasing across iterations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import CircleSet

__all__ = [
    "DiscreteMeasure",
    "CapacityReport",
    "discretize_support",
    "energy_kernel",
    "energy_fourier",
    "equilibrium_measure",
    "capacity_of",
    "project_simplex",
]

TWO_PI = 2.0 * np.pi

#: energies at or below this are reported as capacity infinity
ENERGY_FLOOR = 1e-6


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Probability measure that is uniform on each of its cells."""

    centers: np.ndarray
    widths: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        c = np.ascontiguousarray(self.centers, dtype=float)
        h = np.ascontiguousarray(self.widths, dtype=float)
        w = np.ascontiguousarray(self.weights, dtype=float)
        if not (c.shape == h.shape == w.shape) or c.ndim != 1:
            raise ValueError("centers, widths, weights must be equal-length vectors")
        if np.any(h <= 0):
            raise ValueError("cell widths must be positive")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if abs(np.sum(w) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        order = np.argsort(c)
        c, h, w = c[order], h[order], w[order]
        rights = c + h / 2.0
        lefts = np.roll(c - h / 2.0, -1).copy()
        lefts[-1] += TWO_PI
        if np.any(rights - lefts > 1e-12):
            raise ValueError("cells must be pairwise disjoint")
        for name, arr in (("centers", c), ("widths", h), ("weights", w)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def size(self) -> int:
        return self.centers.shape[0]

    def to_dict(self) -> dict:
        return {
            "kind": "measure",
            "centers": self.centers.tolist(),
            "widths": self.widths.tolist(),
            "weights": self.weights.tolist(),
        }


@dataclass(frozen=True)
class CapacityReport:
    energy: float
    capacity: float  # math.inf sentinel when energy <= ENERGY_FLOOR
    alpha: float
    resolution: int
    iterations: int
    converged: bool
    resolution_gap: float | None = None  # |energy(R) - energy(2R)| when laddered
    energy_history: tuple | None = None  # per-iteration energies when tracked

    def __post_init__(self):
        if np.isfinite(self.capacity) and self.energy > ENERGY_FLOOR:
            if abs(self.capacity * self.energy - 1.0) > 1e-9:
                raise ValueError("capacity must be the reciprocal of the energy")

    def to_dict(self) -> dict:
        return {
            "energy": self.energy,
            "capacity": None if not np.isfinite(self.capacity) else self.capacity,
            "capacity_infinite": not np.isfinite(self.capacity),
            "alpha": self.alpha,
            "resolution": self.resolution,
            "iterations": self.iterations,
            "converged": self.converged,
            "resolution_gap": self.resolution_gap,
        }


def discretize_support(E: CircleSet, R: int) -> tuple[np.ndarray, np.ndarray]:
    """Cells covering the stored support of E at resolution R.

    Interval sets are subdivided into ~R cells proportionally to length
    (at least one per interval).  Point sets get one cell per point whose
    width is min(2 pi / R, 80% of the nearest neighbor distance), so R
    controls the regularization width.
    """
    if R < 8:
        raise ValueError("resolution must be at least 8")
    if E.kind == "intervals":
        iv = E.intervals
        lens = iv[:, 1] - iv[:, 0]
        total = float(np.sum(lens))
        counts = np.maximum(1, np.rint(R * lens / total).astype(int))
        centers, widths = [], []
        for (a, b), n in zip(iv, counts):
            h = (b - a) / n
            centers.append(a + h * (np.arange(n) + 0.5))
            widths.append(np.full(n, h))
        return np.concatenate(centers), np.concatenate(widths)
    pts = E.points
    if pts.size == 1:
        return pts.copy(), np.array([TWO_PI / R])
    nxt = np.roll(pts, -1) - pts
    nxt[-1] += TWO_PI
    prv = np.roll(nxt, 1)
    nearest = np.minimum(nxt, prv)
    widths = np.minimum(TWO_PI / R, 0.8 * nearest)
    return pts.copy(), widths


def _kernel_matrix(centers: np.ndarray, widths: np.ndarray) -> np.ndarray:
    diff = centers[:, None] - centers[None, :]
    with np.errstate(divide="ignore"):
        K = -np.log(np.abs(2.0 * np.sin(diff / 2.0)))
    np.fill_diagonal(K, np.log(1.0 / widths) + 1.5)
    return K


def _mu_hat_matrix(centers: np.ndarray, widths: np.ndarray, N: int) -> np.ndarray:
    """C[n-1, i] = exp(-i n theta_i) sinc(n h_i / 2) for n = 1..N."""
    n = np.arange(1, N + 1, dtype=float)
    phase = np.exp(-1j * np.outer(n, centers))
    s = np.sinc(np.outer(n, widths / 2.0) / np.pi)
    return phase * s


def _fourier_matrix(centers, widths, N: int, alpha: float) -> np.ndarray:
    C = _mu_hat_matrix(centers, widths, N)
    lam = 1.0 / np.arange(1, N + 1, dtype=float) ** (1.0 - alpha)
    return np.real(C.conj().T @ (lam[:, None] * C))


def energy_kernel(mu: DiscreteMeasure) -> float:
    """Quadratic logarithmic energy with the cell self-energy diagonal."""
    K = _kernel_matrix(mu.centers, mu.widths)
    return float(mu.weights @ K @ mu.weights)


def energy_fourier(mu: DiscreteMeasure, N: int, alpha: float = 0.0) -> float:
    """Truncated spectral energy sum_{n=1}^N |mu^(n)|^2 / n^(1-alpha).

    mu^(n) uses the exact per-cell integral of e^{-i n theta} (sinc
    factor), not a point mass.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must lie in [0, 1)")
    C = _mu_hat_matrix(mu.centers, mu.widths, N)
    hats = C @ mu.weights
    lam = 1.0 / np.arange(1, N + 1, dtype=float) ** (1.0 - alpha)
    return float(np.sum(lam * np.abs(hats) ** 2))


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sorting method)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    rho = np.nonzero(u * np.arange(1, v.size + 1) > (css - 1.0))[0][-1]
    tau = (css[rho] - 1.0) / (rho + 1.0)
    return np.maximum(v - tau, 0.0)


def _default_fourier_truncation(widths: np.ndarray) -> int:
    return int(min(16384, max(64, np.ceil(8.0 / float(np.min(widths))))))


def equilibrium_measure(
    E: CircleSet,
    R: int = 512,
    alpha: float = 0.0,
    tol: float = 1e-8,
    max_iter: int = 5000,
    track_energy: bool = False,
) -> tuple[DiscreteMeasure, CapacityReport]:
    """Minimize the discrete energy over weights on cells covering E.

    Projected gradient on the simplex with a Barzilai-Borwein trial step
    and Armijo backtracking; the energy never increases.  Convergence
    means unit-step projected-gradient norm <= tol; hitting max_iter
    returns the best iterate with converged=False rather than raising.
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must lie in [0, 1)")
    centers, widths = discretize_support(E, R)
    if alpha == 0.0:
        Q = _kernel_matrix(centers, widths)
    else:
        Q = _fourier_matrix(centers, widths, _default_fourier_truncation(widths), alpha)
    n = centers.size
    w = np.full(n, 1.0 / n)
    Qw = Q @ w
    energy = float(w @ Qw)
    # crude largest-eigenvalue estimate for the initial step
    v = np.full(n, 1.0 / np.sqrt(n))
    for _ in range(8):
        v = Q @ v
        nv = np.linalg.norm(v)
        if nv == 0:
            break
        v /= nv
    lam_max = float(v @ Q @ v) if n > 1 else float(Q[0, 0])
    step = 1.0 / max(abs(lam_max), 1e-12)
    base_step = step
    iterations = 0
    converged = False
    fail_streak = 0
    history = [energy] if track_energy else None
    for it in range(1, max_iter + 1):
        iterations = it
        grad = 2.0 * Qw
        pg = float(np.linalg.norm(w - project_simplex(w - grad)))
        if pg <= tol:
            converged = True
            iterations = it - 1
            break
        s = step
        accepted = False
        for _ in range(60):
            w_new = project_simplex(w - s * grad)
            Qw_new = Q @ w_new
            e_new = float(w_new @ Qw_new)
            if e_new <= energy + 1e-4 * float(grad @ (w_new - w)) or e_new <= energy:
                accepted = True
                break
            s *= 0.5
        if not accepted or e_new > energy:
            # retry from the safe 1/lambda_max step before giving up
            fail_streak += 1
            step = base_step
            if fail_streak >= 2:
                break  # stationary at float precision
            continue
        fail_streak = 0
        dw = w_new - w
        dg = 2.0 * (Qw_new - Qw)
        denom = float(dw @ dg)
        if denom > 1e-18:
            step = min(max(float(dw @ dw) / denom, 1e-14), 1e8)
        w, Qw, energy = w_new, Qw_new, e_new
        if history is not None:
            history.append(energy)
    mu = DiscreteMeasure(centers, widths, w)
    cap = np.inf if energy <= ENERGY_FLOOR else 1.0 / energy
    report = CapacityReport(
        energy=energy,
        capacity=cap,
        alpha=alpha,
        resolution=int(centers.size),
        iterations=iterations,
        converged=converged,
        energy_history=None if history is None else tuple(history),
    )
    return mu, report


def capacity_of(
    E: CircleSet,
    alpha: float = 0.0,
    resolution: int = 512,
    tol: float = 1e-8,
    max_iter: int = 5000,
) -> CapacityReport:
    """Equilibrium energy on the (R, 2R) ladder; reports the finer value
    with the inter-resolution gap as an error estimate.
    """
    _, coarse = equilibrium_measure(E, resolution, alpha, tol, max_iter)
    _, fine = equilibrium_measure(E, 2 * resolution, alpha, tol, max_iter)
    return CapacityReport(
        energy=fine.energy,
        capacity=fine.capacity,
        alpha=alpha,
        resolution=fine.resolution,
        iterations=fine.iterations,
        converged=fine.converged,
        resolution_gap=abs(fine.energy - coarse.energy),
    )
