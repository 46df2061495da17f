"""Norm and energy functionals on circle functions.

Spectral quantities come from Fourier coefficients; quadrature quantities
are periodic trapezoidal sums of the singular double integral
|f(z) - f(z')|^2 / |z - z'|^2 over the M x M grid.  On the diagonal that
integrand extends continuously to |df/dtheta|^2 (chordal and angular
metrics agree to first order), which we evaluate with the spectral
derivative; the fractional-power integrand drops the diagonal instead,
since its limit there is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .circle_fn import FourierSeries, GridFunction

__all__ = [
    "NormReport",
    "l2_norm_sq",
    "dirichlet_energy_spectral",
    "dirichlet_norm_sq_alpha",
    "douglas_energy",
    "local_dirichlet",
    "local_dirichlet_profile",
    "lemma6_integral",
    "crs_local_dirichlet",
    "spectral_energies",
    "spectral_derivative",
    "norm_report_spectral",
    "norm_report_quadrature",
    "Lemma6Result",
]


@dataclass(frozen=True)
class NormReport:
    l2_sq: float
    dirichlet_energy: float
    total_sq: float
    method: str
    size: int  # M for quadrature reports, N for spectral ones

    def __post_init__(self):
        if self.l2_sq < 0 or self.dirichlet_energy < 0:
            raise ValueError("norm components must be nonnegative")
        if abs(self.total_sq - (self.l2_sq + self.dirichlet_energy)) > 1e-10 * max(1.0, self.total_sq):
            raise ValueError("total_sq must equal l2_sq + dirichlet_energy")
        if self.method not in ("spectral", "quadrature"):
            raise ValueError("method must be 'spectral' or 'quadrature'")

    def to_dict(self) -> dict:
        key = "N" if self.method == "spectral" else "M"
        return {
            "l2_sq": self.l2_sq,
            "dirichlet_energy": self.dirichlet_energy,
            "total_sq": self.total_sq,
            "method": self.method,
            key: self.size,
        }


def l2_norm_sq(s: FourierSeries) -> float:
    return float(np.sum(np.abs(s.coeffs) ** 2))


def dirichlet_energy_spectral(s: FourierSeries) -> float:
    return float(np.sum(np.abs(s.coeffs) ** 2 * np.abs(s.indices)))


def dirichlet_norm_sq_alpha(s: FourierSeries, alpha: float) -> float:
    """Weighted norm sum |c_n|^2 (1 + |n|)^(1 - alpha), alpha in [0, 1)."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must lie in [0, 1)")
    return float(np.sum(np.abs(s.coeffs) ** 2 * (1.0 + np.abs(s.indices)) ** (1.0 - alpha)))


def spectral_derivative(g: GridFunction) -> np.ndarray:
    """d/dtheta via the FFT multiplier i*n (Nyquist mode annihilated)."""
    M = g.M
    n = np.fft.fftfreq(M, 1.0 / M)
    n[np.abs(n) == M // 2] = 0.0
    return np.fft.ifft(1j * n * np.fft.fft(g.samples))


def spectral_energies(g: GridFunction) -> tuple[float, float]:
    """(l2_sq, dirichlet_energy) of the samples in the band-limited sense.

    Uses the full FFT spectrum of the grid; the Nyquist bin counts with
    weight |n| = M/2.
    """
    c = np.fft.fft(g.samples) / g.M
    n = np.abs(np.fft.fftfreq(g.M, 1.0 / g.M))
    mag = np.abs(c) ** 2
    return float(np.sum(mag)), float(np.sum(mag * n))


def douglas_energy(g: GridFunction) -> float:
    """Trapezoidal value of (1/4 pi^2) times the singular double integral.

    Converges to the spectral Dirichlet energy as M grows for Lip_beta data
    with beta > 1/2, and is spectrally accurate for smooth data.
    """
    off = _kernels.douglas_offdiag(g.samples)
    diag = float(np.sum(np.abs(spectral_derivative(g)) ** 2))
    return (off + diag) / g.M**2


def local_dirichlet(g: GridFunction, j: int) -> float:
    """Local integral (1/2 pi) int |f(z_j) - f(z')|^2 / |z_j - z'|^2 |dz'|."""
    if not 0 <= j < g.M:
        raise IndexError(f"grid index out of range (j={j}, M={g.M})")
    row = _kernels.local_row(g.samples, int(j))
    dj = abs(spectral_derivative(g)[j]) ** 2
    return (row + dj) / g.M


def local_dirichlet_profile(g: GridFunction) -> np.ndarray:
    """All local integrals at once; its mean is exactly douglas_energy."""
    rows = _kernels.local_rows(g.samples)
    return (rows + np.abs(spectral_derivative(g)) ** 2) / g.M


class Lemma6Result(NamedTuple):
    value: float
    diverging: bool


def lemma6_integral(g: GridFunction, eta: float) -> Lemma6Result:
    """Fractional double integral of |f(z) - f(z')|^(2-2 eta) / |z - z'|^2.

    Diagonal pairs are dropped.  The diverging flag is a heuristic: it is
    set when the value on the even-index subgrid (half resolution) differs
    from the full-grid value by more than 10% relative.
    """
    if not 0.0 < eta < 1.0:
        raise ValueError("eta must lie in (0, 1)")
    h = 2.0 * np.pi / g.M
    value = _kernels.lemma6_offdiag(g.samples, eta) * h * h
    coarse = GridFunction(g.samples[::2])
    hc = 2.0 * h
    value_c = _kernels.lemma6_offdiag(coarse.samples, eta) * hc * hc
    diverging = abs(value - value_c) > 0.1 * max(abs(value), 1e-300)
    return Lemma6Result(float(value), bool(diverging))


def crs_local_dirichlet(g: GridFunction, j: int) -> float:
    """Local integral of an outer function from its boundary modulus.

    Evaluates (1/2 pi) int (x_j^2 - x'^2 - 2 x'^2 log(x_j/x')) / |z_j - z'|^2
    |dz'| for the strictly positive modulus samples x; the integrand is
    nonnegative (t^2 - 1 >= 2 log t).  The diagonal pair takes its limit
    2 |dx/dtheta|^2.
    """
    if not 0 <= j < g.M:
        raise IndexError(f"grid index out of range (j={j}, M={g.M})")
    x = g.real_values()
    if np.any(x <= 0.0):
        raise ValueError("modulus samples must be strictly positive")
    row = _kernels.crs_row(x, int(j))
    xg = GridFunction(x.astype(np.complex128))
    dj = 2.0 * abs(spectral_derivative(xg)[j]) ** 2
    return (row + dj) / g.M


def norm_report_spectral(s: FourierSeries) -> NormReport:
    l2 = l2_norm_sq(s)
    en = dirichlet_energy_spectral(s)
    return NormReport(l2, en, l2 + en, "spectral", s.N)


def norm_report_quadrature(g: GridFunction) -> NormReport:
    l2 = float(np.mean(np.abs(g.samples) ** 2))
    en = douglas_energy(g)
    return NormReport(l2, en, l2 + en, "quadrature", g.M)
