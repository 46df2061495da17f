"""Functions on the unit circle: uniform grid samples and Fourier series.

Grids are uniform in angle with a power-of-two sample count, so analysis
and synthesis are plain FFTs and every quadrature downstream is a periodic
trapezoidal sum.  |z - z'| always means the chordal distance
2 |sin((theta - theta')/2)|.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GridFunction",
    "FourierSeries",
    "analyze",
    "synthesize",
    "pointwise_mul",
    "shift",
    "lip_seminorm",
    "chord",
]


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def chord(dtheta):
    """Chordal distance |e^{i a} - e^{i b}| for angle difference a - b."""
    return np.abs(2.0 * np.sin(np.asarray(dtheta) / 2.0))


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex samples at the angles theta_k = 2 pi k / M, M a power of two."""

    samples: np.ndarray

    def __post_init__(self):
        s = np.ascontiguousarray(self.samples, dtype=np.complex128)
        if s.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if s.shape[0] < 4 or not _is_pow2(s.shape[0]):
            raise ValueError("sample count must be a power of two >= 4")
        if not np.all(np.isfinite(s.view(np.float64))):
            raise ValueError("samples must be finite")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def M(self) -> int:
        return self.samples.shape[0]

    @property
    def theta(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.M) / self.M

    @classmethod
    def from_function(cls, fn, M: int) -> "GridFunction":
        theta = 2.0 * np.pi * np.arange(M) / M
        return cls(np.asarray(fn(theta), dtype=np.complex128))

    def is_real(self, tol: float = 1e-12) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.samples.real))))
        return float(np.max(np.abs(self.samples.imag))) <= tol * scale

    def real_values(self) -> np.ndarray:
        if not self.is_real():
            raise ValueError("grid function is not real")
        return self.samples.real

    def to_dict(self) -> dict:
        return {
            "kind": "grid",
            "M": self.M,
            "re": self.samples.real.tolist(),
            "im": self.samples.imag.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GridFunction":
        if d.get("kind") != "grid":
            raise ValueError("not a grid-function object")
        s = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
        if len(s) != d.get("M", len(s)):
            raise ValueError("M does not match sample count")
        return cls(s)


@dataclass(frozen=True, eq=False)
class FourierSeries:
    """Coefficients c_n for n in [-N, N]; coeffs[N + n] holds c_n."""

    coeffs: np.ndarray
    truncated: bool = field(default=False)

    def __post_init__(self):
        c = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        if c.ndim != 1 or c.shape[0] % 2 != 1:
            raise ValueError("coeffs must have odd length 2N + 1")
        if not np.all(np.isfinite(c.view(np.float64))):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def N(self) -> int:
        return (self.coeffs.shape[0] - 1) // 2

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    def coeff(self, n: int) -> complex:
        if abs(n) > self.N:
            return 0.0 + 0.0j
        return complex(self.coeffs[n + self.N])

    @classmethod
    def from_pairs(cls, pairs: dict, N: int | None = None) -> "FourierSeries":
        """Build from {n: c_n}; bandwidth defaults to max |n| present."""
        if N is None:
            N = max((abs(int(n)) for n in pairs), default=0)
        c = np.zeros(2 * N + 1, dtype=np.complex128)
        for n, v in pairs.items():
            c[int(n) + N] = v
        return cls(c)

    def to_dict(self) -> dict:
        return {
            "kind": "series",
            "N": self.N,
            "re": self.coeffs.real.tolist(),
            "im": self.coeffs.imag.tolist(),
            "truncated": self.truncated,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FourierSeries":
        if d.get("kind") != "series":
            raise ValueError("not a series object")
        c = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
        return cls(c, truncated=bool(d.get("truncated", False)))


def analyze(g: GridFunction, N: int) -> FourierSeries:
    """Discrete Fourier coefficients c_n = (1/M) sum_k g_k e^{-i n theta_k}.

    Exact for trigonometric polynomials of degree <= N when M > 2N.
    """
    M = g.M
    if N < 0:
        raise ValueError("bandwidth must be nonnegative")
    if 2 * N + 1 > M:
        raise ValueError(f"bandwidth exceeds Nyquist limit of the grid (2N+1={2*N+1} > M={M})")
    spec = np.fft.fft(g.samples) / M
    c = np.empty(2 * N + 1, dtype=np.complex128)
    for n in range(-N, N + 1):
        c[n + N] = spec[n % M]
    kept = float(np.sum(np.abs(c) ** 2))
    total = float(np.sum(np.abs(spec) ** 2))
    truncated = total > 0 and (total - kept) > 1e-24 * total
    return FourierSeries(c, truncated=truncated)


def synthesize(s: FourierSeries, M: int) -> GridFunction:
    """Evaluate the series on the M-point grid (requires M > 2N, M a power of two)."""
    if not _is_pow2(M) or M < 4:
        raise ValueError("M must be a power of two >= 4")
    if M <= 2 * s.N:
        raise ValueError(f"grid too coarse for bandwidth (M={M} <= 2N={2*s.N})")
    spec = np.zeros(M, dtype=np.complex128)
    for n in range(-s.N, s.N + 1):
        spec[n % M] = s.coeffs[n + s.N]
    return GridFunction(np.fft.ifft(spec) * M)


def pointwise_mul(g: GridFunction, h: GridFunction) -> GridFunction:
    """Sample-wise product.

    Callers re-analyzing the product must first synthesize both factors on
    a grid of at least twice the combined bandwidth to avoid aliasing.
    """
    if g.M != h.M:
        raise ValueError(f"mismatched grids (M={g.M} vs M={h.M})")
    return GridFunction(g.samples * h.samples)


def shift(s: FourierSeries, k: int) -> FourierSeries:
    """Multiply by zeta^k: reindex c_n -> c_{n-k}; bandwidth grows to N + |k|."""
    k = int(k)
    if k == 0:
        return s
    N2 = s.N + abs(k)
    c = np.zeros(2 * N2 + 1, dtype=np.complex128)
    c[(k - s.N) + N2 : (k + s.N) + N2 + 1] = s.coeffs
    return FourierSeries(c, truncated=s.truncated)


def lip_seminorm(g: GridFunction, beta: float) -> float:
    """Max of |g_j - g_k| / chord(j,k)^beta over grid pairs.

    A lower bound for the Lip_beta seminorm, non-decreasing under grid
    refinement.
    """
    if not 0.0 < beta <= 1.0:
        raise ValueError("beta must lie in (0, 1]")
    M = g.M
    z = g.samples
    best = 0.0
    for m in range(1, M // 2 + 1):
        dz = z - np.roll(z, m)
        c = 2.0 * np.sin(np.pi * m / M)
        best = max(best, float(np.max(np.abs(dz))) / c**beta)
    return best
