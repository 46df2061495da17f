"""Outer functions from prescribed boundary modulus, and the certificate
multipliers used by the cyclicity experiments.

Everything lives on the boundary: an outer function with log-modulus u is
realized as exp(u + i u~) where u~ is the harmonic conjugate (spectral
multiplier -i sgn(n)), and its value at the origin is exp(mean u).  The
certificate builders floor their moduli by eps before taking logs, so the
log-modulus is always finite on the grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circle_fn import GridFunction
from .geometry import CircleSet, dist_to_set

__all__ = [
    "OuterFunction",
    "EpsilonSchedule",
    "conjugate",
    "outer_from_log_modulus",
    "p_eps_thm2",
    "p_eps_thm3",
    "f_eps_modulus",
]


@dataclass(frozen=True, eq=False)
class OuterFunction:
    boundary: GridFunction
    log_modulus: GridFunction
    value_at_zero: complex

    def __post_init__(self):
        mod = np.abs(self.boundary.samples)
        target = np.exp(self.log_modulus.samples.real)
        if np.max(np.abs(mod - target) / np.maximum(target, 1e-300)) > 1e-8:
            raise ValueError("boundary modulus does not match log-modulus")
        expected = np.exp(np.mean(self.log_modulus.samples.real))
        if abs(self.value_at_zero - expected) > 1e-8 * max(1.0, expected):
            raise ValueError("value at zero must equal exp(mean log-modulus)")

    @property
    def M(self) -> int:
        return self.boundary.M

    def to_dict(self) -> dict:
        return {"kind": "outer", "boundary": self.boundary.to_dict(),
                "value_at_zero": [self.value_at_zero.real, self.value_at_zero.imag]}


def conjugate(u: GridFunction) -> GridFunction:
    """Harmonic conjugate: coefficient multiplier -i sgn(n), mean removed.

    The Nyquist mode is annihilated (its sign is ambiguous and keeping it
    would break realness).
    """
    vals = u.real_values()
    M = u.M
    n = np.fft.fftfreq(M, 1.0 / M)
    mult = -1j * np.sign(n)
    mult[np.abs(n) == M // 2] = 0.0
    tilde = np.fft.ifft(mult * np.fft.fft(vals)).real
    return GridFunction(tilde.astype(np.complex128))


def outer_from_log_modulus(logw: GridFunction) -> OuterFunction:
    """Boundary trace exp(u + i u~) of the outer function with |F| = e^u."""
    u = logw.real_values()
    if not np.all(np.isfinite(u)):
        raise ValueError("log-modulus must be finite at every sample")
    tilde = conjugate(logw).samples.real
    boundary = GridFunction(np.exp(u + 1j * tilde))
    value0 = complex(np.exp(np.mean(u)))
    return OuterFunction(boundary, GridFunction(u.astype(np.complex128)), value0)


@dataclass(frozen=True)
class EpsilonSchedule:
    """Decreasing eps ladder plus the exponents of the certificate family.

    For the distance-based (thm3) family the constraints
    eta in (0, (2 beta - 1)/(2 beta)), gamma < 2 beta eta and gamma < 2 beta
    are recorded here and checked by validate_thm3().
    """

    values: tuple
    beta: float
    gamma: float | None = None
    eta: float | None = None

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if len(vals) == 0:
            raise ValueError("schedule must be nonempty")
        if any(v <= 0 for v in vals):
            raise ValueError("eps values must be positive")
        if any(vals[i] <= vals[i + 1] for i in range(len(vals) - 1)):
            raise ValueError("eps values must be strictly decreasing")
        object.__setattr__(self, "values", vals)
        if not 0.0 < self.beta <= 1.0:
            raise ValueError("beta must lie in (0, 1]")

    def validate_thm3(self):
        """Raise ValueError naming the first violated constraint."""
        if self.gamma is None or self.eta is None:
            raise ValueError("gamma and eta are required")
        if not self.beta > 0.5:
            raise ValueError("beta > 1/2 is violated")
        if not self.gamma > 0:
            raise ValueError("gamma > 0 is violated")
        top = (2.0 * self.beta - 1.0) / (2.0 * self.beta)
        if not 0.0 < self.eta < top:
            raise ValueError(f"eta in (0, (2*beta-1)/(2*beta)) = (0, {top:.6g}) is violated")
        if not self.gamma < 2.0 * self.beta * self.eta:
            raise ValueError(f"gamma < 2*beta*eta = {2.0 * self.beta * self.eta:.6g} is violated")
        if not self.gamma < 2.0 * self.beta:
            raise ValueError(f"gamma < 2*beta = {2.0 * self.beta:.6g} is violated")

    def to_dict(self) -> dict:
        return {"values": list(self.values), "beta": self.beta,
                "gamma": self.gamma, "eta": self.eta}


def p_eps_thm2(abs_f: GridFunction, eps: float) -> tuple[OuterFunction, float]:
    """Outer multiplier with modulus e^{-M_eps} / (|f| + eps), normalized so
    its value at the origin is 1; M_eps = mean log(1/(|f| + eps)).
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    a = abs_f.real_values()
    if np.any(a < 0):
        raise ValueError("modulus samples must be nonnegative")
    log_floor = np.log(a + eps)
    m_eps = float(-np.mean(log_floor))
    logw = GridFunction((-m_eps - log_floor).astype(np.complex128))
    return outer_from_log_modulus(logw), m_eps


def p_eps_thm3(E: CircleSet, gamma: float, eps: float, M: int) -> tuple[OuterFunction, float]:
    """Outer multiplier with modulus e^{-M_eps} / (d(., E)^gamma + eps)^(1/2)
    on the M-point grid; M_eps = (1/2) mean log(1/(d^gamma + eps)).
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if eps <= 0:
        raise ValueError("eps must be positive")
    theta = 2.0 * np.pi * np.arange(M) / M
    d = dist_to_set(theta, E)
    log_floor = np.log(d**gamma + eps)
    m_eps = float(-0.5 * np.mean(log_floor))
    logw = GridFunction((-m_eps - 0.5 * log_floor).astype(np.complex128))
    return outer_from_log_modulus(logw), m_eps


def f_eps_modulus(kind: str, *, abs_f: GridFunction | None = None,
                  E: CircleSet | None = None, gamma: float | None = None,
                  eps: float, M: int | None = None) -> OuterFunction:
    """Outer envelope with modulus |f| + eps ('thm2') or d(., E)^gamma + eps
    ('thm3').
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if kind == "thm2":
        if abs_f is None:
            raise ValueError("abs_f is required for the thm2 envelope")
        a = abs_f.real_values()
        if np.any(a < 0):
            raise ValueError("modulus samples must be nonnegative")
        logw = np.log(a + eps)
    elif kind == "thm3":
        if E is None or gamma is None or M is None:
            raise ValueError("E, gamma and M are required for the thm3 envelope")
        if gamma <= 0:
            raise ValueError("gamma must be positive")
        theta = 2.0 * np.pi * np.arange(M) / M
        d = dist_to_set(theta, E)
        logw = np.log(d**gamma + eps)
    else:
        raise ValueError(f"unknown envelope kind {kind!r}")
    return outer_from_log_modulus(GridFunction(logw.astype(np.complex128)))
