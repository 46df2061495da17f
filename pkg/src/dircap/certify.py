"""End-to-end cyclicity certificate experiments.

A certificate run sweeps a decreasing eps ladder, builds the outer
multiplier p_eps for the chosen family, forms the product with the test
function on the grid, and records the norm components together with the
restricted-pair diagnostics A_eps, B_eps.  The restriction set Gamma keeps
pairs whose comparison value at zeta' does not exceed the one at zeta
(|f| for the squared-function family, d(., E) for the distance family);
ties enter both orientations, matching the symmetric double-count in the
norm estimate.

Limits cannot be certified numerically: decay verdicts are finite-decade
trend statements (final vs initial row) with fixed factor thresholds.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .capacity import capacity_of
from .circle_fn import GridFunction
from .geometry import CircleSet, build_E_beta, build_cantor, carleson_integral, dist_to_set
from .norms import spectral_energies
from .outer import EpsilonSchedule, p_eps_thm2, p_eps_thm3

__all__ = [
    "CertificateRow",
    "CertificateReport",
    "build_test_function",
    "mollified_test_function",
    "szego_check",
    "certificate_thm2",
    "certificate_thm3",
    "run_suite",
    "write_report_csv",
    "DEFAULT_EPS",
]

DEFAULT_EPS = (1e-1, 1e-2, 1e-3, 1e-4)

#: positive decay verdict: final total norm below this multiple of the initial
DECAY_FACTOR = 0.5
#: negative control verdict: final total norm at least this multiple of the initial
NO_DECAY_FACTOR = 0.9


@dataclass(frozen=True)
class CertificateRow:
    eps: float
    m_eps: float
    l2_sq: float
    dirichlet_energy: float
    total_norm: float
    a_eps: float | None = None
    b_eps: float | None = None

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "M_eps": self.m_eps,
            "l2_sq": self.l2_sq,
            "dirichlet_energy": self.dirichlet_energy,
            "total_norm": self.total_norm,
            "A_eps": self.a_eps,
            "B_eps": self.b_eps,
        }


@dataclass(frozen=True)
class CertificateReport:
    rows: tuple
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        rows = tuple(self.rows)
        if not rows:
            raise ValueError("schedule must be nonempty")
        for r in rows:
            if abs(r.total_norm**2 - (r.l2_sq + r.dirichlet_energy)) > 1e-10 * max(1.0, r.total_norm**2):
                raise ValueError("total_norm^2 must equal l2_sq + dirichlet_energy")
        if any(rows[i].eps <= rows[i + 1].eps for i in range(len(rows) - 1)):
            raise ValueError("eps must be strictly decreasing down the rows")
        object.__setattr__(self, "rows", rows)

    @property
    def total_norms(self) -> np.ndarray:
        return np.array([r.total_norm for r in self.rows])

    @property
    def m_eps_values(self) -> np.ndarray:
        return np.array([r.m_eps for r in self.rows])

    def final_over_initial(self) -> float:
        t = self.total_norms
        return float(t[-1] / t[0])

    def verdicts(self) -> dict:
        t = self.total_norms
        m = self.m_eps_values
        ratio = self.final_over_initial()
        return {
            "final_over_initial": ratio,
            "monotone_decay": bool(np.all(np.diff(t) < 0)),
            "halved": bool(ratio < DECAY_FACTOR),
            "no_decay": bool(ratio >= NO_DECAY_FACTOR),
            "m_eps_increasing": bool(np.all(np.diff(m) > 0)),
        }

    def to_dict(self) -> dict:
        return {
            "kind": "certificate",
            "metadata": dict(self.metadata),
            "rows": [r.to_dict() for r in self.rows],
            "verdicts": self.verdicts(),
        }


def write_report_csv(report: CertificateReport, path) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["eps", "M_eps", "l2_sq", "dirichlet_energy", "total_norm", "A_eps", "B_eps"])
        for r in report.rows:
            wr.writerow([r.eps, r.m_eps, r.l2_sq, r.dirichlet_energy, r.total_norm,
                         "" if r.a_eps is None else r.a_eps,
                         "" if r.b_eps is None else r.b_eps])


def build_test_function(E: CircleSet, beta: float, M: int) -> GridFunction:
    """f = d(., E)^beta on the M-point grid: real, nonnegative, Lip_beta,
    vanishing exactly on the stored set."""
    if not 0.0 < beta <= 1.0:
        raise ValueError("beta must lie in (0, 1]")
    theta = 2.0 * np.pi * np.arange(M) / M
    d = dist_to_set(theta, E)
    return GridFunction((d**beta).astype(np.complex128))


def mollified_test_function(E: CircleSet, M: int, width: float = 0.1) -> GridFunction:
    """Distance to E through the smooth ramp x^2 / (x + width).

    Vanishes to second order on E (the ramp kills the distance corner
    there) while keeping the zero set exactly E; behaves like the raw
    distance once d >> width.
    """
    if width <= 0:
        raise ValueError("mollify width must be positive")
    theta = 2.0 * np.pi * np.arange(M) / M
    d = dist_to_set(theta, E)
    return GridFunction((d**2 / (d + width)).astype(np.complex128))


class SzegoResult(NamedTuple):
    values: tuple
    diverging: bool


def szego_check(f: GridFunction, eps_ladder=DEFAULT_EPS) -> SzegoResult:
    """Floored log-integrals int log(|f| + eps) |dz| down the eps ladder.

    The diverging flag is set when the sequence still decreases by more
    than 1% of its magnitude between the last two rungs (Cauchy-type
    stabilization failure).
    """
    a = np.abs(f.samples)
    if float(np.max(a)) == 0.0:
        raise ValueError("f must not be identically zero")
    ladder = tuple(float(e) for e in eps_ladder)
    if any(ladder[i] <= ladder[i + 1] for i in range(len(ladder) - 1)):
        raise ValueError("eps ladder must be strictly decreasing")
    values = tuple(float(2.0 * np.pi * np.mean(np.log(a + e))) for e in ladder)
    diverging = False
    if len(values) >= 2:
        drop = values[-2] - values[-1]
        diverging = drop > 0.01 * max(1.0, abs(values[-1]))
    return SzegoResult(values, diverging)


def _subsample_stride(M: int, split_resolution: int) -> int:
    stride = 1
    while M // stride > split_resolution:
        stride *= 2
    return stride


def _split_sums(cmp, asq, u, bsq, p, M_split: int) -> tuple[float, float]:
    """Quadrature of the restricted double integrals (no 1/4 pi^2 factor)."""
    h = 2.0 * np.pi / M_split
    A, B = _kernels.gamma_split(cmp, asq, u, bsq, p)
    return A * h * h, B * h * h


def _oversample(g: GridFunction, factor: int) -> GridFunction:
    """Trigonometric interpolation onto a factor-times finer grid."""
    if factor == 1:
        return g
    M = g.M
    M2 = factor * M
    spec = np.fft.fft(g.samples) / M
    spec2 = np.zeros(M2, dtype=np.complex128)
    half = M // 2
    spec2[:half] = spec[:half]
    spec2[M2 - half + 1:] = spec[half + 1:]
    # split the Nyquist bin symmetrically to preserve realness
    spec2[half] = 0.5 * spec[half]
    spec2[M2 - half] = 0.5 * spec[half]
    return GridFunction(np.fft.ifft(spec2) * M2)


def certificate_thm2(
    abs_f: GridFunction,
    schedule: EpsilonSchedule,
    oversample: int = 2,
    split_resolution: int = 8192,
) -> CertificateReport:
    """Certificate sweep for the squared-function family.

    For each eps the multiplier has modulus e^{-M_eps}/(|f| + eps); the
    recorded norms are those of p_eps f^2 sampled on an oversample-times
    finer grid (trigonometric interpolation of |f|, clamped at zero).
    A_eps and B_eps restrict the pair sum to |f(z')| <= |f(z)|.
    """
    a0 = abs_f.real_values()
    if np.any(a0 < 0):
        raise ValueError("modulus samples must be nonnegative")
    if oversample < 1 or (oversample & (oversample - 1)) != 0:
        raise ValueError("oversample must be a power of two")
    fg = _oversample(abs_f, oversample)
    a = np.maximum(fg.samples.real, 0.0)
    work = GridFunction(a.astype(np.complex128))
    M2 = work.M
    stride = _subsample_stride(M2, split_resolution)
    Ms = M2 // stride
    rows = []
    for eps in schedule.values:
        p, m_eps = p_eps_thm2(work, eps)
        pv = p.boundary.samples
        prod = pv * a * a
        l2, en = spectral_energies(GridFunction(prod))
        sub = slice(None, None, stride)
        A, B = _split_sums(a[sub], np.abs(pv[sub]) ** 2, (a * a)[sub],
                           (a * a)[sub] ** 2, pv[sub], Ms)
        rows.append(CertificateRow(eps, m_eps, l2, en, float(np.sqrt(l2 + en)), A, B))
    meta = {
        "theorem": 2,
        "M": M2,
        "input_M": abs_f.M,
        "oversample": oversample,
        "split_resolution": Ms,
        "beta": schedule.beta,
        "gamma": None,
    }
    return CertificateReport(tuple(rows), meta)


def certificate_thm3(
    E: CircleSet,
    schedule: EpsilonSchedule,
    M: int,
    split_resolution: int = 8192,
) -> CertificateReport:
    """Certificate sweep for the distance family on the set E.

    f = d(., E)^beta; the multiplier has modulus
    e^{-M_eps}/(d^gamma + eps)^(1/2).  A_eps and B_eps restrict the pair
    sum to d(z', E) <= d(z, E).  Parameter constraints are validated
    before any computation.
    """
    schedule.validate_thm3()
    theta = 2.0 * np.pi * np.arange(M) / M
    d = dist_to_set(theta, E)
    f = d**schedule.beta
    stride = _subsample_stride(M, split_resolution)
    Ms = M // stride
    h = 2.0 * np.pi / M
    res_warnings = []
    rows = []
    for eps in schedule.values:
        if eps ** (1.0 / schedule.gamma) < h:
            res_warnings.append(eps)
            warnings.warn(
                f"eps^(1/gamma) = {eps ** (1.0 / schedule.gamma):.3g} below grid "
                f"spacing {h:.3g}; quadrature may not resolve the modulus floor",
                stacklevel=2,
            )
        p, m_eps = p_eps_thm3(E, schedule.gamma, eps, M)
        pv = p.boundary.samples
        prod = pv * f
        l2, en = spectral_energies(GridFunction(prod))
        sub = slice(None, None, stride)
        A, B = _split_sums(d[sub], np.abs(pv[sub]) ** 2, f[sub].astype(np.complex128),
                           f[sub] ** 2, pv[sub], Ms)
        rows.append(CertificateRow(eps, m_eps, l2, en, float(np.sqrt(l2 + en)), A, B))
    meta = {
        "theorem": 3,
        "M": M,
        "split_resolution": Ms,
        "beta": schedule.beta,
        "gamma": schedule.gamma,
        "eta": schedule.eta,
        "set": E.to_dict()["truncation"] or {"kind": E.kind, "size": int(E.angles.size)},
        "resolution_warnings": res_warnings,
    }
    return CertificateReport(tuple(rows), meta)


def set_from_config(spec: dict) -> CircleSet:
    """Build a CircleSet from a config/CLI descriptor or serialized form."""
    if not isinstance(spec, dict):
        raise ValueError("set descriptor must be an object")
    builder = spec.get("builder")
    if builder == "e_beta":
        return build_E_beta(float(spec["beta"]), int(spec["n_max"]))
    if builder == "cantor":
        return build_cantor(
            spec["ratios"], int(spec["depth"]),
            float(spec.get("arc_start", 0.0)), float(spec.get("arc_length", np.pi)),
        )
    if builder == "points":
        return CircleSet.from_points(spec["angles"])
    if "kind" in spec:
        return CircleSet.from_dict(spec)
    raise ValueError("unknown set descriptor (expected builder or kind)")


BATTERIES = ("smoke", "thm2", "thm3", "controls", "classify")

#: canned thm3 run on the standard countable test set
THM3_EBETA_SET = {"builder": "e_beta", "beta": 1.0, "n_max": 10**4}


def run_suite(config: dict) -> dict:
    """Run a named battery and return one JSON-ready bundle.

    Batteries: 'thm2' and 'thm3' run the positive certificates on the
    configured set; 'controls' runs the no-decay cases (f identically 1,
    single-point set); 'smoke' is 'controls' at a small grid; 'classify'
    reports capacity and Carleson data for the configured set.
    'thm3-Ebeta' is shorthand for 'thm3' on the standard countable set.
    An empty battery list is allowed and yields an empty bundle.
    """
    batteries = config.get("battery", [])
    if isinstance(batteries, str):
        batteries = [batteries]
    if "thm3-Ebeta" in batteries:
        batteries = ["thm3" if b == "thm3-Ebeta" else b for b in batteries]
        config = dict(config)
        config.setdefault("set", THM3_EBETA_SET)
    for b in batteries:
        if b not in BATTERIES:
            raise ValueError(f"unknown battery name {b!r}")
    M = int(config.get("M", 2**14))
    eps = tuple(config.get("eps", DEFAULT_EPS))
    beta = float(config.get("beta", 0.75))
    gamma = float(config.get("gamma", 0.4))
    eta = float(config.get("eta", 0.3))
    width = float(config.get("mollify_width", 0.1))
    split = int(config.get("split_resolution", 8192))
    reports = []
    for b in batteries:
        if b in ("smoke", "controls"):
            Mb = min(M, 2048) if b == "smoke" else M
            ones = GridFunction(np.ones(Mb, dtype=np.complex128))
            rep1 = certificate_thm2(ones, EpsilonSchedule(eps, beta=1.0),
                                    oversample=1, split_resolution=split)
            rep1.metadata["label"] = f"{b}:constant-one"
            single = CircleSet.from_points([1.0])
            sched = EpsilonSchedule(eps, beta=0.75, gamma=0.1, eta=0.3)
            rep2 = certificate_thm3(single, sched, Mb, split_resolution=split)
            rep2.metadata["label"] = f"{b}:single-point"
            reports += [rep1.to_dict(), rep2.to_dict()]
        elif b == "thm2":
            E = set_from_config(config["set"])
            f = mollified_test_function(E, M, width)
            rep = certificate_thm2(f, EpsilonSchedule(eps, beta=beta),
                                   split_resolution=split)
            rep.metadata["label"] = "thm2"
            rep.metadata["mollify_width"] = width
            rep.metadata["set"] = config["set"]
            reports.append(rep.to_dict())
        elif b == "thm3":
            E = set_from_config(config["set"])
            sched = EpsilonSchedule(eps, beta=beta, gamma=gamma, eta=eta)
            rep = certificate_thm3(E, sched, M, split_resolution=split)
            rep.metadata["label"] = "thm3"
            reports.append(rep.to_dict())
        elif b == "classify":
            E = set_from_config(config["set"])
            car = carleson_integral(E)
            cap = capacity_of(E, alpha=float(config.get("alpha", 0.0)),
                              resolution=int(config.get("resolution", 512)))
            reports.append({
                "kind": "classification",
                "set": config["set"],
                "carleson_integral": car.value,
                "carleson_diverging": car.diverging,
                "capacity": cap.to_dict(),
            })
    return {"kind": "bundle", "batteries": list(batteries), "reports": reports}
