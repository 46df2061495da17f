"""Command-line interface.

Subcommands: sets, norm, outer, capacity, carleson, certify.  All results
are JSON (CSV for per-row report tables); identical invocations produce
byte-identical output.  Exit codes: 0 success, 2 validation error (the
message names the violated precondition), 1 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, KERNEL_BACKEND
from .capacity import capacity_of, equilibrium_measure
from .circle_fn import FourierSeries, GridFunction
from .geometry import CircleSet, build_cantor, build_E_beta, carleson_integral
from .norms import norm_report_quadrature, norm_report_spectral, spectral_energies
from .outer import outer_from_log_modulus, p_eps_thm2, p_eps_thm3
from .certify import (
    CertificateReport,
    CertificateRow,
    run_suite,
    set_from_config,
    write_report_csv,
)


def _resolve_out(path: str) -> Path:
    """Relative output paths land in $DIRCAP_OUT_DIR when it is set."""
    p = Path(path)
    base = os.environ.get("DIRCAP_OUT_DIR")
    if base and not p.is_absolute():
        p = Path(base) / p
        p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _emit(payload, out: str | None, fmt: str = "json") -> None:
    meta = {"tool": "dircap", "version": __version__, "kernel_backend": KERNEL_BACKEND}
    doc = {"result": payload, "meta": meta}
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out:
        _resolve_out(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _load_set(path: str) -> CircleSet:
    doc = _load_json(path)
    if isinstance(doc, dict) and "result" in doc:
        doc = doc["result"]
    return set_from_config(doc)


def _load_fn(path: str):
    doc = _load_json(path)
    if isinstance(doc, dict) and "result" in doc:
        doc = doc["result"]
    kind = doc.get("kind")
    if kind == "grid":
        return GridFunction.from_dict(doc)
    if kind == "series":
        return FourierSeries.from_dict(doc)
    raise ValueError(f"unknown function kind {kind!r}")


def _cmd_sets(args) -> int:
    if args.beta is not None:
        if args.nmax is None:
            raise ValueError("--nmax is required with --beta")
        E = build_E_beta(args.beta, args.nmax)
    elif args.ratios is not None:
        if args.depth is None:
            raise ValueError("--depth is required with --ratios")
        ratios = [float(r) for r in args.ratios.split(",") if r]
        E = build_cantor(ratios, args.depth, args.arc_start, args.arc_length)
    elif args.points is not None:
        angles = [float(a) for a in args.points.split(",") if a]
        E = CircleSet.from_points(angles)
    else:
        raise ValueError("one of --beta, --ratios, --points is required")
    _emit(E.to_dict(), args.out)
    return 0


def _cmd_norm(args) -> int:
    fn = _load_fn(args.fn)
    out = {}
    if args.method in ("spectral", "both"):
        if isinstance(fn, GridFunction):
            l2, en = spectral_energies(fn)
            out["spectral"] = {"l2_sq": l2, "dirichlet_energy": en,
                               "total_sq": l2 + en, "method": "spectral", "M": fn.M}
        else:
            out["spectral"] = norm_report_spectral(fn).to_dict()
    if args.method in ("quadrature", "both"):
        if isinstance(fn, FourierSeries):
            raise ValueError("quadrature method requires grid samples (--fn with kind 'grid')")
        out["quadrature"] = norm_report_quadrature(fn).to_dict()
    _emit(out if args.method == "both" else out[args.method], args.out)
    return 0


def _cmd_outer(args) -> int:
    if args.log_modulus:
        g = _load_fn(args.log_modulus)
        if not isinstance(g, GridFunction):
            raise ValueError("--log-modulus must be grid samples")
        F = outer_from_log_modulus(g)
        payload = F.to_dict()
    elif args.abs_f:
        g = _load_fn(args.abs_f)
        if not isinstance(g, GridFunction):
            raise ValueError("--abs-f must be grid samples")
        if args.eps is None:
            raise ValueError("--eps is required with --abs-f")
        F, m_eps = p_eps_thm2(g, args.eps)
        payload = F.to_dict()
        payload["M_eps"] = m_eps
    elif args.set:
        if args.eps is None or args.gamma is None:
            raise ValueError("--eps and --gamma are required with --set")
        E = _load_set(args.set)
        F, m_eps = p_eps_thm3(E, args.gamma, args.eps, args.grid)
        payload = F.to_dict()
        payload["M_eps"] = m_eps
    else:
        raise ValueError("one of --log-modulus, --abs-f, --set is required")
    _emit(payload, args.out)
    return 0


def _cmd_capacity(args) -> int:
    E = _load_set(args.set)
    report = capacity_of(E, alpha=args.alpha, resolution=args.resolution,
                         tol=args.tol, max_iter=args.max_iter)
    payload = report.to_dict()
    if args.csv:
        mu, _ = equilibrium_measure(E, 2 * args.resolution, args.alpha,
                                    args.tol, args.max_iter)
        with open(_resolve_out(args.csv), "w") as fh:
            fh.write("center,weight\n")
            for c, w in zip(mu.centers, mu.weights):
                fh.write(f"{c!r},{w!r}\n")
    _emit(payload, args.out)
    return 0


def _cmd_carleson(args) -> int:
    E = _load_set(args.set)
    res = carleson_integral(E)
    _emit({"value": res.value, "diverging": res.diverging,
           "gap_count": int(E.gaps.shape[0])}, args.out)
    return 0


def _cmd_certify(args) -> int:
    if args.config:
        config = _load_json(args.config)
    else:
        config = {}
    if args.battery:
        config["battery"] = args.battery
    if args.set:
        doc = _load_json(args.set)
        config["set"] = doc["result"] if isinstance(doc, dict) and "result" in doc else doc
    for key in ("beta", "gamma", "eta", "M", "mollify_width"):
        v = getattr(args, key if key != "M" else "grid", None)
        if v is not None:
            config[key] = v
    if args.eps:
        config["eps"] = [float(e) for e in args.eps.split(",") if e]
    _validate_certify_config(config)
    bundle = run_suite(config)
    if args.csv_dir:
        args.csv_dir = str(_resolve_out(args.csv_dir))
        Path(args.csv_dir).mkdir(parents=True, exist_ok=True)
        for i, rep in enumerate(bundle["reports"]):
            if rep.get("kind") != "certificate":
                continue
            rows = tuple(
                CertificateRow(r["eps"], r["M_eps"], r["l2_sq"],
                               r["dirichlet_energy"], r["total_norm"],
                               r["A_eps"], r["B_eps"])
                for r in rep["rows"]
            )
            label = rep["metadata"].get("label", f"report{i}").replace(":", "-")
            write_report_csv(CertificateReport(rows, rep["metadata"]),
                             Path(args.csv_dir) / f"{label}.csv")
    _emit(bundle, args.out)
    return 0


def _validate_certify_config(config: dict) -> None:
    """Check numeric flags against the target preconditions up front."""
    eps = config.get("eps")
    if eps is not None:
        if any(e <= 0 for e in eps):
            raise ValueError("eps > 0 is violated")
        if any(eps[i] <= eps[i + 1] for i in range(len(eps) - 1)):
            raise ValueError("eps strictly decreasing is violated")
    beta = config.get("beta")
    if beta is not None and not 0.0 < beta <= 1.0:
        raise ValueError("beta in (0, 1] is violated")
    gamma = config.get("gamma")
    if gamma is not None and gamma <= 0:
        raise ValueError("gamma > 0 is violated")
    eta = config.get("eta")
    if eta is not None and not 0.0 < eta < 1.0:
        raise ValueError("eta in (0, 1) is violated")
    M = config.get("M")
    if M is not None and (M < 4 or (int(M) & (int(M) - 1)) != 0):
        raise ValueError("M power of two >= 4 is violated")
    batteries = config.get("battery", [])
    if isinstance(batteries, str):
        batteries = [batteries]
    needs_set = {"thm2", "thm3", "classify"}
    if any(b in needs_set for b in batteries) and "set" not in config:
        raise ValueError("a set descriptor is required for this battery")
    if "M" in config and "split_resolution" in config:
        if config["split_resolution"] < 8:
            raise ValueError("split_resolution >= 8 is violated")
    width = config.get("mollify_width")
    if width is not None and width <= 0:
        raise ValueError("mollify_width > 0 is violated")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dircap",
        description="Dirichlet-space norms, capacities and cyclicity certificates on the circle",
    )
    ap.add_argument("--threads", type=int, default=0,
                    help="parallelism budget (kernels are deterministic for any value)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sets", help="construct a circle set")
    p.add_argument("--beta", type=float, help="countable set exponent (with --nmax)")
    p.add_argument("--nmax", type=int)
    p.add_argument("--ratios", help="comma-separated Cantor gap fractions (with --depth)")
    p.add_argument("--depth", type=int)
    p.add_argument("--arc-start", type=float, default=0.0)
    p.add_argument("--arc-length", type=float, default=float(np.pi))
    p.add_argument("--points", help="comma-separated angles")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_sets)

    p = sub.add_parser("norm", help="norm report for a function file")
    p.add_argument("--fn", required=True, help="GridFunction or FourierSeries JSON")
    p.add_argument("--method", choices=["spectral", "quadrature", "both"], default="both")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_norm)

    p = sub.add_parser("outer", help="outer function from a modulus prescription")
    p.add_argument("--log-modulus", help="grid JSON of the log-modulus")
    p.add_argument("--abs-f", help="grid JSON of |f| (reciprocal-family multiplier)")
    p.add_argument("--set", help="set JSON (distance-family multiplier)")
    p.add_argument("--gamma", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--grid", type=int, default=4096, help="sample count for --set")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_outer)

    p = sub.add_parser("capacity", help="equilibrium energy and capacity of a set")
    p.add_argument("--set", required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--resolution", type=int, default=512)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=5000)
    p.add_argument("--csv", help="write (cell center, weight) table here")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_capacity)

    p = sub.add_parser("carleson", help="Carleson integral of a set")
    p.add_argument("--set", required=True)
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_carleson)

    p = sub.add_parser("certify", help="run certificate batteries")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--battery", action="append",
                   help="battery name (repeatable): smoke, thm2, thm3, controls, classify")
    p.add_argument("--set", help="set JSON file")
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--eps", help="comma-separated decreasing ladder")
    p.add_argument("--grid", type=int, dest="grid", help="sample count M")
    p.add_argument("--mollify-width", type=float, dest="mollify_width")
    p.add_argument("--csv-dir", help="write one CSV per report here")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_certify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.handler(args)
    except (ValueError, IndexError, FileNotFoundError, KeyError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        sys.stderr.write(f"failure: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
