"""Command-line front end: sweeps, eraser solves, fidelity, comparison, estimates.

Configs are JSON (schema_version "1") with frequencies in GHz, capacitances
in fF and chi in MHz, matching how device parameters are usually quoted;
this module is the single place where interface units are converted to
angular SI.  Outputs are deterministic: identical invocations produce
byte-identical CSV/JSON (floats rendered at 12 significant digits).

Exit codes: 0 ok, 2 config error, 3 evaluation error, 4 no solution.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .cascade import CascadeDevice, comparison_to_dict, compare_schemes
from .device import Mode, ParityDevice, weight_phase_curve
from .eraser import (
    EraserError,
    EraserSolution,
    eraser_residuals,
    NoSolution,
    InfeasibleDevice,
    solution_to_dict,
    solve_eraser,
)
from .estimates import estimate_report
from .fidelity import ProbePulse, eraser_quality, reports_to_dicts
from .network import NetworkError, wrap_phase

TWO_PI = 2.0 * math.pi

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_EVAL = 3
EXIT_NO_SOLUTION = 4


class ConfigError(Exception):
    """Config rejected; message carries the offending field path."""


# ----------------------------------------------------------------------
# Unit conversion boundary (the only place interface units appear)
# ----------------------------------------------------------------------

def _ghz(value: float) -> float:
    return TWO_PI * value * 1e9


def _mhz(value: float) -> float:
    return TWO_PI * value * 1e6


def _ff(value: float) -> float:
    return value * 1e-15


def _fmt(x) -> str:
    return f"{x:.12g}"


# Machine-state fields a solution must reproduce bit-exactly when fed back;
# these keep full float precision (shortest repr, still deterministic) while
# presentation values are clamped to 12 significant digits.
PRECISE_KEYS = frozenset({
    "omega_p_rad_s", "chi_rad_s", "band_rad_s", "mode_omega_rad_s",
    "residuals_rad", "theta_by_weight_rad",
})


def _json_ready(obj, precise: bool = False):
    """Clamp floats to 12 significant digits for byte-stable output."""
    if isinstance(obj, dict):
        return {k: _json_ready(v, precise or k in PRECISE_KEYS)
                for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v, precise) for v in obj]
    if isinstance(obj, float):
        return obj if precise else float(_fmt(obj))
    return obj


def _write_json(path: Path, payload: dict) -> None:
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_json_ready(payload), indent=2, sort_keys=True) + "\n")


def thread_cap() -> int:
    """PARITY_THREADS cap on internal parallelism.

    Evaluation is currently sequential (and deterministic regardless), so
    the cap is validated and reported but never exceeded by construction.
    """
    raw = os.environ.get("PARITY_THREADS", "1")
    try:
        cap = int(raw)
    except ValueError:
        raise ConfigError(f"PARITY_THREADS: expected an integer, got {raw!r}")
    if cap < 1:
        raise ConfigError(f"PARITY_THREADS: must be >= 1, got {cap}")
    return cap


# ----------------------------------------------------------------------
# Config parsing
# ----------------------------------------------------------------------

def _need(cfg: dict, key: str, kind, path: str):
    if key not in cfg:
        raise ConfigError(f"{path}.{key}: missing required field")
    value = cfg[key]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ConfigError(
            f"{path}.{key}: expected {getattr(kind, '__name__', kind)}, "
            f"got {type(value).__name__}"
        )
    return value


def _optional(cfg: dict, key: str, kind, path: str, default):
    if key not in cfg:
        return default
    return _need(cfg, key, kind, path)


def load_config(path: str) -> dict:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc}")
    try:
        cfg = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}, "
                          f"column {exc.colno}: {exc.msg}")
    if not isinstance(cfg, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    version = _need(cfg, "schema_version", str, path)
    if version != "1":
        raise ConfigError(f"{path}.schema_version: unsupported version {version!r}")
    return cfg


def parse_parallel_config(cfg: dict, path: str) -> tuple[ParityDevice, object]:
    """Returns (device template, chi spec) with chi spec 'solve' or rad/s."""
    kind = _optional(cfg, "kind", str, path, "parallel")
    if kind != "parallel":
        raise ConfigError(f"{path}.kind: expected 'parallel', got {kind!r}")
    n = _need(cfg, "n_qubits", int, path)
    if not 1 <= n <= 8:
        raise ConfigError(f"{path}.n_qubits: must be 1..8, got {n}")
    raw_modes = _need(cfg, "modes", list, path)
    if not raw_modes:
        raise ConfigError(f"{path}.modes: must be non-empty")
    modes = []
    for i, m in enumerate(raw_modes):
        mpath = f"{path}.modes[{i}]"
        if not isinstance(m, dict):
            raise ConfigError(f"{mpath}: expected an object")
        f = _need(m, "f_GHz", float, mpath)
        c = _need(m, "C_couple_fF", float, mpath)
        if f <= 0 or c <= 0:
            raise ConfigError(f"{mpath}: f_GHz and C_couple_fF must be > 0")
        modes.append(Mode(omega=_ghz(f), c_couple=_ff(c)))
    freqs = [mo.omega for mo in modes]
    if any(b <= a for a, b in zip(freqs, freqs[1:])):
        raise ConfigError(f"{path}.modes: f_GHz values must be strictly increasing")
    chi_raw = cfg.get("chi_MHz", "solve")
    if isinstance(chi_raw, str):
        if chi_raw != "solve":
            raise ConfigError(f"{path}.chi_MHz: expected a number or 'solve', "
                              f"got {chi_raw!r}")
        chi_spec = "solve"
        chi_start = _mhz(5.0)
    elif isinstance(chi_raw, (int, float)) and not isinstance(chi_raw, bool):
        if chi_raw <= 0:
            raise ConfigError(f"{path}.chi_MHz: must be > 0, got {chi_raw}")
        chi_spec = _mhz(float(chi_raw))
        chi_start = chi_spec
    else:
        raise ConfigError(f"{path}.chi_MHz: expected a number or 'solve'")
    z0 = _optional(cfg, "Z0_ohms", float, path, 50.0)
    if z0 <= 0:
        raise ConfigError(f"{path}.Z0_ohms: must be > 0, got {z0}")
    model = _optional(cfg, "resonator_model", str, path, "stub")
    if model not in ("stub", "lumped"):
        raise ConfigError(f"{path}.resonator_model: expected 'stub' or "
                          f"'lumped', got {model!r}")
    band = None
    if "band" in cfg:
        b = _need(cfg, "band", dict, path)
        lo = _need(b, "f_lo_GHz", float, f"{path}.band")
        hi = _need(b, "f_hi_GHz", float, f"{path}.band")
        if not 0 < lo < hi:
            raise ConfigError(f"{path}.band: need 0 < f_lo_GHz < f_hi_GHz")
        band = (_ghz(lo), _ghz(hi))
    try:
        dev = ParityDevice.equal_coupling(n=n, modes=modes, chi=chi_start,
                                          z0=z0, resonator_model=model,
                                          band=band)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}")
    return dev, chi_spec


def parse_cascade_config(cfg: dict, path: str) -> tuple[CascadeDevice, object]:
    kind = _optional(cfg, "kind", str, path, "cascade")
    if kind != "cascade":
        raise ConfigError(f"{path}.kind: expected 'cascade', got {kind!r}")
    n = _need(cfg, "n_qubits", int, path)
    if not 1 <= n <= 8:
        raise ConfigError(f"{path}.n_qubits: must be 1..8, got {n}")
    cav = _need(cfg, "cavity", dict, path)
    f = _need(cav, "f_GHz", float, f"{path}.cavity")
    c = _need(cav, "C_couple_fF", float, f"{path}.cavity")
    if f <= 0 or c <= 0:
        raise ConfigError(f"{path}.cavity: f_GHz and C_couple_fF must be > 0")
    chi_raw = cfg.get("chi_MHz", "tune")
    if isinstance(chi_raw, str):
        if chi_raw != "tune":
            raise ConfigError(f"{path}.chi_MHz: expected a number or 'tune', "
                              f"got {chi_raw!r}")
        chi_spec = "tune"
        chi_start = _mhz(5.0)
    elif isinstance(chi_raw, (int, float)) and not isinstance(chi_raw, bool):
        if chi_raw <= 0:
            raise ConfigError(f"{path}.chi_MHz: must be > 0, got {chi_raw}")
        chi_spec = _mhz(float(chi_raw))
        chi_start = chi_spec
    else:
        raise ConfigError(f"{path}.chi_MHz: expected a number or 'tune'")
    z0 = _optional(cfg, "Z0_ohms", float, path, 50.0)
    model = _optional(cfg, "resonator_model", str, path, "stub")
    if model not in ("stub", "lumped"):
        raise ConfigError(f"{path}.resonator_model: expected 'stub' or "
                          f"'lumped', got {model!r}")
    try:
        dev = CascadeDevice.uniform(n=n, omega_r=_ghz(f), chi=chi_start,
                                    c_couple=_ff(c), z0=z0,
                                    resonator_model=model)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}")
    return dev, chi_spec


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def cmd_sweep(ns) -> int:
    cfg = load_config(ns.config)
    dev, chi_spec = parse_parallel_config(cfg, ns.config)
    if chi_spec == "solve":
        raise ConfigError(f"{ns.config}.chi_MHz: sweep needs a numeric chi")
    from .device import analysis_band

    lo, hi = dev.band if dev.band is not None else analysis_band(dev)
    grid = np.linspace(lo, hi, ns.points)
    columns = [grid / TWO_PI / 1e9]
    header = ["f_GHz"]
    for w in range(dev.n + 1):
        curve = weight_phase_curve(dev, w)
        columns.append(np.degrees(curve.theta(grid)))
        header.append(f"theta_wt{w}_deg")
    out = Path(ns.out)
    if out.parent != Path(""):
        out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in zip(*columns):
            writer.writerow([_fmt(v) for v in row])
    print(f"wrote {ns.out}: {ns.points} rows, weights 0..{dev.n}")
    return EXIT_OK


def cmd_solve(ns) -> int:
    cfg = load_config(ns.config)
    dev, chi_spec = parse_parallel_config(cfg, ns.config)
    kwargs = {"tol": ns.tol}
    if chi_spec != "solve":
        kwargs["chi_range"] = (chi_spec / 3.0, chi_spec * 3.0)
    if ns.free_modes:
        kwargs["free"] = ("chi", "mode_frequencies")
    sol = solve_eraser(dev, **kwargs)
    payload = solution_to_dict(sol)
    payload["config"] = cfg
    if ns.out:
        _write_json(Path(ns.out), payload)
    print(f"f_p= {_fmt(sol.omega_p / TWO_PI / 1e9)} GHz  "
          f"chi= {_fmt(sol.chi / TWO_PI / 1e6)} MHz  "
          f"dtheta= {_fmt(math.degrees(sol.delta_theta))} deg")
    return EXIT_OK


def _solution_from_file(path: str, dev: ParityDevice) -> EraserSolution:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"{path}: cannot load solution: {exc}")
    for key in ("omega_p_rad_s", "chi_rad_s", "mode_f_Hz"):
        if key not in data:
            raise ConfigError(f"{path}.{key}: missing required field")
    if "mode_omega_rad_s" in data:
        omegas = [float(w) for w in data["mode_omega_rad_s"]]
    else:
        omegas = [TWO_PI * f for f in data["mode_f_Hz"]]
    dev = dev.with_mode_frequencies(omegas).with_chi(float(data["chi_rad_s"]))
    if data.get("band_rad_s") is not None:
        from dataclasses import replace

        dev = replace(dev, band=tuple(float(v) for v in data["band_rad_s"]))
    wp = float(data["omega_p_rad_s"])
    residuals = eraser_residuals(dev, wp)
    th = [weight_phase_curve(dev, w).theta(wp) for w in range(dev.n + 1)]
    dth = float(wrap_phase(th[0] - th[1]))
    from .eraser import dispersion_report

    sol = EraserSolution(
        device=dev, omega_p=wp, chi=dev.chi,
        theta_by_weight=tuple(float(t) for t in th),
        residuals=tuple(float(r) for r in residuals),
        delta_theta=dth, dispersion_b=0.0, dispersion_b2=0.0,
    )
    rep = dispersion_report(dev, sol, strict=False)
    return EraserSolution(
        device=dev, omega_p=wp, chi=dev.chi,
        theta_by_weight=sol.theta_by_weight, residuals=sol.residuals,
        delta_theta=dth, dispersion_b=rep.max_abs_first,
        dispersion_b2=rep.max_abs_second,
    )


def cmd_fidelity(ns) -> int:
    cfg = load_config(ns.config)
    dev, _ = parse_parallel_config(cfg, ns.config)
    sol = _solution_from_file(ns.solution, dev)
    dev = sol.device
    alpha = math.sqrt(ns.alpha_sq)
    pulse = ProbePulse.from_duration(alpha, sol.omega_p, ns.t_us * 1e-6)
    reports = eraser_quality(dev, sol, pulse)
    dicts = reports_to_dicts(reports)
    payload = {
        "alpha_sq": ns.alpha_sq,
        "T_us": ns.t_us,
        "f_p_Hz": sol.omega_p / TWO_PI,
        "residuals_rad": list(sol.residuals),
        "pairs": dicts,
    }
    if ns.out_json:
        _write_json(Path(ns.out_json), payload)
    if ns.out_csv:
        out = Path(ns.out_csv)
        if out.parent != Path(""):
            out.parent.mkdir(parents=True, exist_ok=True)
        cols = ["weights", "state_lo", "state_hi", "branch", "F_numeric",
                "F_closed", "F_expansion", "b_s", "b2_s2", "delta_theta_rad"]
        with out.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(cols)
            for d in dicts:
                writer.writerow([
                    f"{d['weights'][0]}-{d['weights'][1]}",
                    d["state_lo"], d["state_hi"], d["branch"],
                    *(("" if d[k] is None else _fmt(d[k]))
                      for k in cols[4:]),
                ])
    worst_same = min((d["F_numeric"] for d in dicts
                      if d["branch"].startswith("same-parity")), default=1.0)
    best_cross = max((d["F_numeric"] for d in dicts
                      if d["branch"] == "even-odd"), default=0.0)
    print(f"pairs= {len(dicts)}  min_same_parity_F= {_fmt(worst_same)}  "
          f"max_cross_parity_F= {_fmt(best_cross)}")
    return EXIT_OK


def cmd_compare(ns) -> int:
    cfg_p = load_config(ns.config_parallel)
    dev_p, chi_spec = parse_parallel_config(cfg_p, ns.config_parallel)
    cfg_c = load_config(ns.config_cascade)
    dev_c, chi_spec_c = parse_cascade_config(cfg_c, ns.config_cascade)
    kwargs = {}
    if chi_spec != "solve":
        kwargs["chi_range"] = (chi_spec / 3.0, chi_spec * 3.0)
    sol = solve_eraser(dev_p, **kwargs)
    alpha = math.sqrt(ns.alpha_sq)
    pulse = ProbePulse.from_duration(alpha, sol.omega_p, ns.t_us * 1e-6)
    report = compare_schemes(dev_p, sol, dev_c, pulse,
                             tune=(chi_spec_c == "tune"))
    payload = comparison_to_dict(report)
    payload["pulse"] = {"alpha_sq": ns.alpha_sq, "T_us": ns.t_us}
    if ns.out:
        _write_json(Path(ns.out), payload)
    print(f"b_parallel= {_fmt(report.parallel.b_max)} s  "
          f"b_cascade= {_fmt(report.cascade.b_max)} s  "
          f"ratio= {_fmt(report.b_ratio)}")
    return EXIT_OK


def cmd_estimate(ns) -> int:
    rep = estimate_report(
        delta=_ghz(ns.delta_ghz),
        kappa=_mhz(ns.kappa_mhz),
        chi=_mhz(ns.chi_mhz),
        alpha_sq=ns.alpha_sq,
        omega_p=_ghz(ns.fp_ghz),
        duration=ns.t_us * 1e-6,
    )
    t1 = rep["purcell_T1_s"]
    tm = rep["measurement_time_s"]
    pp = rep["peak_power"]
    print("quantity                     cyclic-convention   angular-convention")
    print(f"Purcell T1 [us]              {t1['cyclic'] * 1e6:<19.6g} {t1['angular'] * 1e6:.6g}")
    print(f"measurement time T [us]      {tm['cyclic'] * 1e6:<19.6g} {tm['angular'] * 1e6:.6g}")
    print(f"  (optimistic, factor 1)     {tm['optimistic_cyclic'] * 1e6:.6g}")
    print(f"peak power                   {pp['watts']:.6g} W = {pp['dBm']:.4g} dBm")
    print("note: cyclic convention reads quoted MHz/GHz as ordinary frequencies")
    if ns.json:
        _write_json(Path(ns.json), rep)
    return EXIT_OK


# ----------------------------------------------------------------------
# Parser wiring
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qparity",
        description="Design toolkit for direct multi-qubit parity readout: "
                    "reflection-phase engineering, quantum-eraser solving, "
                    "and coherent-pulse fidelity.",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("sweep", help="Per-weight reflection phase curves to CSV.")
    sp.add_argument("config")
    sp.add_argument("--out", required=True)
    sp.add_argument("--points", type=int, default=2001)
    sp.set_defaults(func=cmd_sweep)

    so = sub.add_parser("solve", help="Solve the quantum-eraser conditions.")
    so.add_argument("config")
    so.add_argument("--tol", type=float, default=1e-9,
                    help="residual tolerance in radians")
    so.add_argument("--out", help="write the solution JSON here")
    so.add_argument("--free-modes", action="store_true",
                    help="also search mode-frequency spacings (needed for n=4)")
    so.set_defaults(func=cmd_solve)

    sf = sub.add_parser("fidelity", help="Pairwise output-state overlaps.")
    sf.add_argument("config")
    sf.add_argument("solution", help="solution JSON from 'solve'")
    sf.add_argument("--alpha-sq", type=float, default=5.0)
    sf.add_argument("--T-us", dest="t_us", type=float, default=1.0)
    sf.add_argument("--out-json")
    sf.add_argument("--out-csv")
    sf.set_defaults(func=cmd_fidelity)

    sc = sub.add_parser("compare", help="Parallel multimode vs sequential cascade.")
    sc.add_argument("config_parallel")
    sc.add_argument("config_cascade")
    sc.add_argument("--alpha-sq", type=float, default=5.0)
    sc.add_argument("--T-us", dest="t_us", type=float, default=1.0)
    sc.add_argument("--out")
    sc.set_defaults(func=cmd_compare)

    se = sub.add_parser("estimate", help="Purcell T1, measurement time, power.")
    se.add_argument("--delta-GHz", dest="delta_ghz", type=float, required=True)
    se.add_argument("--kappa-MHz", dest="kappa_mhz", type=float, required=True)
    se.add_argument("--chi-MHz", dest="chi_mhz", type=float, required=True)
    se.add_argument("--alpha-sq", type=float, default=5.0)
    se.add_argument("--T-us", dest="t_us", type=float, default=1.0)
    se.add_argument("--fp-GHz", dest="fp_ghz", type=float, required=True)
    se.add_argument("--json", help="write the full report here")
    se.set_defaults(func=cmd_estimate)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        thread_cap()
        return ns.func(ns)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NoSolution, InfeasibleDevice) as exc:
        print(f"no solution: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except (NetworkError, EraserError, ValueError) as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
