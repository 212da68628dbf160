"""Quantum-eraser condition solver: probe frequency and dispersive coupling.

For an n-qubit equal-coupling device the parity conditions require, at the
probe frequency, theta_wt(i) = theta_wt(i+2) + 2*pi for every weight pair
two apart: n-1 residuals.  The solver runs a coarse residual-norm grid over
(omega_p, chi) to localize smooth basins (the landscape has 2*pi jumps near
poles), then polishes each basin with a damped Newton iteration, verifying
every returned root by re-evaluating the residuals.  Among verified roots
the most distinguishable one (largest |sin(delta_theta/2)|) wins.

With mode frequencies freed (the 4-qubit case needs this: 3 conditions vs
2 knobs), mode gaps become extra unknowns: the template spacing is searched
symmetrically first, then a least-squares Gauss-Newton polish splits the
gaps as needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .device import ParityDevice, QubitState, loaded_poles, weight_phase_curve
from .network import wrap_phase

__all__ = [
    "EraserError",
    "InfeasibleDevice",
    "NoSolution",
    "PoleCollision",
    "EraserDegenerate",
    "EraserSolution",
    "min_modes_required",
    "eraser_residuals",
    "solve_eraser",
    "contrast",
    "dispersion_report",
    "DispersionReport",
    "solution_to_dict",
]

TWO_PI = 2.0 * math.pi

DEFAULT_CHI_RANGE = (TWO_PI * 0.1e6, TWO_PI * 50e6)
DEFAULT_TOL = 1e-9
NEWTON_MAX_ITER = 30
GRID_FAIL_NORM = 1.0  # rad; no grid cell below this means no basin to polish


class EraserError(Exception):
    pass


class InfeasibleDevice(EraserError):
    """Too few modes for the required phase winding."""


class NoSolution(EraserError):
    """Search failed; .best carries the best candidate for diagnosis."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class PoleCollision(EraserError):
    """Optimum sits on top of a reflection pole."""


class EraserDegenerate(EraserError):
    """Even and odd parities are indistinguishable (delta_theta = 0)."""


@dataclass(frozen=True)
class EraserSolution:
    """A verified root of the parity conditions.

    ``device`` is the solved device (final chi and mode frequencies);
    ``basins`` lists every distinct verified root found, as tuples of
    (omega_p, chi, delta_theta), best first.
    """

    device: ParityDevice
    omega_p: float
    chi: float
    theta_by_weight: tuple
    residuals: tuple
    delta_theta: float
    dispersion_b: float
    dispersion_b2: float
    basins: tuple = ()


def min_modes_required(n: int) -> int:
    """Resonances needed for the winding the n-qubit conditions consume:
    ceil((n+1)/2).

    The conditions plus a usable contrast need the phase to vary by more
    than pi*n, and each mode contributes one 2*pi turn.  Brute-force scans
    confirm the bound is sharp: a single-mode 2-qubit device's lone residual
    asymptotes to zero from below without ever crossing it.
    """
    return (n + 2) // 2


def _weight_thetas(dev: ParityDevice, omega_p: float) -> np.ndarray:
    return np.array([
        weight_phase_curve(dev, w).theta(omega_p) for w in range(dev.n + 1)
    ])


def eraser_residuals(dev: ParityDevice, omega_p: float) -> np.ndarray:
    """theta_wt(i) - theta_wt(i+2) - 2*pi for i = 0..n-2 (n-1 entries)."""
    th = _weight_thetas(dev, omega_p)
    return np.array([th[i] - th[i + 2] - TWO_PI for i in range(dev.n - 1)])


def contrast(sol: EraserSolution) -> float:
    """delta_theta = wrap(theta_even - theta_odd) in (-pi, pi]."""
    if sol.device.n < 1 or len(sol.theta_by_weight) < 2:
        raise ValueError("solution lacks both parity manifolds")
    d = wrap_phase(sol.theta_by_weight[0] - sol.theta_by_weight[1])
    if abs(d) < 1e-9:
        raise EraserDegenerate(
            f"parities indistinguishable: delta_theta = {d:.3e} rad"
        )
    return d


@dataclass(frozen=True)
class DispersionReport:
    """Signed derivative mismatches between same-parity weight pairs."""

    first: dict    # (w_lo, w_hi) -> theta'_lo - theta'_hi   [s]
    second: dict   # (w_lo, w_hi) -> theta''_lo - theta''_hi [s^2]

    @property
    def max_abs_first(self) -> float:
        return max((abs(v) for v in self.first.values()), default=0.0)

    @property
    def max_abs_second(self) -> float:
        return max((abs(v) for v in self.second.values()), default=0.0)


def _same_parity_pairs(n: int):
    evens = range(0, n + 1, 2)
    odds = range(1, n + 1, 2)
    return list(combinations(evens, 2)) + list(combinations(odds, 2))


def dispersion_report(dev: ParityDevice, sol: EraserSolution,
                      strict: bool = True) -> DispersionReport:
    """First/second phase-derivative mismatches among same-parity weights.

    strict=True propagates PoleProximity when a finite-difference stencil
    straddles a detected pole; strict=False uses the unchecked evaluation
    (the projective phase is smooth through poles).
    """
    wp = sol.omega_p
    d1, d2 = {}, {}
    for w in range(dev.n + 1):
        curve = weight_phase_curve(dev, w)
        if strict:
            d1[w] = curve.dtheta(wp, order=1)
            d2[w] = curve.dtheta(wp, order=2)
        else:
            d1[w] = curve.dtheta_unchecked(wp, order=1)
            d2[w] = curve.dtheta_unchecked(wp, order=2)
    pairs = _same_parity_pairs(dev.n)
    return DispersionReport(
        first={p: d1[p[0]] - d1[p[1]] for p in pairs},
        second={p: d2[p[0]] - d2[p[1]] for p in pairs},
    )


# ----------------------------------------------------------------------
# Solver internals
# ----------------------------------------------------------------------

def _default_search_band(dev: ParityDevice, chi_hi: float) -> tuple[float, float]:
    from .device import _loaded_zero_estimate

    spread = dev.n * chi_hi
    lo = min(_loaded_zero_estimate(mo, dev.z0) for mo in dev.modes) - spread
    hi = max(mo.omega for mo in dev.modes) + spread
    return (lo, hi)


def _solver_band(dev: ParityDevice, chi_range, search_band) -> tuple[float, float]:
    """Fixed sweep window covering the whole chi range, every gap rescaling
    the free-mode search may try, and the probe search band."""
    from .device import _loaded_zero_estimate

    freqs = [mo.omega for mo in dev.modes]
    span = (max(freqs) - min(freqs)) if len(freqs) > 1 else 0.0
    spread = dev.n * chi_range[1]
    z_lo = min(_loaded_zero_estimate(mo, dev.z0) for mo in dev.modes)
    pad = 0.005 * min(freqs) + spread + 1.5 * span
    lo = min(z_lo, search_band[0]) - pad
    hi = max(max(freqs), search_band[1]) + spread + pad
    # 12-significant-digit values survive the serialized-solution round trip
    return float(f"{lo:.12g}"), float(f"{hi:.12g}")


def _residual_matrix(dev: ParityDevice, wps: np.ndarray) -> np.ndarray:
    """Residual vectors on an omega_p grid; shape (n-1, len(wps))."""
    th = np.stack([weight_phase_curve(dev, w).theta(wps) for w in range(dev.n + 1)])
    return np.stack([th[i] - th[i + 2] - TWO_PI for i in range(dev.n - 1)])


def _residual_jacobian(dev: ParityDevice, wp: float, chi: float,
                       r0: np.ndarray) -> np.ndarray:
    """d residuals / d (omega_p, chi); the phase is smooth through poles."""
    n = dev.n
    d1 = [weight_phase_curve(dev, w).dtheta_unchecked(wp) for w in range(n + 1)]
    col_wp = np.array([d1[i] - d1[i + 2] for i in range(n - 1)])
    dchi = chi * 1e-6
    r1 = eraser_residuals(dev.with_chi(chi + dchi), wp)
    return np.column_stack([col_wp, (r1 - r0) / dchi])


def _newton_polish(dev0: ParityDevice, wp: float, chi: float,
                   band: tuple[float, float], chi_range: tuple[float, float],
                   tol: float):
    """Damped Newton on (omega_p, chi); returns (wp, chi, residuals) or None."""
    lo, hi = band
    for _ in range(NEWTON_MAX_ITER):
        dev = dev0.with_chi(chi)
        r = eraser_residuals(dev, wp)
        if np.max(np.abs(r)) < tol:
            return wp, chi, r
        jac = _residual_jacobian(dev, wp, chi, r)
        try:
            if jac.shape[0] == jac.shape[1]:
                step = np.linalg.solve(jac, -r)
            else:
                step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        except np.linalg.LinAlgError:
            return None
        norm0 = np.linalg.norm(r)
        lam, ok = 1.0, False
        while lam > 1e-10:
            wp_n, chi_n = wp + lam * step[0], chi + lam * step[1]
            if lo < wp_n < hi and chi_range[0] * 0.2 < chi_n < chi_range[1] * 5.0:
                r_n = eraser_residuals(dev0.with_chi(chi_n), wp_n)
                if np.linalg.norm(r_n) < norm0:
                    ok = True
                    break
            lam *= 0.5
        if not ok:
            return None
        wp, chi = wp + lam * step[0], chi + lam * step[1]
    dev = dev0.with_chi(chi)
    r = eraser_residuals(dev, wp)
    if np.max(np.abs(r)) < tol:
        return wp, chi, r
    return None


def _grid_candidates(dev0: ParityDevice, band, chi_grid, wp_points, top_k=12):
    """Local minima of the residual norm on the (omega_p, chi) grid."""
    lo, hi = band
    wps = np.linspace(lo, hi, wp_points)
    norm = np.empty((len(chi_grid), len(wps)))
    for i, chi in enumerate(chi_grid):
        r = _residual_matrix(dev0.with_chi(chi), wps)
        norm[i] = np.sqrt((r ** 2).sum(axis=0))
    cands = []
    for i in range(len(chi_grid)):
        for j in range(len(wps)):
            v = norm[i, j]
            if v >= GRID_FAIL_NORM:
                continue
            neigh = norm[max(0, i - 1):i + 2, max(0, j - 1):j + 2]
            if v <= neigh.min():
                cands.append((v, float(wps[j]), float(chi_grid[i])))
    cands.sort(key=lambda t: (t[0], t[1]))
    flat = np.unravel_index(np.argmin(norm), norm.shape)
    best_cell = (float(norm[flat]), float(wps[flat[1]]), float(chi_grid[flat[0]]))
    return cands[:top_k], best_cell


def _assemble(dev0: ParityDevice, roots: list, tol: float) -> EraserSolution:
    """Dedupe verified roots, rank by distinguishability, build the solution."""
    distinct = []
    for wp, chi, r, dev in roots:
        dup = any(abs(wp - w2) < TWO_PI * 1e4 and abs(chi - c2) < TWO_PI * 1e3
                  for w2, c2, _, _ in distinct)
        if not dup:
            distinct.append((wp, chi, r, dev))
    scored = []
    for wp, chi, r, dev in distinct:
        th = _weight_thetas(dev, wp)
        dth = float(wrap_phase(th[0] - th[1])) if dev.n >= 1 else 0.0
        scored.append((abs(math.sin(0.5 * dth)), wp, chi, r, dev, th, dth))
    scored.sort(key=lambda t: (-t[0], t[1]))
    _, wp, chi, r, dev, th, dth = scored[0]

    if min(abs(wrap_phase(t)) for t in th) < 10.0 * tol:
        raise PoleCollision(
            f"solution at omega_p={wp:.6e} sits within {10 * tol:.1e} rad "
            "of a reflection pole"
        )
    rep = dispersion_report(dev, EraserSolution(
        device=dev, omega_p=wp, chi=chi, theta_by_weight=tuple(th),
        residuals=tuple(r), delta_theta=dth, dispersion_b=0.0,
        dispersion_b2=0.0), strict=False)
    return EraserSolution(
        device=dev,
        omega_p=wp,
        chi=chi,
        theta_by_weight=tuple(float(t) for t in th),
        residuals=tuple(float(v) for v in r),
        delta_theta=dth,
        dispersion_b=rep.max_abs_first,
        dispersion_b2=rep.max_abs_second,
        basins=tuple((w, c, d) for _, w, c, _, _, _, d in scored),
    )


def _solve_two_knobs(dev0: ParityDevice, band, chi_range, tol, grid_points):
    chi_grid = np.geomspace(chi_range[0], chi_range[1], grid_points)
    wp_points = max(grid_points, 129)
    cands, best_cell = _grid_candidates(dev0, band, chi_grid, wp_points)
    if not cands:
        raise NoSolution(
            f"no grid cell brought the residual norm below {GRID_FAIL_NORM} rad; "
            f"best cell: |R|={best_cell[0]:.3f} at f_p={best_cell[1] / TWO_PI / 1e9:.4f} GHz, "
            f"chi={best_cell[2] / TWO_PI / 1e6:.4f} MHz",
            best=best_cell,
        )
    roots = []
    for _, wp0, chi0 in cands:
        hit = _newton_polish(dev0, wp0, chi0, band, chi_range, tol)
        if hit is not None:
            wp, chi, r = hit
            roots.append((wp, chi, r, dev0.with_chi(chi)))
    if not roots:
        raise NoSolution(
            f"Newton failed from every grid basin; best cell |R|={best_cell[0]:.3f}",
            best=best_cell,
        )
    return _assemble(dev0, roots, tol)


def _solve_single_condition(dev0: ParityDevice, band, chi_range, tol, grid_points):
    """n = 2: one residual, one-parameter root family; pick the most
    distinguishable point on it (largest |sin(delta_theta/2)|)."""
    from scipy.optimize import brentq

    lo, hi = band
    wps = np.linspace(lo, hi, max(grid_points, 257))
    chi_grid = np.geomspace(chi_range[0], chi_range[1], max(grid_points, 33))

    def best_root(chi):
        """(score, omega_p) of the best root at this chi, or None."""
        dev = dev0.with_chi(chi)
        r = _residual_matrix(dev, wps)[0]
        sign = np.sign(r)
        flips = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
        out = None
        for j in flips:
            wp = brentq(lambda w: float(eraser_residuals(dev, w)[0]),
                        float(wps[j]), float(wps[j + 1]), xtol=1e-3)
            th = _weight_thetas(dev, wp)
            score = abs(math.sin(0.5 * wrap_phase(th[0] - th[1])))
            if out is None or score > out[0]:
                out = (score, wp)
        return out

    scored = []
    for chi in chi_grid:
        hit = best_root(chi)
        if hit is not None:
            scored.append((hit[0], hit[1], chi))
    if not scored:
        raise NoSolution("single-condition residual never changes sign on the grid")
    scored.sort(key=lambda t: (-t[0], t[2]))
    chi_best = scored[0][2]

    # golden-section polish of chi between its grid neighbours
    idx = int(np.argmin(np.abs(chi_grid - chi_best)))
    a = float(chi_grid[max(0, idx - 1)])
    b = float(chi_grid[min(len(chi_grid) - 1, idx + 1)])
    ratio = (math.sqrt(5.0) - 1.0) / 2.0

    def score_only(chi):
        hit = best_root(chi)
        return hit[0] if hit is not None else -1.0

    x1, x2 = b - ratio * (b - a), a + ratio * (b - a)
    f1, f2 = score_only(x1), score_only(x2)
    for _ in range(40):
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - ratio * (b - a)
            f1 = score_only(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + ratio * (b - a)
            f2 = score_only(x2)
    chi = 0.5 * (a + b)
    hit = best_root(chi)
    if hit is None:
        chi = chi_best
        hit = best_root(chi)
    wp = hit[1]
    dev = dev0.with_chi(chi)
    r = eraser_residuals(dev, wp)
    return _assemble(dev0, [(wp, chi, r, dev)], tol)


def _solve_contrast_only(dev0: ParityDevice, band, chi_range, tol, grid_points):
    """n = 1: no eraser conditions; maximize the parity contrast."""
    chi = math.sqrt(chi_range[0] * chi_range[1])
    dev = dev0.with_chi(chi)
    lo, hi = band
    wps = np.linspace(lo, hi, max(grid_points, 513))
    th0 = weight_phase_curve(dev, 0).theta(wps)
    th1 = weight_phase_curve(dev, 1).theta(wps)
    score = np.abs(np.sin(0.5 * wrap_phase(th0 - th1)))
    j = int(np.argmax(score))
    wp = float(wps[j])
    return _assemble(dev0, [(wp, chi, np.zeros(0), dev)], tol)


def _solve_free_modes(dev0: ParityDevice, band, chi_range, tol, grid_points):
    """Mode gaps freed: symmetric template first, then split-gap polish."""
    center = float(np.mean([mo.omega for mo in dev0.modes]))
    gaps0 = np.diff([mo.omega for mo in dev0.modes])

    def with_gaps(gaps):
        offs = np.concatenate([[0.0], np.cumsum(gaps)])
        offs -= offs.mean()
        return dev0.with_mode_frequencies(center + offs)

    # Stage A: best least-squares point over gap scale factors
    best = None  # (norm, wp, chi, gaps)
    for scale in (1.0, 0.7, 1.4, 0.5, 2.0):
        dev_s = with_gaps(gaps0 * scale)
        chi_grid = np.geomspace(chi_range[0], chi_range[1], grid_points)
        cands, best_cell = _grid_candidates(dev_s, band, chi_grid,
                                            max(grid_points, 129), top_k=6)
        seeds = cands if cands else [best_cell]
        for _, wp0, chi0 in seeds:
            res = _gauss_newton_gaps(dev0, center, gaps0 * scale, wp0, chi0,
                                     band, chi_range, tol, free_gaps=False)
            if res is not None:
                nrm, wp, chi, gaps = res
                if best is None or nrm < best[0]:
                    best = (nrm, wp, chi, gaps)
        if best is not None and best[0] < tol:
            break
    if best is None:
        raise NoSolution("free-mode search found no basin on any gap scale")

    # Stage B: free the gaps
    if best[0] >= tol:
        res = _gauss_newton_gaps(dev0, center, best[3], best[1], best[2],
                                 band, chi_range, tol, free_gaps=True)
        if res is None or res[0] >= tol:
            raise NoSolution(
                f"gap polish stalled at |R|={best[0] if res is None else res[0]:.3e}",
                best=best,
            )
        best = res
    _, wp, chi, gaps = best
    offs = np.concatenate([[0.0], np.cumsum(gaps)])
    offs -= offs.mean()
    dev = dev0.with_mode_frequencies(center + offs).with_chi(chi)
    r = eraser_residuals(dev, wp)
    return _assemble(dev, [(wp, chi, r, dev)], tol)


def _gauss_newton_gaps(dev0, center, gaps, wp, chi, band, chi_range, tol,
                       free_gaps):
    """Damped Gauss-Newton on (omega_p, chi[, gaps]); returns best point."""
    gaps = np.asarray(gaps, dtype=float)
    lo, hi = band

    def make(chi_v, gaps_v):
        offs = np.concatenate([[0.0], np.cumsum(gaps_v)])
        offs -= offs.mean()
        return dev0.with_mode_frequencies(center + offs).with_chi(chi_v)

    x = np.concatenate([[wp, chi], gaps if free_gaps else []])
    for _ in range(NEWTON_MAX_ITER):
        gv = x[2:] if free_gaps else gaps
        dev = make(x[1], gv)
        r = eraser_residuals(dev, x[0])
        nrm = np.linalg.norm(r)
        if np.max(np.abs(r)) < tol:
            return float(np.max(np.abs(r))), x[0], x[1], np.asarray(gv)
        ncol = len(x)
        jac = np.zeros((len(r), ncol))
        d1 = [weight_phase_curve(dev, w).dtheta_unchecked(x[0])
              for w in range(dev.n + 1)]
        jac[:, 0] = [d1[i] - d1[i + 2] for i in range(dev.n - 1)]
        for k in range(1, ncol):
            dx = abs(x[k]) * 1e-6
            xp = x.copy()
            xp[k] += dx
            gp = xp[2:] if free_gaps else gaps
            rp = eraser_residuals(make(xp[1], gp), xp[0])
            jac[:, k] = (rp - r) / dx
        step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        lam, ok = 1.0, False
        while lam > 1e-10:
            xn = x + lam * step
            gn = xn[2:] if free_gaps else gaps
            if (lo < xn[0] < hi and chi_range[0] * 0.2 < xn[1] < chi_range[1] * 5.0
                    and np.all(np.asarray(gn) > 0)):
                rn = eraser_residuals(make(xn[1], gn), xn[0])
                if np.linalg.norm(rn) < nrm:
                    ok = True
                    break
            lam *= 0.5
        if not ok:
            return float(np.max(np.abs(r))), x[0], x[1], np.asarray(gv)
        x = x + lam * step
    gv = x[2:] if free_gaps else gaps
    r = eraser_residuals(make(x[1], gv), x[0])
    return float(np.max(np.abs(r))), x[0], x[1], np.asarray(gv)


def solve_eraser(dev_template: ParityDevice, free=("chi",),
                 search_band: tuple[float, float] | None = None,
                 tol: float = DEFAULT_TOL,
                 chi_range: tuple[float, float] = DEFAULT_CHI_RANGE,
                 grid_points: int = 33) -> EraserSolution:
    """Find (omega_p, chi[, mode frequencies]) satisfying the parity conditions.

    ``free`` lists the searched knobs: "chi" (always) and optionally
    "mode_frequencies" (required when the condition count n-1 exceeds 2).
    ``grid_points`` sets the coarse-grid density per axis.  Raises
    InfeasibleDevice / NoSolution / PoleCollision.
    """
    free = frozenset(free)
    if "chi" not in free:
        raise ValueError('free must include "chi"')
    if not free <= {"chi", "mode_frequencies"}:
        raise ValueError(f"unknown free knobs: {free - {'chi', 'mode_frequencies'}}")
    if not dev_template.equal_chi:
        raise ValueError("solve_eraser requires an equal_chi device template")
    if tol < 1e-12:
        raise ValueError("tol below achievable float accuracy")
    n, m = dev_template.n, dev_template.m
    if m < min_modes_required(n):
        raise InfeasibleDevice(
            f"{n}-qubit parity needs the phase to wind through at least "
            f"{n}*pi: {min_modes_required(n)} modes required, device has {m}"
        )
    if search_band is None:
        search_band = _default_search_band(dev_template, chi_range[1])
    if dev_template.band is None:
        from dataclasses import replace

        dev_template = replace(
            dev_template,
            band=_solver_band(dev_template, chi_range, search_band),
        )

    if n == 1:
        return _solve_contrast_only(dev_template, search_band, chi_range,
                                    tol, grid_points)
    if n == 2:
        return _solve_single_condition(dev_template, search_band, chi_range,
                                       tol, grid_points)
    if "mode_frequencies" in free:
        return _solve_free_modes(dev_template, search_band, chi_range,
                                 tol, grid_points)
    if n - 1 > 2:
        raise NoSolution(
            f"{n - 1} conditions with only (omega_p, chi) free; "
            'add "mode_frequencies" to free'
        )
    return _solve_two_knobs(dev_template, search_band, chi_range, tol,
                            grid_points)


# ----------------------------------------------------------------------
# Serialization (consumed by the CLI)
# ----------------------------------------------------------------------

def solution_to_dict(sol: EraserSolution) -> dict:
    dev = sol.device
    return {
        "f_p_Hz": sol.omega_p / TWO_PI,
        "omega_p_rad_s": sol.omega_p,
        "chi_Hz": sol.chi / TWO_PI,
        "chi_rad_s": sol.chi,
        "chi_convention": "quoted MHz values are chi/2pi (ordinary frequency)",
        "mode_f_Hz": [mo.omega / TWO_PI for mo in dev.modes],
        "mode_omega_rad_s": [mo.omega for mo in dev.modes],
        "band_rad_s": list(dev.band) if dev.band is not None else None,
        "theta_by_weight_rad": list(sol.theta_by_weight),
        "theta_by_weight_deg": [math.degrees(t) for t in sol.theta_by_weight],
        "residuals_rad": list(sol.residuals),
        "delta_theta_rad": sol.delta_theta,
        "delta_theta_deg": math.degrees(sol.delta_theta),
        "low_contrast": bool(abs(sol.delta_theta) < math.pi / 6.0),
        "dispersion_b_s": sol.dispersion_b,
        "dispersion_b2_s2": sol.dispersion_b2,
        "basins": [
            {"f_p_Hz": w / TWO_PI, "chi_Hz": c / TWO_PI,
             "delta_theta_deg": math.degrees(d)}
            for w, c, d in sol.basins
        ],
        # bare vs loaded resonances: the coupling caps pull the poles, so
        # both bookkeepings are reported
        "loaded_poles_by_weight_Hz": {
            str(w): [p / TWO_PI for p in loaded_poles(
                dev, QubitState.of_weight(dev.n, w))]
            for w in range(dev.n + 1)
        },
    }
