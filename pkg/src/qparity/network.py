"""Lossless one-port microwave networks: impedance, reflection, phase sweeps.

Networks are finite trees of quarter-wave stubs, lumped capacitors and
inductors, combined by series/parallel rules.  All evaluation is done
projectively: a node is represented by a pair (N, D) with Z = N/D, so that
impedance poles (D -> 0) and zeros (N -> 0) stay finite and the reflection
coefficient r = (N - Z0*D)/(N + Z0*D) is well defined everywhere, with
r = +1 exactly at a pole of Z.

Sign convention: the unwrapped reflection phase theta(omega) decreases with
increasing omega through a resonance (passive delay convention).  A window
containing k poles of Z accumulates a branch winding of -2*pi*k.

Everything here is a pure function of immutable inputs; results are
deterministic and safe to call from any number of threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "NetworkError",
    "PoleProximity",
    "RefinementLimit",
    "QuarterWaveStub",
    "Capacitor",
    "Inductor",
    "Series",
    "Parallel",
    "NetworkElement",
    "PhaseProfile",
    "PhaseCurve",
    "wrap_phase",
    "stub_impedance",
    "lumped_equivalent",
    "network_impedance",
    "reflection_coefficient",
    "reflection_phase",
    "phase_sweep",
]

TWO_PI = 2.0 * math.pi

# Total admittance magnitude below which a frequency counts as sitting on a
# pole of Z (the one-port looks like an exact open).
POLE_ADMITTANCE_TOL = 1e-18

# |cos| threshold below which the stub tan() form is numerically meaningless.
STUB_COS_TOL = 1e-14

# Adaptive refinement stops subdividing once adjacent unwrapped-phase steps
# are below this; 2**24 evaluated points is the pathological-input cutoff.
PHASE_STEP_LIMIT = math.pi / 4.0
MAX_SWEEP_POINTS = 2 ** 24

# Foster's theorem: the reflection phase of a lossless one-port strictly
# decreases, so a positive wrapped step beyond rounding noise can only be an
# aliased full turn and forces further bisection.
FOSTER_NOISE = 1e-7


class NetworkError(Exception):
    """Base class for network evaluation failures."""


class PoleProximity(NetworkError):
    """Evaluation requested too close to a pole for the impedance form."""


class RefinementLimit(NetworkError):
    """Adaptive phase sweep exceeded its grid budget (pathological input)."""


# ----------------------------------------------------------------------
# Network elements
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class QuarterWaveStub:
    """Shorted quarter-wave line: Z(w) = i*z0*tan((pi/2)*(w/omega_r))."""

    z0: float
    omega_r: float

    def __post_init__(self):
        if self.z0 <= 0.0:
            raise ValueError(f"stub z0 must be > 0, got {self.z0}")
        if self.omega_r <= 0.0:
            raise ValueError(f"stub omega_r must be > 0, got {self.omega_r}")


@dataclass(frozen=True)
class Capacitor:
    c: float

    def __post_init__(self):
        if self.c <= 0.0:
            raise ValueError(f"capacitance must be > 0, got {self.c}")


@dataclass(frozen=True)
class Inductor:
    l: float

    def __post_init__(self):
        if self.l <= 0.0:
            raise ValueError(f"inductance must be > 0, got {self.l}")


@dataclass(frozen=True)
class Series:
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise ValueError("Series needs at least one child")
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class Parallel:
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise ValueError("Parallel needs at least one child")
        object.__setattr__(self, "children", tuple(self.children))


NetworkElement = Union[QuarterWaveStub, Capacitor, Inductor, Series, Parallel]


# ----------------------------------------------------------------------
# Projective impedance evaluation
# ----------------------------------------------------------------------

def _check_omega(omega) -> np.ndarray:
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0.0):
        raise ValueError("omega must be strictly positive")
    return w


def _normalize(num: np.ndarray, den: np.ndarray):
    scale = np.maximum(np.abs(num), np.abs(den))
    scale = np.where(scale == 0.0, 1.0, scale)
    return num / scale, den / scale


def _impedance_parts(net: NetworkElement, w: np.ndarray):
    """Return (N, D) with Z(w) = N/D, both finite, vectorized over w."""
    if isinstance(net, QuarterWaveStub):
        x = 0.5 * math.pi * (w / net.omega_r)
        return 1j * net.z0 * np.sin(x), np.cos(x) + 0j
    if isinstance(net, Capacitor):
        return np.ones_like(w) + 0j, 1j * w * net.c
    if isinstance(net, Inductor):
        return 1j * w * net.l, np.ones_like(w) + 0j
    if isinstance(net, Series):
        num, den = _impedance_parts(net.children[0], w)
        for child in net.children[1:]:
            n2, d2 = _impedance_parts(child, w)
            num, den = _normalize(num * d2 + n2 * den, den * d2)
        return num, den
    if isinstance(net, Parallel):
        num, den = _impedance_parts(net.children[0], w)
        for child in net.children[1:]:
            n2, d2 = _impedance_parts(child, w)
            num, den = _normalize(num * n2, den * n2 + d2 * num)
        return num, den
    raise TypeError(f"not a NetworkElement: {net!r}")


def stub_impedance(omega: float, z0: float, omega_r: float) -> complex:
    """Impedance of a shorted quarter-wave stub, i*z0*tan((pi/2)(w/w_r)).

    Raises PoleProximity within STUB_COS_TOL of a tan singularity; use the
    admittance (projective) form there instead.
    """
    if omega <= 0.0:
        raise ValueError("omega must be > 0")
    if z0 <= 0.0 or omega_r <= 0.0:
        raise ValueError("z0 and omega_r must be > 0")
    x = 0.5 * math.pi * (omega / omega_r)
    c = math.cos(x)
    if abs(c) < STUB_COS_TOL:
        raise PoleProximity(
            f"stub evaluated within {STUB_COS_TOL} of a tan singularity "
            f"(omega={omega:.6e}, omega_r={omega_r:.6e})"
        )
    return 1j * z0 * math.tan(x)


def lumped_equivalent(omega_r: float, z0: float) -> tuple[float, float]:
    """Parallel-LC equivalent of a quarter-wave stub near its fundamental.

    C = pi/(4*omega_r*z0), L = 1/(omega_r**2 * C); the LC resonance
    1/sqrt(L*C) reproduces omega_r exactly.
    """
    if omega_r <= 0.0 or z0 <= 0.0:
        raise ValueError("omega_r and z0 must be > 0")
    c = math.pi / (4.0 * omega_r * z0)
    l = 1.0 / (omega_r * omega_r * c)
    return c, l


def network_impedance(net: NetworkElement, omega: float) -> complex:
    """Complex impedance of the one-port at a single frequency.

    Raises PoleProximity when the total admittance magnitude drops below
    POLE_ADMITTANCE_TOL (a pole of Z); the reflection coefficient remains
    well defined there via reflection_coefficient.
    """
    w = _check_omega(omega)
    num, den = _impedance_parts(net, w)
    if np.abs(den) < POLE_ADMITTANCE_TOL * np.abs(num):
        raise PoleProximity(
            f"admittance magnitude below {POLE_ADMITTANCE_TOL} S at "
            f"omega={float(w):.6e} (pole of Z)"
        )
    return complex(num / den)


def reflection_coefficient(net: NetworkElement, omega, z0: float):
    """Reflection coefficient r = (Z - z0)/(Z + z0), finite at poles (r=+1)."""
    if z0 <= 0.0:
        raise ValueError("z0 must be > 0")
    w = _check_omega(omega)
    num, den = _impedance_parts(net, w)
    r = (num - z0 * den) / (num + z0 * den)
    return r if np.ndim(omega) else complex(r)


def reflection_phase(net: NetworkElement, omega, z0: float):
    """Principal-branch reflection phase arg r(omega) in (-pi, pi]."""
    return np.angle(reflection_coefficient(net, omega, z0))


def _susceptance(net: NetworkElement, omega: float) -> float:
    """Im(Y) of the one-port; zero exactly at poles of Z (Foster-increasing)."""
    w = _check_omega(omega)
    num, den = _impedance_parts(net, w)
    return float(np.imag(den / num))


def wrap_phase(delta):
    """Map phase differences into (-pi, pi]."""
    d = np.mod(np.asarray(delta, dtype=float) + math.pi, TWO_PI) - math.pi
    d = np.where(d == -math.pi, math.pi, d)
    return d if np.ndim(delta) else float(d)


# ----------------------------------------------------------------------
# Phase sweep
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PhaseProfile:
    """Unwrapped reflection phase on an adaptively refined grid.

    ``theta`` is continuous (adjacent steps < pi/4 in magnitude) and anchored
    to the principal branch at ``grid[0]``.  ``poles`` lists the detected
    pole frequencies of Z inside the window (r = +1 crossings).
    """

    grid: np.ndarray
    theta: np.ndarray
    poles: np.ndarray

    @property
    def winding(self) -> float:
        """Branch winding over the window: -2*pi per enclosed pole of Z.

        Defined as the unwrapped phase change minus the principal-value
        change at the endpoints, so it is an exact multiple of 2*pi for any
        off-pole endpoints.
        """
        raw = self.theta[-1] - self.theta[0]
        principal = wrap_phase(self.theta[-1]) - wrap_phase(self.theta[0])
        return float(raw - principal)


def _collect_feature_seeds(net: NetworkElement, lo: float, hi: float) -> list[float]:
    """Candidate resonance frequencies to pre-seed the sweep grid.

    Gathers stub harmonics, LC-tank resonances, and series-capacitor-loaded
    tank zeros (the pattern every coupled-resonator branch reduces to), then
    surrounds each with a small relative-offset cloud so that narrow features
    trigger refinement even when the analytic guess is slightly off.
    """
    centers: list[float] = []

    def visit(node: NetworkElement, series_caps: tuple):
        if isinstance(node, QuarterWaveStub):
            k = 1
            while (k - 1) * node.omega_r <= hi:
                f = k * node.omega_r
                if lo * 0.5 <= f <= hi * 1.5:
                    centers.append(f)
                k += 1
            # series-capacitor-loaded zero, estimated from the lumped
            # equivalent (lands inside the true transition for weak coupling)
            c_r = math.pi / (4.0 * node.omega_r * node.z0)
            for c_ser in series_caps:
                centers.append(node.omega_r * math.sqrt(c_r / (c_r + c_ser)))
        elif isinstance(node, Parallel):
            ls = [c.l for c in node.children if isinstance(c, Inductor)]
            cs = [c.c for c in node.children if isinstance(c, Capacitor)]
            for lval in ls:
                for cval in cs:
                    w_r = 1.0 / math.sqrt(lval * cval)
                    centers.append(w_r)
                    for c_ser in series_caps:
                        centers.append(1.0 / math.sqrt(lval * (cval + c_ser)))
            for child in node.children:
                visit(child, ())
        elif isinstance(node, Series):
            caps = tuple(c.c for c in node.children if isinstance(c, Capacitor))
            for child in node.children:
                visit(child, caps)

    visit(net, ())
    offsets = (0.0, 1e-5, -1e-5, 3e-5, -3e-5, 1e-4, -1e-4, 3e-4, -3e-4,
               1e-3, -1e-3, 3e-3, -3e-3, 0.01, -0.01, 0.02, -0.02,
               0.035, -0.035, 0.05, -0.05)
    seeds = []
    for w0 in centers:
        for rel in offsets:
            f = w0 * (1.0 + rel)
            if lo < f < hi:
                seeds.append(f)
    return seeds


def phase_sweep(net: NetworkElement, omega_lo: float, omega_hi: float,
                base_points: int = 256, z0: float = 50.0) -> PhaseProfile:
    """Unwrapped reflection phase over [omega_lo, omega_hi].

    Nearest-branch accumulation: adjacent-sample differences are wrapped into
    (-pi, pi] and summed.  The grid is refined by bisection until every
    adjacent step is below pi/4, each interval's direct phase step agrees
    with the step through its midpoint, and no step ascends beyond rounding
    noise (Foster descent) -- the last two rules catch hidden full turns
    that a coarse interval would alias away.

    Raises RefinementLimit beyond MAX_SWEEP_POINTS evaluated points.
    """
    if not omega_lo < omega_hi:
        raise ValueError("need omega_lo < omega_hi")
    if omega_lo <= 0.0:
        raise ValueError("omega_lo must be > 0")
    if base_points < 64:
        raise ValueError("base_points must be >= 64")

    pts = list(np.linspace(omega_lo, omega_hi, base_points))
    pts.extend(_collect_feature_seeds(net, omega_lo, omega_hi))
    grid = np.unique(np.asarray(pts, dtype=float))
    args = np.angle(reflection_coefficient(net, grid, z0))

    known = {float(w): float(a) for w, a in zip(grid, args)}
    pending = [(grid[i], grid[i + 1]) for i in range(len(grid) - 1)]

    while pending:
        mids = np.array([0.5 * (a + b) for a, b in pending])
        if len(known) + len(mids) > MAX_SWEEP_POINTS:
            raise RefinementLimit(
                f"phase sweep exceeded {MAX_SWEEP_POINTS} points; "
                "input has features too narrow for this window"
            )
        mid_args = np.angle(reflection_coefficient(net, mids, z0))
        nxt = []
        for (a, b), m, fm in zip(pending, mids, mid_args):
            m = float(m)
            if m <= a or m >= b:
                continue  # interval at float resolution; accept as is
            known[m] = float(fm)
            d_am = wrap_phase(fm - known[a])
            d_mb = wrap_phase(known[b] - fm)
            d_ab = wrap_phase(known[b] - known[a])
            consistent = abs(d_am + d_mb - d_ab) < 1e-9
            descending = d_am < FOSTER_NOISE and d_mb < FOSTER_NOISE
            if (consistent and descending
                    and abs(d_am) < PHASE_STEP_LIMIT
                    and abs(d_mb) < PHASE_STEP_LIMIT):
                continue
            nxt.append((a, m))
            nxt.append((m, b))
        pending = nxt

    grid = np.array(sorted(known))
    args = np.array([known[w] for w in grid])
    theta = np.empty_like(args)
    theta[0] = args[0]
    theta[1:] = args[0] + np.cumsum(wrap_phase(np.diff(args)))
    poles = _locate_poles(net, grid, theta)
    return PhaseProfile(grid=grid, theta=theta, poles=poles)


def _locate_poles(net: NetworkElement, grid: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Pole frequencies of Z: every descent of theta through 0 mod 2*pi.

    Each bracketing grid interval is polished with a root solve on Im(Y),
    which crosses zero from below exactly at a pole (Foster's theorem).
    """
    poles = []
    for i in range(len(grid) - 1):
        t1, t2 = theta[i], theta[i + 1]
        k_hi = math.floor(t1 / TWO_PI)
        level = k_hi * TWO_PI
        if t2 < level <= t1 and t1 != level:
            a, b = float(grid[i]), float(grid[i + 1])
            ba, bb = _susceptance(net, a), _susceptance(net, b)
            if ba < 0.0 < bb:
                poles.append(brentq(lambda w: _susceptance(net, w), a, b,
                                    xtol=1e-6, rtol=1e-15))
            else:
                # susceptance sign did not isolate the crossing; fall back to
                # the phase-interpolated location
                poles.append(a + (b - a) * (t1 - level) / (t1 - t2))
    return np.asarray(poles, dtype=float)


# ----------------------------------------------------------------------
# Anchored phase curve
# ----------------------------------------------------------------------

class PhaseCurve:
    """Exact point evaluation of the unwrapped phase, anchored to a profile.

    theta(omega) snaps to the profile's nearest grid sample and adds the
    wrapped principal-phase difference, which is exact because profile steps
    are below pi/4.  Derivative evaluation uses Richardson-extrapolated
    central differences.
    """

    def __init__(self, net: NetworkElement, z0: float, profile: PhaseProfile):
        self.net = net
        self.z0 = z0
        self.profile = profile

    def theta(self, omega):
        w = np.atleast_1d(np.asarray(omega, dtype=float))
        grid, th = self.profile.grid, self.profile.theta
        if np.any(w < grid[0]) or np.any(w > grid[-1]):
            raise ValueError("omega outside the swept band")
        idx = np.clip(np.searchsorted(grid, w), 1, len(grid) - 1)
        left = idx - 1
        use_left = (w - grid[left]) <= (grid[idx] - w)
        j = np.where(use_left, left, idx)
        a = np.angle(reflection_coefficient(self.net, w, self.z0))
        out = th[j] + wrap_phase(a - wrap_phase(th[j]))
        return out if np.ndim(omega) else float(out[0])

    def dtheta(self, omega: float, order: int = 1) -> float:
        """Richardson-extrapolated central finite difference, order 1 or 2.

        Refuses stencils that straddle a detected pole of Z; use
        dtheta_unchecked where the caller knows the phase is smooth there
        (the projective evaluation is analytic through poles).
        """
        w = float(omega)
        h = max(w * 1e-7, TWO_PI * 1e3)
        for p in self.profile.poles:
            if abs(w - p) <= h:
                raise PoleProximity(
                    f"derivative stencil at omega={w:.6e} crosses pole {p:.6e}"
                )
        return self.dtheta_unchecked(omega, order)

    def dtheta_unchecked(self, omega: float, order: int = 1) -> float:
        if order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        w = float(omega)
        h = max(w * 1e-7, TWO_PI * 1e3)
        if order == 1:
            def diff(step):
                return (self.theta(w + step) - self.theta(w - step)) / (2.0 * step)
        else:
            t0 = self.theta(w)

            def diff(step):
                return (self.theta(w + step) - 2.0 * t0 + self.theta(w - step)) / step ** 2
        d_h = diff(h)
        d_h2 = diff(0.5 * h)
        return (4.0 * d_h2 - d_h) / 3.0
