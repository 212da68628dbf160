"""State-dependent device networks, common-anchor phases, derivatives."""

from __future__ import annotations

import math

import numpy as np
import pytest

from qparity.device import (
    DispersiveCoupling,
    Mode,
    NonPositiveResult,
    ParityDevice,
    QubitState,
    analysis_band,
    build_state_network,
    phase_derivatives,
    phase_for_state,
    shifted_frequency,
    state_phase_curve,
    weight_phase_curve,
)
from qparity.network import Capacitor, Parallel, PoleProximity, Series, phase_sweep

TWO_PI = 2.0 * math.pi
CHI_PAPER = TWO_PI * 5.77e6
W_A = TWO_PI * 9.99e9


# ----------------------------------------------------------------------
# qubit states and couplings
# ----------------------------------------------------------------------

def test_qubit_state_validation():
    s = QubitState((0, 1, 1))
    assert s.n == 3 and s.weight == 2
    with pytest.raises(ValueError):
        QubitState((0, 2, 1))
    with pytest.raises(ValueError):
        QubitState(())
    with pytest.raises(ValueError):
        QubitState((0,) * 9)


def test_state_of_weight():
    assert QubitState.of_weight(4, 2).bits == (0, 0, 1, 1)
    with pytest.raises(ValueError):
        QubitState.of_weight(3, 4)


def test_dispersive_coupling_consistency():
    g, delta = TWO_PI * 100e6, TWO_PI * 5e9
    c = DispersiveCoupling.from_g_delta(g, delta)
    assert c.chi == pytest.approx(g * g / delta, rel=1e-14)
    with pytest.raises(ValueError):
        DispersiveCoupling(chi=g * g / delta * 1.001, g=g, delta=delta)
    with pytest.raises(ValueError):
        DispersiveCoupling(chi=1.0, g=g)


# ----------------------------------------------------------------------
# shifted frequencies
# ----------------------------------------------------------------------

def test_shift_all_zeros_adds_n_chi():
    w = shifted_frequency(W_A, [CHI_PAPER] * 3, QubitState((0, 0, 0)))
    assert w == pytest.approx(W_A + 3 * CHI_PAPER, rel=1e-14)


def test_shift_weight_symmetry():
    states = [QubitState(b) for b in ((0, 1, 1), (1, 0, 1), (1, 1, 0))]
    vals = {shifted_frequency(W_A, [CHI_PAPER] * 3, s) for s in states}
    assert len(vals) == 1


def test_shift_full_flip_differs_by_6chi():
    w0 = shifted_frequency(W_A, [CHI_PAPER] * 3, QubitState((0, 0, 0)))
    w1 = shifted_frequency(W_A, [CHI_PAPER] * 3, QubitState((1, 1, 1)))
    assert w0 - w1 == pytest.approx(6 * CHI_PAPER, rel=1e-12)


def test_shift_rejects_unphysical():
    with pytest.raises(NonPositiveResult):
        shifted_frequency(1.0, [2.0], QubitState((1,)))


# ----------------------------------------------------------------------
# device construction
# ----------------------------------------------------------------------

def test_device_invariants():
    modes = (Mode(TWO_PI * 9.99e9, 10e-15), Mode(TWO_PI * 10.01e9, 10e-15))
    dev = ParityDevice.equal_coupling(3, modes, CHI_PAPER)
    assert dev.m == 2 and dev.chi == CHI_PAPER
    with pytest.raises(ValueError):
        ParityDevice.equal_coupling(3, modes[::-1], CHI_PAPER)
    with pytest.raises(ValueError):
        ParityDevice.equal_coupling(3, modes, CHI_PAPER, resonator_model="exact")


def test_build_state_network_two_branches(paper_device):
    net = build_state_network(paper_device, QubitState((0, 0, 0)))
    assert isinstance(net, Parallel) and len(net.children) == 2
    for branch in net.children:
        assert isinstance(branch, Series)
        cap = branch.children[0]
        assert isinstance(cap, Capacitor) and cap.c == pytest.approx(10e-15)


def test_build_state_network_single_mode_degenerate():
    dev = ParityDevice.equal_coupling(2, (Mode(TWO_PI * 1e10, 1e-14),), CHI_PAPER)
    net = build_state_network(dev, QubitState((0, 1)))
    assert isinstance(net, Series)


def test_equal_weight_states_build_identical_trees(paper_device):
    nets = [build_state_network(paper_device, QubitState(b))
            for b in ((0, 1, 1), (1, 0, 1), (1, 1, 0))]
    assert nets[0] == nets[1] == nets[2]


def test_stub_model_uses_quarter_wave(paper_device):
    from qparity.network import QuarterWaveStub

    net = build_state_network(paper_device, QubitState((0, 0, 0)))
    resonator = net.children[0].children[1]
    assert isinstance(resonator, QuarterWaveStub)
    shift = 3 * paper_device.chi
    assert resonator.omega_r == pytest.approx(TWO_PI * 9.99e9 + shift, rel=1e-14)


# ----------------------------------------------------------------------
# common-anchor phases
# ----------------------------------------------------------------------

def test_all_states_anchor_on_principal_branch(paper_device):
    lo, _ = analysis_band(paper_device)
    thetas = [phase_for_state(paper_device, QubitState.of_weight(3, w), lo)
              for w in range(4)]
    for t in thetas:
        assert -math.pi < t <= math.pi
    assert max(thetas) - min(thetas) < 0.1


def test_hamming_weight_collapse_is_exact(paper_device):
    w = TWO_PI * 9.85e9
    vals = [phase_for_state(paper_device, QubitState(b), w)
            for b in ((0, 1, 1), (1, 0, 1), (1, 1, 0))]
    assert vals[0] == vals[1] == vals[2]


def test_equal_weight_curves_are_same_object(paper_device):
    c1 = state_phase_curve(paper_device, QubitState((0, 1, 1)))
    c2 = state_phase_curve(paper_device, QubitState((1, 1, 0)))
    assert c1 is c2


def test_parity_pair_structure(paper_device):
    # at most n+1 distinct curves, one per Hamming weight
    curves = {state_phase_curve(paper_device, QubitState(tuple(
        int(b) for b in f"{k:03b}"))) for k in range(8)}
    assert len(curves) == 4


def test_eraser_phase_difference_at_solution(paper_solution):
    dev = paper_solution.device
    wp = paper_solution.omega_p
    d1 = phase_for_state(dev, QubitState((0, 0, 0)), wp) \
        - phase_for_state(dev, QubitState((0, 1, 1)), wp)
    d2 = phase_for_state(dev, QubitState((0, 0, 1)), wp) \
        - phase_for_state(dev, QubitState((1, 1, 1)), wp)
    assert d1 == pytest.approx(TWO_PI, abs=1e-8)
    assert d2 == pytest.approx(TWO_PI, abs=1e-8)


def test_monotone_chi_response(paper_device):
    # larger chi spreads the weight-0 and weight-n poles further apart
    seps = []
    for chi in (TWO_PI * 2e6, TWO_PI * 8e6):
        dev = paper_device.with_chi(chi)
        lo, hi = analysis_band(dev)
        p0 = phase_sweep(build_state_network(dev, QubitState((0, 0, 0))),
                         lo, hi, z0=dev.z0).poles
        p3 = phase_sweep(build_state_network(dev, QubitState((1, 1, 1))),
                         lo, hi, z0=dev.z0).poles
        seps.append(p0[0] - p3[0])
    assert seps[1] > seps[0] > 0.0
    assert seps[1] == pytest.approx(seps[0] * 4.0, rel=0.05)


def test_unequal_chi_breaks_weight_collapse():
    modes = (Mode(TWO_PI * 9.99e9, 1e-14), Mode(TWO_PI * 10.01e9, 1e-14))
    chi_matrix = (
        (DispersiveCoupling(TWO_PI * 4e6), DispersiveCoupling(TWO_PI * 4e6)),
        (DispersiveCoupling(TWO_PI * 7e6), DispersiveCoupling(TWO_PI * 7e6)),
    )
    dev = ParityDevice(n=2, modes=modes, chi_matrix=chi_matrix, equal_chi=False)
    w = TWO_PI * 9.82e9
    t01 = phase_for_state(dev, QubitState((0, 1)), w)
    t10 = phase_for_state(dev, QubitState((1, 0)), w)
    assert t01 != t10


def test_equal_chi_flag_must_match_matrix():
    modes = (Mode(TWO_PI * 1e10, 1e-14),)
    chi_matrix = ((DispersiveCoupling(TWO_PI * 4e6),),
                  (DispersiveCoupling(TWO_PI * 7e6),))
    with pytest.raises(ValueError):
        ParityDevice(n=2, modes=modes, chi_matrix=chi_matrix, equal_chi=True)


# ----------------------------------------------------------------------
# derivatives
# ----------------------------------------------------------------------

def test_derivative_flat_far_from_resonance(paper_device):
    lo, _ = analysis_band(paper_device)
    d = phase_derivatives(paper_device, QubitState((0, 0, 0)), lo * 1.001)
    assert abs(d) < 1e-9


def test_derivative_negative_near_features(paper_device):
    d = phase_derivatives(paper_device, QubitState((0, 0, 0)), TWO_PI * 9.81e9)
    assert d < 0.0


def test_derivative_matches_dense_secant_oracle(paper_solution):
    # independent oracle: secant slopes from a fresh dense sweep whose grid
    # spacing is 1e-5 relative, never touching the anchored evaluator
    dev = paper_solution.device
    wp = paper_solution.omega_p
    h = wp * 1e-5
    for weight in range(4):
        d = weight_phase_curve(dev, weight).dtheta_unchecked(wp, order=1)
        net = build_state_network(dev, QubitState.of_weight(3, weight))
        prof = phase_sweep(net, wp - 3 * h, wp + 3 * h, base_points=64,
                           z0=dev.z0)
        lo = int(np.searchsorted(prof.grid, wp - h))
        hi = int(np.searchsorted(prof.grid, wp + h))
        secant = (prof.theta[hi] - prof.theta[lo]) \
            / (prof.grid[hi] - prof.grid[lo])
        assert d == pytest.approx(secant, rel=1e-4)


def test_second_derivative_matches_first_derivative_secant(paper_solution):
    dev = paper_solution.device
    wp = paper_solution.omega_p
    curve = weight_phase_curve(dev, 0)
    d2 = curve.dtheta_unchecked(wp, order=2)
    h = wp * 1e-6
    sec = (curve.dtheta_unchecked(wp + h) - curve.dtheta_unchecked(wp - h)) / (2.0 * h)
    assert d2 == pytest.approx(sec, rel=1e-3)


def test_derivative_refuses_pole_straddle(paper_device):
    curve = state_phase_curve(paper_device, QubitState((0, 0, 0)))
    pole = curve.profile.poles[0]
    with pytest.raises(PoleProximity):
        curve.dtheta(pole)


def test_derivative_order_validation(paper_device):
    curve = state_phase_curve(paper_device, QubitState((0, 0, 0)))
    with pytest.raises(ValueError):
        curve.dtheta(TWO_PI * 9.7e9, order=3)
