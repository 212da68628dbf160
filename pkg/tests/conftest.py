"""Shared fixtures: the worked two-mode device and its solved operating point."""

from __future__ import annotations

import math

import pytest

from qparity import Mode, ParityDevice, solve_eraser

TWO_PI = 2.0 * math.pi


@pytest.fixture(scope="session")
def paper_device() -> ParityDevice:
    """Three qubits on two modes at 9.99/10.01 GHz, 10 fF couplers, 50 ohm."""
    return ParityDevice.equal_coupling(
        n=3,
        modes=(Mode(TWO_PI * 9.99e9, 10e-15), Mode(TWO_PI * 10.01e9, 10e-15)),
        chi=TWO_PI * 5e6,
    )


@pytest.fixture(scope="session")
def paper_solution(paper_device):
    return solve_eraser(paper_device)
