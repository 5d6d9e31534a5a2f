import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from prahm.txline import (TxLineSpec, planck_xi, planck_xi_closed_form, simulate,
                          trapped_energy)


@pytest.fixture(scope="module")
def trace():
    return simulate(TxLineSpec())


def test_initial_power(trace):
    s = trace.spec
    assert abs(trace.average_power(0, 2 * s.tau0) / (0.5 * s.I**2 * s.Z0) - 1) <= 0.005


def test_power_ceases(trace):
    s = trace.spec
    p0 = trace.average_power(0, 2 * s.tau0)
    late = trace.t >= 2 * s.tau0 - 1e-12
    assert np.max(np.abs(trace.power[late])) <= 1e-6 * p0
    assert abs(trace.average_power(2 * s.tau0, 4 * s.tau0)) <= 1e-6 * p0


def test_bookkeeping(trace):
    assert trace.bookkeeping_error() <= 1e-6


def test_discretization_halves():
    a = simulate(TxLineSpec(steps_per_transit=256)).discretization_error()
    b = simulate(TxLineSpec(steps_per_transit=512)).discretization_error()
    assert b / a == pytest.approx(0.5, rel=0.05)


def test_trapped_energy_examples():
    s = TxLineSpec()
    assert trapped_energy(s) == pytest.approx(377.0, rel=1e-3)
    assert trapped_energy(TxLineSpec(I=2.0)) == pytest.approx(4 * trapped_energy(s), rel=1e-12)
    assert trapped_energy(TxLineSpec(omega=4 * math.pi)) == pytest.approx(trapped_energy(s) / 2, rel=1e-12)


def test_ideal_source_sloshes():
    s = TxLineSpec(source="ideal")
    tr = simulate(s, 8 * s.tau0)
    n = s.steps_per_transit
    stored = tr.stored
    assert stored[2 * n - 1] == pytest.approx(s.closed_form_energy, rel=1e-3)
    assert stored[4 * n - 1] <= 1e-9 * s.closed_form_energy
    with pytest.raises(ValueError):
        trapped_energy(s)


def test_planck_xi():
    xi = planck_xi(1.0)
    assert abs(xi - 0.576) <= 0.01
    assert abs(xi / 0.6 - 1) <= 0.1
    assert xi == pytest.approx(planck_xi_closed_form(), rel=1e-6)


@pytest.mark.parametrize("omega", [2 * math.pi, 2 * math.pi * 1e9, 2 * math.pi * 1e15])
def test_planck_xi_frequency_independent(omega):
    assert planck_xi(1.0, omega) == pytest.approx(planck_xi(1.0), rel=1e-9)


@given(st.floats(0.01, 100.0))
def test_planck_xi_zeta_scaling(zeta):
    assert planck_xi(zeta) == pytest.approx(planck_xi(1.0), rel=1e-9)


def test_validation():
    with pytest.raises(ValueError):
        TxLineSpec(Z0=0)
    with pytest.raises(ValueError):
        TxLineSpec(source="other")
    with pytest.raises(ValueError):
        simulate(TxLineSpec(), 1.0)
    with pytest.raises(ValueError):
        planck_xi(0.0)
