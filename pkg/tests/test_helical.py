import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from prahm.errors import IncompletePeriod
from prahm.grid import cell_spec, residual_spec, sample_grid
from prahm.helical import (HelicalModulation, apply_helical, classical_energy_density,
                           leftover_estimate, modulated_grid, vh_sweep)
from prahm.modes import canonical_mode, mode_sampler
from prahm.residual import residual_te, residual_tm


def own(kind):
    return residual_te if kind == "TE" else residual_tm


def test_modulation_validation():
    with pytest.raises(ValueError):
        HelicalModulation(-1.0, 0.5)
    with pytest.raises(ValueError):
        HelicalModulation(1.0, 0.0)
    with pytest.raises(ValueError):
        HelicalModulation(1.0, 0.5, helicity=2)


def test_zero_omega_is_identity(te_mode, rng):
    base = mode_sampler(te_mode)
    s = apply_helical(base, HelicalModulation(0.0, te_mode.v_g))
    x, y, z, t = rng.uniform(0, 0.5, (4, 30))
    a, b = base(x, y, z, t), s(x, y, z, t)
    assert np.array_equal(a.et.x, b.et.x) and np.array_equal(a.cbt.y, b.cbt.y)


@given(st.floats(0.0, 40.0), st.sampled_from([1, -1]))
def test_magnitudes_unchanged(Omega, hel):
    m = canonical_mode()
    base = mode_sampler(m)
    s = apply_helical(base, HelicalModulation(Omega, m.v_g, hel))
    pts = np.linspace(0.05, 0.6, 25)
    a, b = base(pts, pts[::-1], 0.1 * pts, pts), s(pts, pts[::-1], 0.1 * pts, pts)
    assert np.allclose(a.et.norm(), b.et.norm(), rtol=0, atol=1e-13)
    assert np.allclose(a.cbt.norm(), b.cbt.norm(), rtol=0, atol=1e-13)
    assert np.array_equal(a.ez, b.ez) and np.array_equal(a.cbz, b.cbz)


@pytest.mark.parametrize("kind", ["TE", "TM"])
@pytest.mark.parametrize("hel", [1, -1])
def test_modulated_mode_is_maxwellian(kind, hel):
    m = canonical_mode(kind)
    g = modulated_grid(m, 0.5 * m.omega, helicity=hel)
    assert own(kind)(g).max_linf <= 1e-3


def test_sweep_minimum_and_shape(te_mode):
    ratios = [0.8, 0.9, 0.95, 1.0, 1.05, 1.1, 1.2]
    res = dict(vh_sweep(te_mode, 0.5 * te_mode.omega, ratios))
    assert res[1.0] <= 1e-3
    assert res[0.9] >= 50 * res[1.0]
    seq = [res[r] for r in (0.8, 0.9, 1.0, 1.1, 1.2)]
    assert seq[0] > seq[1] > seq[2] < seq[3] < seq[4]
    for r in (0.8, 0.9, 0.95, 1.05, 1.1, 1.2):
        assert res[r] >= 10 * res[1.0]


@pytest.mark.parametrize("kind", ["TE", "TM"])
def test_sweep_matches_leftover_oracle(kind):
    m = canonical_mode(kind)
    W = 0.5 * m.omega
    g0 = sample_grid(mode_sampler(m), residual_spec(m))
    floor = dict(vh_sweep(m, W, [1.0]))[1.0]
    for r, res in vh_sweep(m, W, [0.8, 0.9, 1.1, 1.2]):
        est = leftover_estimate(m, W, r, g0)
        assert abs(res - est) <= 2 * floor + 0.02 * est


def test_sweep_rejects_bad_input(te_mode):
    with pytest.raises(ValueError):
        vh_sweep(te_mode, 0.0, [1.0])
    with pytest.raises(ValueError):
        vh_sweep(te_mode, 1.0, [0.0])


def test_dispersive_sweep_minimum():
    # the residual operator uses the index at the carrier, so the minimum sits
    # at k / (n^2 omega); weak dispersion keeps it on the ratio-1 grid point
    ratios = np.round(np.linspace(0.9, 1.1, 9), 10)
    for n1, target in ((1e-4, 1.0), (0.02, None)):
        m = canonical_mode(n1=n1)
        if target is None:
            target = m.k / (m.n**2 * m.omega) / m.v_g
        res = [r for _, r in vh_sweep(m, 0.5 * m.omega, ratios)]
        assert abs(ratios[int(np.argmin(res))] - target) <= 0.0125 + 1e-12


def test_modal_phase_invariance():
    a = own("TE")(modulated_grid(canonical_mode(), math.pi))
    b = own("TE")(modulated_grid(canonical_mode(modal_phase=1.234), math.pi))
    assert np.max(np.abs(a.linf - b.linf)) <= 1e-13
    assert np.max(np.abs(a.l2 - b.l2)) <= 1e-13


@pytest.fixture(scope="module")
def cell():
    m = canonical_mode()
    return m, cell_spec(m)


@pytest.mark.parametrize("mult", [0.5, 1.5, 2.5, 7.0])
def test_energy_invariance(cell, mult):
    m, cs = cell
    e0 = classical_energy_density(sample_grid(mode_sampler(m), cs))
    s = apply_helical(mode_sampler(m), HelicalModulation(mult * m.omega, m.v_g))
    e1 = classical_energy_density(sample_grid(s, cs))
    assert abs(e1 - e0) <= 1e-12 * e0


def test_energy_zero_and_quadratic(cell):
    m, cs = cell
    g = sample_grid(mode_sampler(m), cs)
    assert classical_energy_density(g.scaled(0.0)) == 0.0
    assert classical_energy_density(g.scaled(2.0)) == pytest.approx(4 * classical_energy_density(g), rel=1e-12)


def test_energy_needs_whole_period(te_mode):
    g = sample_grid(mode_sampler(te_mode), residual_spec(te_mode))
    with pytest.raises(IncompletePeriod):
        classical_energy_density(g)
    assert classical_energy_density(g, require_period=False) > 0
