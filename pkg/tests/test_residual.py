import numpy as np
import pytest
from dataclasses import replace

from prahm.algebra import TransverseVec, sigma_apply
from prahm.errors import AsymmetricWindow, DegenerateResidual, SpacingMismatch
from prahm.grid import GridSpec, residual_spec, sample_grid, vec_mag
from prahm.modes import canonical_mode, mode_sampler
from prahm.residual import (convergence_order, lightcone_decompose, lightcone_reconstruct,
                            residual_lightcone, residual_te, residual_tm, sigma_time_reverse,
                            te_residual_fields)


@pytest.fixture(scope="module")
def grids():
    out = {}
    for kind in ("TE", "TM"):
        m = canonical_mode(kind)
        s = mode_sampler(m)
        out[kind] = (sample_grid(s, residual_spec(m)), sample_grid(s, residual_spec(m, refine=2)))
    return out


def own(kind):
    return residual_te if kind == "TE" else residual_tm


@pytest.mark.parametrize("kind", ["TE", "TM"])
def test_canonical_residuals_and_order(grids, kind):
    g1, g2 = grids[kind]
    r1, r2 = own(kind)(g1), own(kind)(g2)
    assert r1.max_linf <= 1e-3
    assert r2.max_linf < r1.max_linf
    orders = convergence_order(r1, r2)
    assert np.all((orders >= 1.7) & (orders <= 2.3))
    assert np.all(np.abs(convergence_order(r1, r2, "linf") - 2) <= 0.3)


def test_zero_grid(grids):
    g = grids["TE"][0].scaled(0.0)
    assert residual_te(g).max_linf == 0.0 and residual_tm(g).max_linf == 0.0
    assert residual_lightcone(g).max_linf == 0.0
    with pytest.raises(DegenerateResidual):
        convergence_order(residual_te(g), residual_te(grids["TE"][1].scaled(0.0)))


def test_spacing_mismatch(grids):
    r = residual_te(grids["TE"][0])
    with pytest.raises(SpacingMismatch):
        convergence_order(r, r)


def test_doubled_e_violates_te(grids):
    g = grids["TE"][0]
    bad = g.with_fields(ex=2 * g.ex, ey=2 * g.ey)
    assert residual_te(bad).linf[2] >= 0.1


def test_flipped_b_violates_tm(grids):
    g = grids["TM"][0]
    bad = g.with_fields(bx=-g.bx, by=-g.by)
    r = residual_tm(bad)
    assert r.linf[1] >= 0.1


def test_lightcone_round_trip(rng):
    spec = GridSpec(4, 4, 4, 0.1, 0.1, 0.1, 0.1)
    shape = (4, 4, 3, 4)
    comps = {k: rng.normal(size=shape) + 1j * rng.normal(size=shape) for k in ("ex", "ey", "bx", "by")}
    g = sample_grid(mode_sampler(canonical_mode()), spec).with_fields(**comps)
    e_te, cb_te, e_tm, cb_tm = lightcone_reconstruct(lightcone_decompose(g), g.n)
    for F in (e_te, e_tm):
        assert np.max(vec_mag(F - g.et)) <= 1e-13 * np.max(vec_mag(g.et))
    for F in (cb_te, cb_tm):
        assert np.max(vec_mag(F - g.cbt)) <= 1e-13 * np.max(vec_mag(g.cbt))


def test_lightcone_plus_vanishes_for_aligned_te(grids):
    g = grids["TE"][0]
    sE = sigma_apply(g.et)
    aligned = g.with_fields(bx=sE.x, by=sE.y)
    assert np.max(vec_mag(lightcone_decompose(aligned).te_plus)) == 0.0


@pytest.mark.parametrize("kind", ["TE", "TM"])
def test_lightcone_matches_matrix_form(grids, kind):
    g = grids[kind][0]
    lc, mf = residual_lightcone(g, kind), own(kind)(g)
    assert lc.max_linf <= 1e-3
    assert 0.5 <= lc.max_linf / mf.max_linf <= 2.0 * (1 + 1e-9)
    # the mixed equation is exactly twice the transverse curl equation
    assert lc.linf[2] == pytest.approx(2 * mf.linf[2], rel=1e-9)


def test_vacuum_lightcone():
    m = canonical_mode(n0=1.0)
    g = sample_grid(mode_sampler(m), residual_spec(m))
    assert residual_lightcone(g).max_linf <= 1e-3


@pytest.mark.parametrize("kind", ["TE", "TM"])
def test_time_reverse_symmetry(grids, kind):
    g = grids[kind][0]
    rev = sigma_time_reverse(g)
    a, b = own(kind)(g), own(kind)(rev)
    assert np.max(np.abs(a.l2 - b.l2)) <= 1e-12 and np.max(np.abs(a.linf - b.linf)) <= 1e-12
    back = sigma_time_reverse(rev)
    assert back.sigma_sign == g.sigma_sign
    for u, v in zip(back.components, g.components):
        assert np.max(np.abs(u - v)) <= 1e-13


def test_time_reverse_preserves_non_maxwellian(grids):
    g = grids["TE"][0]
    bad = g.with_fields(ex=2 * g.ex, ey=2 * g.ey)
    a, b = residual_te(bad), residual_te(sigma_time_reverse(bad))
    assert np.allclose(a.linf, b.linf, rtol=0, atol=1e-12)
    assert a.linf[2] >= 0.1


def test_time_reverse_needs_symmetric_window(te_mode):
    g = sample_grid(mode_sampler(te_mode), replace(residual_spec(te_mode), t0=0.0))
    with pytest.raises(AsymmetricWindow):
        sigma_time_reverse(g)


def test_linearity(grids):
    g1 = grids["TE"][0]
    g2 = g1.with_fields(ex=1j * g1.ex + 0.3, by=g1.by * (2 - 1j))
    _, ra = te_residual_fields(g1)
    _, rb = te_residual_fields(g2)
    _, rs = te_residual_fields(g1 + g2)
    for a, b, s in zip(ra, rb, rs):
        if isinstance(s, TransverseVec):
            d = vec_mag(s - a - b)
        else:
            d = np.abs(s - a - b)
        assert np.max(d) <= 1e-13 * max(1.0, np.max(np.abs(g1.ex)) / g1.spec.ht)
