import numpy as np
import pytest

from prahm.errors import GridMismatch, GridTooSmall
from prahm.grid import GridSpec, Stencil, cell_spec, residual_spec, sample_grid
from prahm.algebra import TransverseVec
from prahm.modes import FieldSample, canonical_mode


class Poly:
    """Scalar test field f = x^2 y + t^3 + z^2 in every component."""

    omega = 1.0
    n = 1.0

    def __call__(self, x, y, z, t):
        f = x**2 * y + t**3 + z**2 + 0j
        return FieldSample(TransverseVec(f, f), TransverseVec(f, f), f, f)


def test_default_window_is_symmetric():
    s = GridSpec(4, 4, 9, 0.1, 0.1, 0.25, 0.1)
    assert s.t[0] == -s.t[-1]


def test_refined_keeps_window():
    s = residual_spec()
    r = s.refined(2)
    assert r.x[-1] == pytest.approx(s.x[-1]) and r.t[-1] == pytest.approx(s.t[-1])
    assert r.hx == s.hx / 2 and r.hz == s.hz / 2
    c = cell_spec(canonical_mode())
    rc = c.refined(2)
    assert rc.nx * rc.hx == pytest.approx(c.nx * c.hx)


def test_stencils_exact_for_quadratics():
    s = GridSpec(6, 6, 6, 0.1, 0.2, 0.05, 0.3, x0=0.4, y0=-0.2)
    g = sample_grid(Poly(), s)
    st = Stencil(g)
    X, Y, T = np.meshgrid(s.x, s.y, s.t, indexing="ij")
    inner = st.interior
    assert np.allclose(inner(st.dx(st.c(g.ex))), inner(2 * X * Y))
    assert np.allclose(inner(st.dy(st.c(g.ex))), inner(X**2))
    # central difference of t^3 carries the h^2 term exactly
    assert np.allclose(inner(st.dt(st.c(g.ex))), inner(3 * T**2 + s.ht**2))
    assert np.allclose(st.dz(g.ex), 0.0)


def test_grid_validation():
    s = GridSpec(4, 4, 4, 0.1, 0.1, 0.1, 0.1)
    g = sample_grid(Poly(), s)
    with pytest.raises(GridMismatch):
        g.with_fields(ex=np.zeros((2, 2, 3, 4)))
    other = sample_grid(Poly(), GridSpec(4, 4, 5, 0.1, 0.1, 0.1, 0.1))
    with pytest.raises(GridMismatch):
        g + other
    with pytest.raises(GridTooSmall):
        Stencil(sample_grid(Poly(), GridSpec(2, 4, 4, 0.1, 0.1, 0.1, 0.1)))
    with pytest.raises(ValueError):
        GridSpec(4, 4, 4, 0.0, 0.1, 0.1, 0.1)


def test_cell_spec_needs_cosine_profile():
    with pytest.raises(ValueError):
        cell_spec(canonical_mode(profile="bessel-circular"))
    c = cell_spec(canonical_mode(), periods=2)
    assert c.periodic and c.nt * c.ht == pytest.approx(2.0)
