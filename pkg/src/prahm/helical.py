"""Helical rotation of the transverse fields of a mode.

A modulation rotates ``E_T`` and ``cB_T`` by ``Theta = exp(sigma * h * Omega * tau)``
with ``tau = t - z / v_h`` and ``h = +/-1`` the helicity; the axial components
are untouched.  Grids sampled from a modulated mode carry the angle so the
residual stencils differentiate in the co-rotating frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import rotate
from .errors import IncompletePeriod
from .grid import FieldGrid, residual_spec, sample_grid
from .modes import FieldSample, ModeSampler, ModeSpec
from .residual import residual_te, residual_tm


@dataclass(frozen=True)
class HelicalModulation:
    Omega: float
    v_h: float
    helicity: int = 1

    def __post_init__(self):
        if self.Omega < 0:
            raise ValueError("Omega must be non-negative")
        if not self.v_h > 0:
            raise ValueError("v_h must be positive")
        if self.helicity not in (1, -1):
            raise ValueError("helicity must be +1 or -1")

    def tau(self, z, t):
        return t - z / self.v_h

    def angle(self, z, t):
        return self.helicity * self.Omega * self.tau(z, t)


class HelicalSampler:
    """A mode sampler with a helical modulation applied pointwise."""

    def __init__(self, base, mod: HelicalModulation):
        self.base = base
        self.modulation = mod

    @property
    def omega(self) -> float:
        return self.base.omega

    @property
    def n(self) -> float:
        return self.base.n

    @property
    def spec(self):
        return self.base.spec

    def frame_angle(self, z, t):
        inner = getattr(self.base, "frame_angle", None)
        extra = inner(z, t) if inner is not None else 0.0
        return self.modulation.angle(np.asarray(z, float), np.asarray(t, float)) + extra

    def __call__(self, x, y, z, t) -> FieldSample:
        fs = self.base(x, y, z, t)
        ang = self.modulation.angle(np.asarray(z, float), np.asarray(t, float))
        return FieldSample(rotate(ang, fs.et), rotate(ang, fs.cbt), fs.ez, fs.cbz)

    def __repr__(self):
        m = self.modulation
        return f"HelicalSampler(Omega={m.Omega!r}, v_h={m.v_h!r}, helicity={m.helicity})"


def apply_helical(sampler, mod: HelicalModulation) -> HelicalSampler:
    return HelicalSampler(sampler, mod)


def modulated_grid(spec: ModeSpec, Omega: float, v_h: float | None = None, helicity: int = 1,
                   grid_spec=None) -> FieldGrid:
    """Sample a helically modulated mode on the canonical residual patch."""
    mod = HelicalModulation(Omega, spec.v_g if v_h is None else v_h, helicity)
    gs = residual_spec(spec) if grid_spec is None else grid_spec
    return sample_grid(apply_helical(ModeSampler(spec), mod), gs)


def curl_residual(grid: FieldGrid, kind: str) -> float:
    """Max-norm residual of the transverse curl equation of the mode's own set."""
    if kind == "TE":
        return float(residual_te(grid).linf[2])
    return float(residual_tm(grid).linf[2])


def vh_sweep(spec: ModeSpec, Omega: float, ratios, helicity: int = 1,
             grid_spec=None) -> list[tuple[float, float]]:
    """Curl residual of the modulated mode as ``v_h = r * v_g`` is swept.

    Off the condition the uncancelled term is ``Omega * |k/(omega v_h) - n^2| |E|``
    (relative to ``n omega |E|``), which vanishes only at ``r = 1``.
    """
    if not Omega > 0:
        raise ValueError("Omega must be positive")
    out = []
    for r in ratios:
        if not r > 0:
            raise ValueError("ratios must be positive")
        g = modulated_grid(spec, Omega, r * spec.v_g, helicity, grid_spec)
        out.append((float(r), curl_residual(g, spec.kind)))
    return out


def leftover_estimate(spec: ModeSpec, Omega: float, ratio: float, grid: FieldGrid | None = None) -> float:
    """Analytic max-norm of the uncancelled curl term at ``v_h = ratio * v_g``.

    Rotating the frame adds ``Omega * sigma`` from ``dt`` and ``-Omega/v_h * sigma``
    from ``dz``.  Using the mode's own ``E_T``/``cB_T`` relation these collapse to
    ``Omega |k/(omega v_h) - n^2| |E_T|`` (TE) and ``n^2 Omega |1/v_h - 1/v_g| |E_T|``
    (TM), normalised like the residuals.  ``grid`` defaults to the unmodulated
    canonical patch, whose interior supplies ``max |E_T|``.
    """
    n, w = spec.n, spec.omega
    v_h = ratio * spec.v_g
    if spec.kind == "TE":
        coeff = Omega * abs(spec.k / (w * v_h) - n * n)
    else:
        coeff = n * n * Omega * abs(1.0 / v_h - 1.0 / spec.v_g)
    g = sample_grid(ModeSampler(spec), residual_spec(spec)) if grid is None else grid
    e = np.sqrt(np.abs(g.ex[1:-1, 1:-1, 1, 1:-1]) ** 2 + np.abs(g.ey[1:-1, 1:-1, 1, 1:-1]) ** 2)
    return float(coeff * e.max() / (n * w * g.field_scale()))


def classical_energy_density(grid: FieldGrid, *, require_period: bool = True) -> float:
    """Mean of ``(E.D + H.B)/2`` over the cross-section and time samples.

    Uses the real part of the stored fields with ``eps0 = mu0 = 1``, so
    ``D = n^2 E`` and ``H = B``.  The grid must be a periodic cell spanning a
    whole number of carrier periods.
    """
    s = grid.spec
    T = 2.0 * math.pi / grid.omega
    span = s.nt * s.ht
    if require_period:
        cycles = span / T
        if not s.periodic or abs(cycles - round(cycles)) > 1e-9 or round(cycles) < 1:
            raise IncompletePeriod(f"time window {span:.6g} is not a whole number of periods {T:.6g}")
    r = grid.real()
    n2 = grid.n**2
    c = slice(None), slice(None), 1, slice(None)
    e2 = r.ex[c] ** 2 + r.ey[c] ** 2 + r.ez[c] ** 2
    b2 = r.bx[c] ** 2 + r.by[c] ** 2 + r.bz[c] ** 2
    return float(0.5 * np.mean(n2 * e2 + b2))
