"""Effective advanced currents, the helical power balance, and interaction energy.

Sign conventions (``c = mu = 1``, ``D = n^2 E``, ``H = B``): the effective
current of a field is what Ampere's law is missing,

    J_T = -[dz(sigma cB_T) - n^2 dt E_T - sigma grad' cB_z]
    J_z = -[grad'^tr(-sigma cB_T) - dt(n^2 E_z)]

so an exact solution has ``J = 0``.  For a retarded field rotated by ``Theta``
and an advanced field whose rotation has been starred to the same ``Theta``,
averaging over a periodic cell and a whole period gives

    <<E'_R . J'_A>> = <<-dz[E_R^tr sigma H_A]>> + Omega <<D_R^tr sigma E_A - (1/v_h) E_R^tr B_A>>

provided the unrotated retarded field is a solution and each advanced
component oscillates in phase with its retarded counterpart.  When
``E_R = -v_g sigma B_R`` (TM modes) the last term is ``H_R^tr sigma B_A`` and
the familiar ``Omega [D_R^tr sigma E_A - H_R^tr sigma B_A]`` volume term follows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .algebra import TransverseVec, inner, rotate, sigma_apply
from .errors import GridMismatch
from .grid import FieldGrid, Stencil, sample_grid, vec_mag
from .helical import HelicalModulation, HelicalSampler
from .modes import FieldSample, ModeSampler
from .packet import AdvancedMap, PacketSpec


@dataclass(frozen=True)
class EffectiveCurrent:
    jt: TransverseVec
    jz: np.ndarray
    scale: float
    interior: tuple

    def max_normalized(self) -> float:
        """Largest ``|J|`` on the trimmed interior over ``field scale * n * omega``."""
        if self.scale == 0:
            return 0.0
        sl = self.interior
        m = np.sqrt(vec_mag(self.jt)[sl] ** 2 + np.abs(self.jz[sl]) ** 2)
        return float(m.max() / self.scale)


def effective_advanced_current(grid: FieldGrid) -> EffectiveCurrent:
    """Finite-difference effective current on the centre plane of ``grid``."""
    st = Stencil(grid)
    n2 = grid.n**2
    E, cB = grid.et, grid.cbt
    jt = -(st.dzv(st.sig(cB)) - st.dtv(st.cv(E)) * n2 - st.sig(st.grad(st.c(grid.bz))))
    jz = -(st.div(-st.sig(st.cv(cB))) - st.dt(st.c(n2 * grid.ez)))
    sl = (slice(None),) * 3 if grid.spec.periodic else (slice(1, -1),) * 3
    return EffectiveCurrent(jt, jz, grid.field_scale() * grid.n * grid.omega, sl)


def star_reverse(mod: HelicalModulation) -> HelicalModulation:
    """Reverse the sense of ``tau`` in a modulation; an involution."""
    return replace(mod, helicity=-mod.helicity)


def pairing_check(theta: HelicalModulation, phi: HelicalModulation, dtau, F: TransverseVec) -> float:
    """Deviation of ``Theta^tr Phi* F`` from ``F`` at increments ``dtau``."""
    dtau = np.asarray(dtau, dtype=float)
    star = star_reverse(phi)
    out = rotate(-theta.angle(0.0, dtau), rotate(star.angle(0.0, dtau), F))
    return float(np.max((out - F).norm()))


def star_grid(grid: FieldGrid) -> FieldGrid:
    """Re-rotate transverse fields from the grid's frame to the reversed frame."""
    ang = -2.0 * grid.frame_angle[None, None, :, :]
    E = rotate(ang, grid.et)
    B = rotate(ang, grid.cbt)
    meta = dict(grid.meta)
    meta["starred"] = not meta.get("starred", False)
    return replace(grid, ex=E.x, ey=E.y, bx=B.x, by=B.y, frame_angle=-grid.frame_angle, meta=meta)


# ------------------------------------------------------------- balance


@dataclass(frozen=True)
class InteractionReport:
    boundary: float
    volume: float
    source: float
    imbalance: float
    volume_exact: float = float("nan")
    imbalance_exact: float = float("nan")
    M: int | None = None
    constant: float | None = None


def _relative(lhs_terms, rhs) -> float:
    total = sum(abs(t) for t in lhs_terms) + abs(rhs)
    if total == 0:
        return 0.0
    return abs(sum(lhs_terms) - rhs) / total


def helical_power_balance(gridR: FieldGrid, gridA: FieldGrid, Omega: float) -> InteractionReport:
    """Both sides of the helical power balance on a periodic cell and whole period.

    ``gridA`` holds the advanced field in its own (counter-rotating) frame and
    is starred here; a grid already in the retarded frame is used as is.
    ``volume`` is the ``Omega [D_R sigma E_A - H_R sigma B_A]`` form and
    ``imbalance`` compares against it; ``volume_exact`` uses ``E_R^tr B_A / v_h``
    with ``v_h`` read from the frame angle and is exact for any retarded mode.
    """
    if gridR.spec != gridA.spec:
        raise GridMismatch("retarded and advanced grids must share a GridSpec")
    fr, fa = gridR.frame_angle, gridA.frame_angle
    if np.allclose(fa, -fr, atol=1e-12) and not np.allclose(fr, 0.0, atol=1e-12):
        gridA = star_grid(gridA)
    elif not np.allclose(fa, fr, atol=1e-12):
        raise GridMismatch("advanced frame is neither the retarded frame nor its reverse")
    R, A = gridR.real(), gridA.real()
    n2 = R.n**2
    st = Stencil(A)

    J = effective_advanced_current(A)
    c = slice(None), slice(None), 1, slice(None)
    source = float(np.mean(inner(TransverseVec(R.ex[c], R.ey[c]), J.jt) + R.ez[c] * J.jz))

    flux = inner(R.et, sigma_apply(A.cbt))
    boundary = float(-np.mean(st.dz(flux)))

    ER = TransverseVec(R.ex[c], R.ey[c])
    BR = TransverseVec(R.bx[c], R.by[c])
    EA = TransverseVec(A.ex[c], A.ey[c])
    BA = TransverseVec(A.bx[c], A.by[c])
    de = float(np.mean(n2 * inner(ER, sigma_apply(EA))))
    volume = Omega * (de - float(np.mean(inner(BR, sigma_apply(BA)))))
    # Omega / v_h from the frame: d(angle)/dz = -Omega / v_h
    om_over_v = -float(np.mean(fr[2] - fr[0])) / (2 * R.spec.hz)
    volume_exact = Omega * de - om_over_v * float(np.mean(inner(ER, BA)))

    return InteractionReport(boundary, volume, source,
                             _relative([boundary, volume], source),
                             volume_exact, _relative([boundary, volume_exact], source))


# --------------------------------------------------------- advanced maps


class MappedSampler:
    """Advanced partner of a mode: ``phi0`` gives ``{-E, cB}``, ``phi90`` gives ``{-sigma E, sigma cB}``.

    Axial components follow the electric sign for ``phi0`` and are kept for ``phi90``.
    """

    def __init__(self, base, advanced_map: AdvancedMap):
        if advanced_map not in ("phi0", "phi90"):
            raise ValueError(f"unknown advanced map {advanced_map!r}")
        self.base = base
        self.advanced_map = advanced_map
        self.omega, self.n = base.omega, base.n

    def __call__(self, x, y, z, t) -> FieldSample:
        fs = self.base(x, y, z, t)
        if self.advanced_map == "phi0":
            return FieldSample(-fs.et, fs.cbt, -fs.ez, fs.cbz)
        return FieldSample(-sigma_apply(fs.et), sigma_apply(fs.cbt), fs.ez, fs.cbz)


def retarded_advanced_samplers(spec: PacketSpec, advanced_map: AdvancedMap = "phi90"):
    """Retarded (+Omega) and advanced (-Omega) helical samplers for a packet."""
    base = ModeSampler(spec.mode)
    v_g = spec.mode.v_g
    ret = HelicalSampler(base, HelicalModulation(spec.Omega, v_g, 1))
    adv = HelicalSampler(MappedSampler(base, advanced_map), HelicalModulation(spec.Omega, v_g, -1))
    return ret, adv


def interaction_energy(spec: PacketSpec, advanced_map: AdvancedMap = "phi90",
                       nt: int = 256, nxy: int = 16) -> InteractionReport:
    """``<<Omega [D_R sigma E_A* - H_R sigma B_A*]>> * v_g * tau0`` over the packet window.

    Averages run over the doubled cell and ``tau`` in ``[-tau1, tau2]`` at
    ``z = 0`` with the midpoint rule, using real fields.  ``constant`` divides
    the value by ``(M + 1/2) * <<D_R . E_R + H_R . B_R>> * v_g * 2 pi``.
    """
    ret, adv = retarded_advanced_samplers(spec, advanced_map)
    star = HelicalSampler(adv.base, star_reverse(adv.modulation))
    mode = spec.mode
    if not hasattr(mode.profile, "cell"):
        raise ValueError("interaction quadrature needs a separable-cosine profile")
    a, b = mode.profile.cell
    h = spec.tau0 / nt
    tau = -spec.tau1 + h * (np.arange(nt) + 0.5)
    xs, ys = 2 * a * np.arange(nxy) / nxy, 2 * b * np.arange(nxy) / nxy
    X, Y, T = np.meshgrid(xs, ys, tau, indexing="ij")
    R = ret(X, Y, 0.0, T)
    A = star(X, Y, 0.0, T)
    n2 = mode.n**2
    ER, BR, EA, BA = R.et.real, R.cbt.real, A.et.real, A.cbt.real
    bracket = n2 * inner(ER, sigma_apply(EA)) - inner(BR, sigma_apply(BA))
    value = float(spec.Omega * np.mean(bracket) * mode.v_g * spec.tau0)
    form = float(np.mean(n2 * inner(ER, ER) + inner(BR, BR)))
    denom = (spec.M + 0.5) * form * mode.v_g * 2 * math.pi
    const = value / denom if denom != 0 else float("nan")
    return InteractionReport(0.0, value, 0.0, 0.0, M=spec.M, constant=const)


# ----------------------------------------------------------- poynting


@dataclass(frozen=True)
class PoyntingReport:
    imbalance: float
    energy_mismatch: float
    electric: float
    magnetic: float


def complex_poynting_balance(grid: FieldGrid) -> PoyntingReport:
    """Cell average of ``div(E x H*) + i omega (|H|^2 - n^2 |E|^2)`` for a phasor grid.

    The transverse part of the divergence averages out on a periodic cell, so
    only ``dz (E x H*)_z`` is differenced.  ``energy_mismatch`` compares the
    mean electric and magnetic densities ``n^2 |E|^2`` and ``|B|^2``.
    """
    st = Stencil(grid)
    sz = grid.ex * np.conj(grid.by) - grid.ey * np.conj(grid.bx)
    flux = st.dz(sz)
    c = slice(None), slice(None), 1, slice(None)
    el = grid.n**2 * (np.abs(grid.ex[c]) ** 2 + np.abs(grid.ey[c]) ** 2 + np.abs(grid.ez[c]) ** 2)
    mg = np.abs(grid.bx[c]) ** 2 + np.abs(grid.by[c]) ** 2 + np.abs(grid.bz[c]) ** 2
    e_mean, m_mean = float(np.mean(el)), float(np.mean(mg))
    total = e_mean + m_mean
    if total == 0:
        return PoyntingReport(0.0, 0.0, 0.0, 0.0)
    lhs = np.mean(st.interior(flux)) + 1j * grid.omega * (m_mean - e_mean)
    return PoyntingReport(float(abs(lhs) / (grid.omega * total)),
                          abs(e_mean - m_mean) / total, e_mean, m_mean)


def canonical_balance(M: int = 0, kind: str = "TM", advanced_map: AdvancedMap = "phi90",
                      refine: int = 1, nxy: int = 32, nt: int = 256) -> InteractionReport:
    """Power balance for a packet's retarded/advanced pair on the doubled cell.

    ``refine`` multiplies the transverse and temporal sample counts and divides
    the axial step, for convergence checks.
    """
    from .grid import cell_spec
    from .modes import canonical_mode

    spec = PacketSpec(M, mode=canonical_mode(kind))
    ret, adv = retarded_advanced_samplers(spec, advanced_map)
    cs = cell_spec(spec.mode, nxy=nxy * refine, nt=nt * refine, hz=1e-3 / refine)
    return helical_power_balance(sample_grid(ret, cs), sample_grid(adv, cs), spec.Omega)


def random_advanced_grid(mode, Omega: float, grid_spec, rng: np.random.Generator,
                         orders: int = 2) -> FieldGrid:
    """Smooth, non-Maxwellian advanced field on a periodic cell, counter-rotating at ``Omega``.

    Each component is a random trigonometric polynomial of the cell (harmonics
    up to ``orders``) carried by the mode's phasor ``P = exp(i(omega t - k z))``;
    transverse components ride on ``-i P`` and axial ones on ``P``, matching
    the phase of a mode's own components.
    """
    kx, ky = mode.profile.kx, mode.profile.ky
    ps = [(p, q) for p in range(-orders, orders + 1) for q in range(0, orders + 1)]
    coeffs = rng.normal(size=(6, len(ps)))
    phases = rng.uniform(0, 2 * math.pi, size=(6, len(ps)))
    X, Y = np.meshgrid(grid_spec.x, grid_spec.y, indexing="ij")
    prof = [sum(c * np.cos(p * kx * X + q * ky * Y + ph)
                for c, ph, (p, q) in zip(coeffs[i], phases[i], ps)) for i in range(6)]
    Z, T = np.meshgrid(grid_spec.z, grid_spec.t, indexing="ij")
    P = np.exp(1j * (mode.omega * T - mode.k * Z))[None, None]
    f = [pr[:, :, None, None] * P for pr in prof]
    frame = -Omega * (T - Z / mode.v_g)
    E = rotate(frame[None, None], TransverseVec(-1j * f[0], -1j * f[1]))
    B = rotate(frame[None, None], TransverseVec(-1j * f[2], -1j * f[3]))
    return FieldGrid(grid_spec, E.x, E.y, B.x, B.y, f[4].copy(), f[5].copy(), n=mode.n,
                     omega=mode.omega, frame_angle=frame, meta={"sampler": "random"})
