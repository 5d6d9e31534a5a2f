"""Analytic TE/TM modes of a uniform dielectric guide.

Natural units are used throughout: ``c = 1``, ``mu_r = 1`` and
``eps_r = n**2``.  A mode is driven by a scalar profile ``A(x, y)`` obeying
``lap_T A = -kappa**2 A``; TE modes take ``c*B_z = A`` and TM modes take
``n*E_z = A``.  The transverse fields follow from the analytic gradient of
``A``:

    TE:  sigma E_T = -i omega grad A / kappa^2,   cB_T = -i k grad A / kappa^2
    TM:  n E_T     = -i k grad A / kappa^2,        cB_T = -i n omega sigma grad A / kappa^2

with ``k**2 + kappa**2 = n**2 omega**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

import numpy as np

from .algebra import TransverseVec, sigma_apply
from .errors import BelowCutoff, KappaZero
from .special import bessel_j_all

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class RefractiveModel:
    """``n(omega) = n0 + n1 * (omega - omega_ref)``."""

    n0: float = 1.5
    n1: float = 0.0
    omega_ref: float = TWO_PI

    def n(self, omega):
        n = self.n0 + self.n1 * (np.asarray(omega, dtype=float) - self.omega_ref)
        if np.any(n <= 1e-9):
            raise ValueError(f"refractive index not positive at omega={omega}")
        return n if np.ndim(n) else float(n)

    @property
    def dispersive(self) -> bool:
        return self.n1 != 0.0


@dataclass(frozen=True)
class CosineProfile:
    """``cos(kx x) cos(ky y)``: a rectangular-cell standing pattern.

    On ``[0, pi/kx] x [0, pi/ky]`` the normal derivative vanishes at the walls,
    and the pattern is periodic on the doubled cell.
    """

    kx: float
    ky: float
    kind: str = field(default="separable-cosine", init=False)

    @property
    def kappa(self) -> float:
        return math.hypot(self.kx, self.ky)

    @property
    def cell(self) -> tuple[float, float]:
        """Half-period cell ``(a, b)`` with ``kx = pi/a`` and ``ky = pi/b``."""
        return math.pi / self.kx, math.pi / self.ky

    def value(self, x, y):
        return np.cos(self.kx * x) * np.cos(self.ky * y)

    def grad(self, x, y):
        cx, sx = np.cos(self.kx * x), np.sin(self.kx * x)
        cy, sy = np.cos(self.ky * y), np.sin(self.ky * y)
        return -self.kx * sx * cy, -self.ky * cx * sy


@dataclass(frozen=True)
class BesselProfile:
    """``J_m(kappa r) cos(m phi)`` for a circular guide cross-section."""

    kappa: float
    m: int = 0
    kind: str = field(default="bessel-circular", init=False)

    def _polar(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        r = np.hypot(x, y)
        phi = np.arctan2(y, x)
        return r, phi

    def value(self, x, y):
        r, phi = self._polar(x, y)
        return bessel_j_all(self.m, self.kappa * r)[self.m] * np.cos(self.m * phi)

    def grad(self, x, y):
        r, phi = self._polar(x, y)
        m, kap = self.m, self.kappa
        js = bessel_j_all(m + 1, kap * r)
        jm = js[m]
        djm = -js[1] if m == 0 else 0.5 * (js[m - 1] - js[m + 1])
        d_r = kap * djm * np.cos(m * phi)
        # (1/r) dA/dphi, with the r -> 0 limit taken analytically
        tiny = r < 1e-12
        jm_over_r = np.where(tiny, 0.5 * kap if m == 1 else 0.0, jm / np.where(tiny, 1.0, r))
        d_phi_over_r = -m * jm_over_r * np.sin(m * phi)
        c, s = np.cos(phi), np.sin(phi)
        return c * d_r - s * d_phi_over_r, s * d_r + c * d_phi_over_r


Profile = CosineProfile | BesselProfile


@dataclass(frozen=True)
class FieldSample:
    """Six field components at a set of space-time points.

    ``et`` and ``cbt`` are transverse vectors; ``ez`` and ``cbz`` are the axial
    components.  Magnetic fields are carried as ``c*B`` (numerically ``B`` here).
    """

    et: TransverseVec
    cbt: TransverseVec
    ez: complex | np.ndarray
    cbz: complex | np.ndarray

    def __add__(self, other: FieldSample) -> FieldSample:
        return FieldSample(self.et + other.et, self.cbt + other.cbt,
                           self.ez + other.ez, self.cbz + other.cbz)

    def __mul__(self, s) -> FieldSample:
        return FieldSample(self.et * s, self.cbt * s, self.ez * s, self.cbz * s)

    __rmul__ = __mul__


def axial_wavenumber(omega: float, refr: RefractiveModel, kappa: float) -> float:
    """``k = sqrt(n^2 omega^2 - kappa^2)``; raises :class:`BelowCutoff` if not positive."""
    nw = refr.n(omega) * omega
    k2 = nw * nw - kappa * kappa
    if not k2 > 0.0:
        raise BelowCutoff(f"below cutoff: n*omega={nw:.6g} <= kappa={kappa:.6g}")
    return math.sqrt(k2)


def _k_of_omega(omega, refr, kappa):
    return axial_wavenumber(omega, refr, kappa)


def group_velocity(omega: float, refr: RefractiveModel, kappa: float) -> float:
    """``d omega / dk`` at constant ``kappa``.

    Closed form ``k / (n^2 omega)`` for a constant index; otherwise a central
    difference of ``k(omega)`` with relative step 1e-6.
    """
    k = axial_wavenumber(omega, refr, kappa)
    if not refr.dispersive:
        n = refr.n(omega)
        return k / (n * n * omega)
    return group_velocity_numeric(omega, refr, kappa)


def group_velocity_numeric(omega: float, refr: RefractiveModel, kappa: float,
                           rel_step: float = 1e-6) -> float:
    d = rel_step * omega
    dk = _k_of_omega(omega + d, refr, kappa) - _k_of_omega(omega - d, refr, kappa)
    return 2.0 * d / dk


def phase_velocity(omega: float, refr: RefractiveModel, kappa: float) -> float:
    return omega / axial_wavenumber(omega, refr, kappa)


@dataclass(frozen=True)
class ModeSpec:
    """A propagating TE or TM mode; ``k`` is derived from the dispersion relation."""

    kind: Literal["TE", "TM"]
    omega: float
    refr: RefractiveModel
    profile: Profile
    amplitude: float = 1.0
    modal_phase: float = 0.0

    def __post_init__(self):
        if self.kind not in ("TE", "TM"):
            raise ValueError(f"mode kind must be TE or TM, got {self.kind!r}")
        axial_wavenumber(self.omega, self.refr, self.kappa)

    @property
    def kappa(self) -> float:
        return self.profile.kappa

    @cached_property
    def n(self) -> float:
        return self.refr.n(self.omega)

    @cached_property
    def k(self) -> float:
        return axial_wavenumber(self.omega, self.refr, self.kappa)

    @cached_property
    def v_g(self) -> float:
        return group_velocity(self.omega, self.refr, self.kappa)

    @property
    def v_p(self) -> float:
        return self.omega / self.k

    @property
    def period(self) -> float:
        return TWO_PI / self.omega


def canonical_mode(kind: str = "TE", *, omega: float = TWO_PI, n0: float = 1.5,
                   n1: float = 0.0, omega_ref: float | None = None,
                   kappa_ratio: float = 0.6, profile: str = "separable-cosine",
                   bessel_order: int = 1, amplitude: float = 1.0,
                   modal_phase: float = 0.0) -> ModeSpec:
    """Mode with ``kappa = kappa_ratio * n * omega`` (defaults: the test mode)."""
    refr = RefractiveModel(n0, n1, omega if omega_ref is None else omega_ref)
    kappa = kappa_ratio * refr.n(omega) * omega
    if profile == "separable-cosine":
        kx = kappa / math.sqrt(2.0)
        prof: Profile = CosineProfile(kx, kx)
    elif profile == "bessel-circular":
        prof = BesselProfile(kappa, bessel_order)
    else:
        raise ValueError(f"unknown profile kind {profile!r}")
    return ModeSpec(kind, omega, refr, prof, amplitude, modal_phase)


class ModeSampler:
    """Pure mapping ``(x, y, z, t) -> FieldSample`` for a bare mode."""

    modulation = None

    def __init__(self, spec: ModeSpec):
        if spec.kappa == 0.0:
            raise KappaZero("transverse fields need kappa > 0")
        self.spec = spec

    @property
    def omega(self) -> float:
        return self.spec.omega

    @property
    def n(self) -> float:
        return self.spec.n

    def phasor(self, z, t):
        s = self.spec
        return s.amplitude * np.exp(1j * (s.omega * t - s.k * z + s.modal_phase))

    def __call__(self, x, y, z, t) -> FieldSample:
        s = self.spec
        x, y, z, t = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, y, z, t)))
        P = self.phasor(z, t)
        A = s.profile.value(x, y) * P
        gx, gy = s.profile.grad(x, y)
        grad = TransverseVec(gx * P, gy * P)
        kap2 = s.kappa**2
        zero = np.zeros_like(A)
        if s.kind == "TE":
            et = sigma_apply(grad) * (1j * s.omega / kap2)
            cbt = grad * (-1j * s.k / kap2)
            return FieldSample(et, cbt, zero, A)
        et = grad * (-1j * s.k / (s.n * kap2))
        cbt = sigma_apply(grad) * (-1j * s.n * s.omega / kap2)
        return FieldSample(et, cbt, A / s.n, zero)


def te_mode_sampler(spec: ModeSpec) -> ModeSampler:
    if spec.kind != "TE":
        raise ValueError("te_mode_sampler needs a TE ModeSpec")
    return ModeSampler(spec)


def tm_mode_sampler(spec: ModeSpec) -> ModeSampler:
    if spec.kind != "TM":
        raise ValueError("tm_mode_sampler needs a TM ModeSpec")
    return ModeSampler(spec)


def mode_sampler(spec: ModeSpec) -> ModeSampler:
    return ModeSampler(spec)


def profile_helmholtz_residual(profile: Profile, h: float, points=None) -> float:
    """Max of ``|lap_h A + kappa^2 A| / (kappa^2 max|A|)`` with a 5-point Laplacian.

    ``points`` is an optional ``(x, y)`` pair of arrays; by default a 15x15 set
    covering the profile's natural cell (or a disk of radius ``3/kappa``).
    """
    if h <= 0:
        raise ValueError("h must be positive")
    if points is None:
        if isinstance(profile, CosineProfile):
            a, b = profile.cell
            xs, ys = np.linspace(0.05 * a, 1.95 * a, 15), np.linspace(0.05 * b, 1.95 * b, 15)
        else:
            R = 3.0 / profile.kappa
            xs = ys = np.linspace(-R, R, 15)
        x, y = np.meshgrid(xs, ys, indexing="ij")
    else:
        x, y = (np.asarray(v, dtype=float) for v in points)
    A = profile.value(x, y)
    lap = (profile.value(x + h, y) + profile.value(x - h, y) + profile.value(x, y + h)
           + profile.value(x, y - h) - 4.0 * A) / (h * h)
    kap2 = profile.kappa**2
    return float(np.max(np.abs(lap + kap2 * A)) / (kap2 * np.max(np.abs(A))))
