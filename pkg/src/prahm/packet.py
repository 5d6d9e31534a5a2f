"""Resonant packets built from a counter-rotating pair of helical modulations.

A retarded copy of a mode is modulated with ``+Omega`` and an advanced copy with
``-Omega`` rotated by a fixed angle ``phi``.  With equal generators the sum is

    Theta(Omega tau) F + Theta(phi - Omega tau) F = 2 cos(Omega tau - phi/2) Theta(phi/2) F

which vanishes at ``tau = -tau1`` and ``tau = tau2``.  The window holds ``Q``
whole carrier periods, which fixes ``Omega = (2M + 1) omega / (2Q)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .algebra import TransverseVec, rotate
from .errors import BelowCutoff, DegenerateCancellation, NeedTwoProbes, PhiOutOfRange
from .helical import HelicalModulation, HelicalSampler
from .modes import FieldSample, ModeSampler, ModeSpec, axial_wavenumber, canonical_mode

AdvancedMap = Literal["phi0", "phi90"]


@dataclass(frozen=True)
class PacketParams:
    Omega: float
    tau1: float
    tau2: float
    tau0: float
    family: str
    discarded: dict = field(default_factory=dict)


def packet_params(M: int, phi: float, omega: float, Q: int = 1) -> PacketParams:
    """Window of the resonant family (N = M + 1), with the degenerate one for reference.

    ``tau1`` and ``tau2`` solve ``cos(-Omega tau1 - phi/2) = 0`` and
    ``cos(Omega tau2 - phi/2) = 0`` on the lobe that contains ``tau = 0``.
    """
    if M < 0 or int(M) != M:
        raise ValueError("M must be a non-negative integer")
    if Q < 1 or int(Q) != Q:
        raise ValueError("Q must be a positive integer")
    if not abs(phi) < (2 * M + 1) * math.pi:
        raise PhiOutOfRange(f"|phi| must be below (2M+1)pi = {(2 * M + 1) * math.pi:.6g}")
    Omega = (2 * M + 1) * omega / (2 * Q)
    tau1 = ((M + 0.5) * math.pi - 0.5 * phi) / Omega
    tau2 = ((M + 0.5) * math.pi + 0.5 * phi) / Omega
    # N = M family: same Omega, the second zero one lobe earlier
    d1 = tau1
    d2 = ((M - 0.5) * math.pi + 0.5 * phi) / Omega
    discarded = {"family": "degenerate", "Omega": Omega, "tau1": d1, "tau2": d2,
                 "tau0": 2 * M * math.pi / Omega}
    return PacketParams(Omega, tau1, tau2, 2 * math.pi * Q / omega, "resonant", discarded)


@dataclass(frozen=True)
class PacketSpec:
    M: int
    phi: float = math.pi / 2
    mode: ModeSpec = field(default_factory=canonical_mode)
    Q: int = 1

    def __post_init__(self):
        object.__setattr__(self, "_params", packet_params(self.M, self.phi, self.mode.omega, self.Q))

    @property
    def params(self) -> PacketParams:
        return self._params

    @property
    def Omega(self) -> float:
        return self._params.Omega

    @property
    def tau1(self) -> float:
        return self._params.tau1

    @property
    def tau2(self) -> float:
        return self._params.tau2

    @property
    def tau0(self) -> float:
        return self.tau1 + self.tau2

    @property
    def omega(self) -> float:
        return self.mode.omega

    def in_window(self, tau):
        tau = np.asarray(tau, dtype=float)
        return (tau >= -self.tau1) & (tau <= self.tau2)


def envelope(spec: PacketSpec, tau):
    """``(phi/2, cos(Omega tau - phi/2))`` inside ``[-tau1, tau2]``, zero outside.

    The first entry is the angle of the fixed rotation multiplying the scalar.
    """
    tau = np.asarray(tau, dtype=float)
    val = np.where(spec.in_window(tau), np.cos(spec.Omega * tau - 0.5 * spec.phi), 0.0)
    return 0.5 * spec.phi, (val if val.ndim else float(val))


class _ReversedE:
    """Mode with the electric field reversed: ``{E, cB} -> {-E, cB}``."""

    def __init__(self, base):
        self.base = base
        self.omega, self.n = base.omega, base.n

    def __call__(self, x, y, z, t):
        fs = self.base(x, y, z, t)
        return FieldSample(-fs.et, fs.cbt, -fs.ez, fs.cbz)


class PacketSampler:
    """Windowed sum of the retarded and advanced helical copies of a mode."""

    def __init__(self, spec: PacketSpec, advanced_map: AdvancedMap = "phi90"):
        if advanced_map not in ("phi0", "phi90"):
            raise ValueError(f"unknown advanced map {advanced_map!r}")
        self.spec = spec
        self.advanced_map = advanced_map
        base = ModeSampler(spec.mode)
        v_g = spec.mode.v_g
        self.retarded = HelicalSampler(base, HelicalModulation(spec.Omega, v_g, 1))
        adv_base = base if advanced_map == "phi90" else _ReversedE(base)
        self.advanced = HelicalSampler(adv_base, HelicalModulation(spec.Omega, v_g, -1))

    @property
    def omega(self) -> float:
        return self.spec.omega

    @property
    def n(self) -> float:
        return self.spec.mode.n

    def tau(self, z, t):
        return np.asarray(t, float) - np.asarray(z, float) / self.spec.mode.v_g

    def parts(self, x, y, z, t) -> tuple[FieldSample, FieldSample]:
        """Unwindowed ``(retarded, advanced)`` contributions."""
        r = self.retarded(x, y, z, t)
        a = self.advanced(x, y, z, t)
        phi = self.spec.phi
        a = FieldSample(rotate(phi, a.et), rotate(phi, a.cbt), a.ez, a.cbz)
        return r, a

    def __call__(self, x, y, z, t) -> FieldSample:
        r, a = self.parts(x, y, z, t)
        w = self.spec.in_window(self.tau(z, t)).astype(float)
        return (r + a) * w


def synth_packet(spec: PacketSpec, advanced_map: AdvancedMap = "phi90") -> PacketSampler:
    return PacketSampler(spec, advanced_map)


def counter_helical_sum(F: TransverseVec, Omega: float, phi: float, tau) -> TransverseVec:
    """``Theta(Omega tau) F + Theta(phi - Omega tau) F`` for any transverse vector."""
    a = Omega * np.asarray(tau, dtype=float)
    return rotate(a, F) + rotate(phi - a, F)


def ellipse_params(F: TransverseVec):
    """Polarisation ellipse of a complex 2-vector: ``(major, minor, orientation, handedness)``.

    ``orientation`` is the major-axis angle mod pi; ``minor`` is signed by the
    sense of rotation, and ``handedness`` is its sign.
    """
    x, y = np.asarray(F.x, dtype=complex), np.asarray(F.y, dtype=complex)
    s0 = np.abs(x) ** 2 + np.abs(y) ** 2
    s1 = np.abs(x) ** 2 - np.abs(y) ** 2
    s2 = 2 * np.real(x * np.conj(y))
    s3 = -2 * np.imag(x * np.conj(y))
    lin = np.hypot(s1, s2)
    major = np.sqrt(0.5 * (s0 + lin))
    # major * minor = |s3| / 2 avoids the cancellation in s0 - lin
    minor = np.where(major > 0, 0.5 * s3 / np.where(major > 0, major, 1.0), 0.0)
    orient = np.mod(0.5 * np.arctan2(s2, s1), math.pi)
    return major, minor, orient, np.sign(s3)


# ---------------------------------------------------------------- energy


@dataclass(frozen=True)
class AdditivityResult:
    lhs: float
    rhs: float
    deviation: float


def energy_additivity_check(spec: PacketSpec, advanced_map: AdvancedMap = "phi90",
                            nt: int = 512, nxy: int = 8) -> AdditivityResult:
    """Window mean of ``n^2 |E_T|^2 + |cB_T|^2`` for the packet vs its two parts.

    Midpoint rule over ``[-tau1, tau2]`` at ``z = 0`` and over the doubled cell.
    The cross terms carry ``Theta(phi - 2 Omega tau)``; the window spans
    ``2M + 1`` whole cycles of it, so the midpoint sum removes them exactly.
    """
    ps = PacketSampler(spec, advanced_map)
    h = spec.tau0 / nt
    tau = -spec.tau1 + h * (np.arange(nt) + 0.5)
    prof = spec.mode.profile
    if hasattr(prof, "cell"):
        a, b = prof.cell
        xs, ys = 2 * a * np.arange(nxy) / nxy, 2 * b * np.arange(nxy) / nxy
    else:
        R = 3.0 / spec.mode.kappa
        xs = ys = np.linspace(-R, R, nxy)
    X, Y, T = np.meshgrid(xs, ys, tau, indexing="ij")
    r, adv = ps.parts(X, Y, 0.0, T)
    n2 = spec.mode.n**2

    def dens(fs: FieldSample):
        return float(np.mean(n2 * fs.et.norm() ** 2 + fs.cbt.norm() ** 2))

    lhs = dens(r + adv)
    rhs = dens(r) + dens(adv)
    scale = max(abs(lhs), abs(rhs))
    dev = abs(lhs - rhs) / scale if scale > 0 else 0.0
    return AdditivityResult(lhs, rhs, dev)


# -------------------------------------------------------------- spectrum


@dataclass(frozen=True)
class SpectrumResult:
    delta_omega: float
    delta_t: float
    product: float
    convention: str
    rms_product: float


def _envelope_samples(spec: PacketSpec, n_window: int, pad: int):
    dt = spec.tau0 / n_window
    tau = -spec.tau1 + dt * (np.arange(n_window) + 0.5)
    _, e = envelope(spec, tau)
    e = spec.mode.amplitude * np.asarray(e)
    return tau, e, dt, np.concatenate([e, np.zeros(n_window * (pad - 1))])


def spectral_rms_width(spec: PacketSpec, n_window: int = 4096, pad: int = 8) -> float:
    """RMS angular frequency of ``|FT envelope|^2`` about its mean (FFT, zero padded)."""
    _, _, dt, padded = _envelope_samples(spec, n_window, pad)
    spec_e = np.abs(np.fft.fft(padded)) ** 2
    w = 2 * math.pi * np.fft.fftfreq(padded.size, dt)
    p = spec_e / spec_e.sum()
    mean = float(np.sum(w * p))
    return float(math.sqrt(np.sum((w - mean) ** 2 * p)))


def temporal_rms_width(spec: PacketSpec, n_window: int = 4096) -> float:
    tau, e, _, _ = _envelope_samples(spec, n_window, 1)
    p = np.abs(e) ** 2
    p = p / p.sum()
    mean = float(np.sum(tau * p))
    return float(math.sqrt(np.sum((tau - mean) ** 2 * p)))


def spectrum_uncertainty(spec: PacketSpec, convention: str = "full",
                         n_window: int = 4096, pad: int = 8) -> SpectrumResult:
    """Frequency and time spreads of the packet envelope and their product.

    ``convention="full"`` uses the window length ``tau0`` for the time spread and
    the full two-sided spectral width ``2 sigma_omega``; for M = 0 the product
    is exactly ``2 pi``.  ``convention="rms"`` uses the standard deviations of
    ``|e(tau)|^2`` and ``|e_hat(omega)|^2``, whose product is bounded below by 1/2.
    """
    s_w = spectral_rms_width(spec, n_window, pad)
    s_t = temporal_rms_width(spec, n_window)
    if convention == "full":
        dw, dt = 2.0 * s_w, spec.tau0
    elif convention == "rms":
        dw, dt = s_w, s_t
    else:
        raise ValueError("convention must be 'full' or 'rms'")
    return SpectrumResult(dw, dt, dw * dt, convention, s_w * s_t)


# -------------------------------------------------------------- velocity


@dataclass(frozen=True)
class VelocityResult:
    velocity: float
    v_g: float
    distortion: float
    centroids: np.ndarray
    z_probes: np.ndarray


def _circular_components(F: TransverseVec):
    """Components on ``e_a = (1, -i)/sqrt2`` (rotates as ``e^{i theta}``) and ``e_b``."""
    s = 1 / math.sqrt(2.0)
    ca = s * (F.x + 1j * F.y)
    cb = s * (F.x - 1j * F.y)
    return ca, cb


def _k_signed(w, mode: ModeSpec):
    """``sign(w) k(|w|)`` per bin; ``nan`` where the bin is below cutoff."""
    aw = np.abs(w)
    n = np.asarray(mode.refr.n(np.maximum(aw, 1e-12)), dtype=float)
    k2 = (n * aw) ** 2 - mode.kappa**2
    k = np.where(k2 > 0, np.sqrt(np.where(k2 > 0, k2, 0.0)), np.nan)
    return np.sign(w) * k


def envelope_velocity_measure(spec: PacketSpec, z_probes, *, t_start: float = -8.0,
                              t_span: float = 40.0, n_samples: int = 2**14,
                              gate: float | None = 1.5,
                              advanced_map: AdvancedMap = "phi90") -> VelocityResult:
    """Propagate the packet by Fourier synthesis and time its ``|field|^2`` centroid.

    The transverse field at ``z = 0`` and a fixed transverse point is split into
    circular components, Fourier transformed in ``t``, and each bin ``w`` carried
    to ``z`` with ``exp(-i sign(w) k(|w|) z)``; bins below cutoff are dropped.
    The velocity is the least-squares slope of ``z`` against the centroid time.
    Centroids are taken within ``gate * tau0`` of the main lobe (the peak of
    ``|field|^2`` smoothed over ``tau0``).  The hard window leaves some content
    near cutoff that crawls behind the pulse; ``gate=None`` keeps it.
    The distortion is the relative L2 distance between the last probe's
    ``|field|^2`` and the first one's, after removing the centroid delay.
    """
    z = np.unique(np.asarray(z_probes, dtype=float))
    if z.size < 2:
        raise NeedTwoProbes("need at least two distinct probe positions")
    mode = spec.mode
    for side in (mode.omega + spec.Omega, mode.omega - spec.Omega):
        try:
            axial_wavenumber(abs(side), mode.refr, mode.kappa)
        except BelowCutoff as exc:
            raise BelowCutoff(f"below cutoff: sideband at omega'={side:.6g}: {exc}") from None

    ps = PacketSampler(spec, advanced_map)
    if hasattr(mode.profile, "cell"):
        a, b = mode.profile.cell
        x0, y0 = 0.3 * a, 0.35 * b
    else:
        x0 = y0 = 0.6 / mode.kappa
    dt = t_span / n_samples
    t = t_start + dt * np.arange(n_samples)
    fs = ps(x0, y0, 0.0, t)
    ca, cb = _circular_components(fs.cbt if np.any(fs.cbt.norm() > 0) else fs.et)

    w = 2 * math.pi * np.fft.fftfreq(n_samples, dt)
    ks = _k_signed(w, mode)
    live = np.isfinite(ks)
    ks = np.where(live, ks, 0.0)
    Fa, Fb = np.fft.fft(ca), np.fft.fft(cb)

    width = max(1, int(round(spec.tau0 / dt)))
    cents, shapes = [], []
    for zz in z:
        prop = np.where(live, np.exp(-1j * ks * zz), 0.0)
        pa, pb = np.fft.ifft(Fa * prop), np.fft.ifft(Fb * prop)
        p = np.abs(pa) ** 2 + np.abs(pb) ** 2
        if gate is None:
            g = slice(None)
        else:
            smooth = np.convolve(p, np.ones(width) / width, mode="same")
            g = np.abs(t - t[np.argmax(smooth)]) <= gate * spec.tau0
        cents.append(float(np.sum(t[g] * p[g]) / np.sum(p[g])))
        shapes.append(p)
    cents = np.array(cents)
    slope = np.polyfit(cents, z, 1)[0]

    delay = cents[-1] - cents[0]
    moved = np.interp(t, t - delay, shapes[-1], left=0.0, right=0.0)
    distortion = float(np.linalg.norm(moved - shapes[0]) / np.linalg.norm(shapes[0]))
    return VelocityResult(float(slope), mode.v_g, distortion, cents, z)


def velocities_across_M(mode: ModeSpec, Ms, z_probes, phi: float = math.pi / 2,
                        Q: int = 1, **kw) -> dict[int, VelocityResult]:
    return {int(M): envelope_velocity_measure(PacketSpec(int(M), phi, mode, Q), z_probes, **kw)
            for M in Ms}


# ---------------------------------------------------------------- demotion


@dataclass(frozen=True)
class DispersalResult:
    rel_std: float
    zeros: int
    magnitude: float


def ground_demotion_dispersal(spec: PacketSpec, n_tau: int = 2001, span_periods: float = 4.0,
                              a: TransverseVec | None = None) -> DispersalResult:
    """Magnitude of ``Theta(-omega tau/2) (a + Theta(phi) a)`` over a long stretch of ``tau``.

    After demoting the ground packet no rotation is left to beat against, so
    the magnitude is constant and never vanishes: no finite window traps it.
    ``a`` defaults to the mode's transverse magnetic field at a sample point.
    """
    if spec.M != 0:
        raise ValueError("ground demotion needs M = 0")
    if a is None:
        m = spec.mode
        if hasattr(m.profile, "cell"):
            ca, cb = m.profile.cell
            x0, y0 = 0.3 * ca, 0.35 * cb
        else:
            x0 = y0 = 0.6 / m.kappa
        fs = ModeSampler(m)(x0, y0, 0.0, 0.0)
        a = fs.cbt if m.kind == "TE" else fs.et
    s = a + rotate(spec.phi, a)
    if float(np.max(s.norm())) <= 1e-12 * float(np.max(a.norm())):
        raise DegenerateCancellation("a + Theta(phi) a vanishes identically")
    T = 2 * math.pi / spec.omega
    tau = np.linspace(-span_periods * T, span_periods * T, n_tau)
    v = rotate(-0.5 * spec.omega * tau, s) * np.exp(1j * spec.omega * tau)
    mag = v.norm()
    mean = float(np.mean(mag))
    zeros = int(np.count_nonzero(mag <= 1e-12 * mean))
    return DispersalResult(float(np.std(mag) / mean), zeros, mean)
