"""Lossless shorted transmission line, one wavelength long, driven by a current source.

SI units.  The line is an ideal delay: a forward wave ``V+`` launched at the
input returns inverted after the round trip ``2 tau0`` (``tau0 = 2 pi / omega``).
With ``n = steps_per_transit`` samples per one-way transit the model is a
shift register, and the stored energy is the sum of ``V+^2 / Z0 * dt`` over
the last ``2n`` launched samples, which equals the cumulative delivered
energy exactly.

Two sources are modelled.  ``"matched"`` is the Norton form ``2 I cos(wt)``
with internal shunt ``Z0``: the line draws ``I cos(wt)`` at first, and the
returning wave is absorbed so the input voltage falls to zero after ``2 tau0``
and the trapped energy stays put.  ``"ideal"`` has no shunt: the returning
wave is re-reflected and the energy flows back out over the next ``2 tau0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

E_CHARGE = 1.602176634e-19
H_PLANCK = 6.62607015e-34
C_LIGHT = 299792458.0


@dataclass(frozen=True)
class TxLineSpec:
    Z0: float = 377.0
    omega: float = 2 * math.pi
    I: float = 1.0
    steps_per_transit: int = 512
    source: str = "matched"
    velocity: float = C_LIGHT

    def __post_init__(self):
        if self.Z0 <= 0 or self.omega <= 0:
            raise ValueError("Z0 and omega must be positive")
        if self.steps_per_transit < 1:
            raise ValueError("steps_per_transit must be positive")
        if self.source not in ("matched", "ideal"):
            raise ValueError("source must be 'matched' or 'ideal'")

    @property
    def tau0(self) -> float:
        return 2 * math.pi / self.omega

    @property
    def length(self) -> float:
        """One wavelength at the line's propagation velocity."""
        return self.velocity * self.tau0

    @property
    def dt(self) -> float:
        return self.tau0 / self.steps_per_transit

    @property
    def closed_form_energy(self) -> float:
        """``U0 = I^2 Z0 / 2 * 4 pi / omega``."""
        return 0.5 * self.I**2 * self.Z0 * 4 * math.pi / self.omega


@dataclass(frozen=True)
class EnergyTrace:
    """Per-step samples; ``delivered`` and ``stored`` are values at ``t + dt``."""

    spec: TxLineSpec
    t: np.ndarray
    power: np.ndarray
    delivered: np.ndarray
    stored: np.ndarray
    v_in: np.ndarray

    def average_power(self, t_from: float, t_to: float) -> float:
        sel = (self.t >= t_from - 1e-12 * self.spec.tau0) & (self.t < t_to - 1e-12 * self.spec.tau0)
        return float(np.mean(self.power[sel]))

    def bookkeeping_error(self) -> float:
        """Max ``|delivered - stored|`` relative to the closed-form energy."""
        return float(np.max(np.abs(self.delivered - self.stored)) / self.spec.closed_form_energy)

    def exact_delivered(self, t) -> np.ndarray:
        """Continuous-time cumulative delivered energy of the same source model."""
        s = self.spec
        t = np.asarray(t, dtype=float)
        P0 = s.Z0 * s.I**2
        U0 = s.closed_form_energy

        def F(x):
            return P0 * (0.5 * x + np.sin(2 * s.omega * x) / (4 * s.omega))

        T2 = 2 * s.tau0
        if s.source == "matched":
            return np.where(t < T2, F(np.minimum(t, T2)), U0)
        r = np.mod(t, 2 * T2)
        return np.where(r < T2, F(r), 2 * U0 - F(r))

    def discretization_error(self) -> float:
        """Max deviation of the step-sum delivered energy from the continuous one, over ``U0``."""
        exact = self.exact_delivered(self.t + self.spec.dt)
        return float(np.max(np.abs(self.delivered - exact)) / self.spec.closed_form_energy)


def simulate(spec: TxLineSpec, duration: float | None = None) -> EnergyTrace:
    """Run the bounce model for ``duration`` (default ``4 tau0``)."""
    if duration is None:
        duration = 4 * spec.tau0
    if duration < 2 * spec.tau0 * (1 - 1e-12):
        raise ValueError("duration must cover at least one round trip 2*tau0")
    S = spec.steps_per_transit
    N = int(round(duration / spec.dt))
    dt = spec.dt
    t = dt * np.arange(N)
    drive = spec.Z0 * spec.I * np.cos(spec.omega * t)

    v_fwd = np.zeros(N)
    v_back = np.zeros(N)
    for j in range(N):
        if j >= 2 * S:
            v_back[j] = -v_fwd[j - 2 * S]
        # KCL at the input: matched source fixes V+, ideal source fixes V+ - V-
        v_fwd[j] = drive[j] if spec.source == "matched" else drive[j] + v_back[j]

    v_in = v_fwd + v_back
    i_line = (v_fwd - v_back) / spec.Z0
    power = v_in * i_line
    delivered = np.cumsum((v_fwd**2 - v_back**2) / spec.Z0) * dt
    e = v_fwd**2 / spec.Z0 * dt
    c = np.concatenate([[0.0], np.cumsum(e)])
    lo = np.maximum(np.arange(N) + 1 - 2 * S, 0)
    stored = c[np.arange(N) + 1] - c[lo]
    return EnergyTrace(spec, t, power, delivered, stored, v_in)


def trapped_energy(spec: TxLineSpec) -> float:
    """Stored energy after the transient (matched source, ``3 tau0`` run)."""
    if spec.source != "matched":
        raise ValueError("only the matched source traps energy")
    return float(simulate(spec, 3 * spec.tau0).stored[-1])


def planck_xi(zeta: float, omega: float = 2 * math.pi, Z0: float = 377.0,
              steps_per_transit: int = 512) -> float:
    """``xi / zeta^2`` with ``U0 = xi h f`` and source current ``I = zeta omega e``.

    Closed form: ``4 pi^2 Z0 e^2 / h``, independent of ``omega`` and ``zeta``.
    """
    if not zeta > 0:
        raise ValueError("zeta must be positive")
    spec = TxLineSpec(Z0, omega, zeta * omega * E_CHARGE, steps_per_transit)
    U0 = trapped_energy(spec)
    return U0 / (H_PLANCK * omega / (2 * math.pi)) / zeta**2


def planck_xi_closed_form(Z0: float = 377.0) -> float:
    return 4 * math.pi**2 * Z0 * E_CHARGE**2 / H_PLANCK
