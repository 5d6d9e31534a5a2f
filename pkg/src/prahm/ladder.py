"""Ladder operators on helically rotating wavefunctions.

``Psi_M(t) = coeff * Theta((M + 1/2) omega t) F`` with ``Theta = exp(sigma *)``.
``A+`` multiplies by ``Theta(omega t)`` and rescales by ``sqrt(M + 1)``; ``A-``
divides by it and rescales by ``sqrt(M)``, annihilating the ground state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .algebra import TransverseVec, rotate


@dataclass(frozen=True)
class LadderState:
    M: int
    coeff: float
    omega: float = 2 * math.pi
    base: TransverseVec = TransverseVec(1.0, 0.0)

    def __post_init__(self):
        if self.M < 0 or int(self.M) != self.M:
            raise ValueError("M must be a non-negative integer")
        if self.coeff < 0:
            raise ValueError("coeff must be non-negative")

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def helical_frequency(self) -> float:
        return (self.M + 0.5) * self.omega

    @property
    def period(self) -> float:
        """Period of the represented rotation, ``2 pi / ((M + 1/2) omega)``."""
        return 2 * math.pi / self.helical_frequency

    def field(self, t) -> TransverseVec:
        return rotate(self.helical_frequency * np.asarray(t, dtype=float), self.base) * self.coeff


def promote(s: LadderState) -> LadderState:
    return replace(s, M=s.M + 1, coeff=s.coeff * math.sqrt(s.M + 1))


def demote(s: LadderState) -> LadderState:
    if s.M == 0:
        return replace(s, coeff=0.0)
    return replace(s, M=s.M - 1, coeff=s.coeff * math.sqrt(s.M))


def number(s: LadderState) -> LadderState:
    """``A+ A-`` in ladder arithmetic: ``M * Psi_M``."""
    out = promote(demote(s))
    # the zero state loses its level under demotion; keep M for comparison
    return replace(s, coeff=out.coeff) if s.M == 0 else out


def d_sigma_omega_t(f: TransverseVec, omega: float, h: float) -> TransverseVec:
    """``d/d(sigma omega t)`` of a sampled field: ``(1/omega) (-sigma) d/dt``.

    ``f`` holds samples at ``t - h, t, t + h`` stacked on the last axis; the
    central value's derivative is returned.
    """
    dx = (f.x[..., 2] - f.x[..., 0]) / (2 * h)
    dy = (f.y[..., 2] - f.y[..., 0]) / (2 * h)
    return TransverseVec(dy / omega, -dx / omega)


def number_check(s: LadderState, taus, ht_fraction: float = 1e-4) -> float:
    """Max deviation between ``M Psi_M`` and the differential form of ``A+ A-``.

    The differential form is ``Theta(omega t/2) d/d(sigma omega t) Theta(-omega t/2) Psi``
    with a central difference of step ``ht_fraction`` times the state's period.
    """
    taus = np.asarray(taus, dtype=float)
    h = ht_fraction * s.period
    tt = taus[:, None] + h * np.array([-1.0, 0.0, 1.0])[None, :]
    g = rotate(-0.5 * s.omega * tt, s.field(tt))
    dg = d_sigma_omega_t(g, s.omega, h)
    lhs = rotate(0.5 * s.omega * taus, dg)
    rhs = s.field(taus) * s.M
    return float(np.max((lhs - rhs).norm()))


def commutator_check(s: LadderState) -> float:
    """``|coeff(A- A+ s - A+ A- s) - coeff(s)|``; exact in ladder arithmetic."""
    a = demote(promote(s)).coeff
    b = number(s).coeff
    return abs((a - b) - s.coeff)


def energy_eigenvalue(s: LadderState) -> float:
    """``(A- A+ + A+ A-)/2`` eigenvalue, ``M + 1/2``."""
    unit = replace(s, coeff=1.0)
    return 0.5 * (demote(promote(unit)).coeff + number(unit).coeff)
