"""Real rotation algebra of the transverse plane.

Transverse field vectors are column pairs ``(x, y)`` with complex (phasor)
entries.  Rotations are real 2x2 matrices ``cos(a) + sin(a) * sigma`` where
``sigma = [[0, -1], [1, 0]]`` is the quarter-turn generator, so the imaginary
unit only ever appears in phasors and never in a rotation.

Components may be scalars or numpy arrays; every operation here is
elementwise, so a whole field grid can be rotated in one call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SIGMA = np.array([[0.0, -1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class TransverseVec:
    """Transverse 2-vector with (possibly array-valued) complex components."""

    x: complex | np.ndarray
    y: complex | np.ndarray

    def __add__(self, other: TransverseVec) -> TransverseVec:
        return TransverseVec(self.x + other.x, self.y + other.y)

    def __sub__(self, other: TransverseVec) -> TransverseVec:
        return TransverseVec(self.x - other.x, self.y - other.y)

    def __neg__(self) -> TransverseVec:
        return TransverseVec(-self.x, -self.y)

    def __mul__(self, s) -> TransverseVec:
        return TransverseVec(self.x * s, self.y * s)

    __rmul__ = __mul__

    def norm(self):
        """Hermitian length ``sqrt(|x|^2 + |y|^2)``."""
        return np.sqrt(np.abs(self.x) ** 2 + np.abs(self.y) ** 2)

    def conj(self) -> TransverseVec:
        return TransverseVec(np.conj(self.x), np.conj(self.y))

    @property
    def real(self) -> TransverseVec:
        return TransverseVec(np.real(self.x), np.real(self.y))

    def as_array(self) -> np.ndarray:
        return np.stack([np.asarray(self.x), np.asarray(self.y)])


@dataclass(frozen=True)
class SigmaRotation:
    """Rotation ``exp(sigma * angle)``, stored by its angle.

    Keeping the angle (rather than matrix entries) makes composition exact in
    the angle parameter.
    """

    angle: float | np.ndarray = 0.0

    @property
    def matrix(self) -> np.ndarray:
        c, s = math.cos(self.angle), math.sin(self.angle)
        return np.array([[c, -s], [s, c]])

    def compose(self, other: SigmaRotation) -> SigmaRotation:
        return SigmaRotation(self.angle + other.angle)

    def inverse(self) -> SigmaRotation:
        return SigmaRotation(-self.angle)

    # For a rotation the transpose is the inverse.
    transpose = inverse

    def __call__(self, F: TransverseVec) -> TransverseVec:
        return rotate(self, F)


@dataclass(frozen=True)
class PhasorConvention:
    """Phase ``omega*t - k*z + phase0`` of the carrier ``exp(i*phase)``."""

    omega: float
    k: float
    phase0: float = 0.0

    def phase(self, t, z):
        return self.omega * t - self.k * z + self.phase0

    def phasor(self, t, z):
        return np.exp(1j * self.phase(t, z))


def sigma_apply(F: TransverseVec) -> TransverseVec:
    """Quarter turn: ``(x, y) -> (-y, x)``."""
    return TransverseVec(-F.y, F.x)


def rotate(R: SigmaRotation | float, F: TransverseVec) -> TransverseVec:
    """Rotate ``F`` by ``R`` (a :class:`SigmaRotation` or a bare angle).

    Array-valued angles broadcast against array-valued components.
    """
    angle = R.angle if isinstance(R, SigmaRotation) else R
    c = np.cos(angle)
    s = np.sin(angle)
    return TransverseVec(c * F.x - s * F.y, s * F.x + c * F.y)


def inner(F: TransverseVec, G: TransverseVec):
    """Transpose product ``F.x*G.x + F.y*G.y`` (no conjugation)."""
    return F.x * G.x + F.y * G.y


def rotation_identity_check(theta: float, F: TransverseVec, G: TransverseVec) -> float:
    """Deviation from ``(R sigma F)^tr (R sigma G) = F^tr G`` for ``R = exp(sigma theta)``."""
    R = SigmaRotation(theta)
    lhs = inner(rotate(R, sigma_apply(F)), rotate(R, sigma_apply(G)))
    return float(np.max(np.abs(lhs - inner(F, G))))
