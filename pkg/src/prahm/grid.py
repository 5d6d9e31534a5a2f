"""Sampled field configurations and the central-difference stencils used on them.

A :class:`FieldGrid` holds the six field components on an ``(x, y, z, t)``
lattice with exactly three ``z`` planes (``z0 - hz, z0, z0 + hz``); residuals are
evaluated on the centre plane.  Grids are either *patches* (non-periodic,
boundary layers trimmed from every norm) or *cells* (periodic in ``x, y, t``,
used for quadrature over a whole cross-section and period).

Two pieces of metadata change how the stencils act:

``frame_angle``
    Angle of the local helical frame per ``(z, t)``.  Transverse gradients are
    taken in the rotated frame, ``grad' = Theta grad``, which is how the
    twisted fields of a helical modulation are tested.
``sigma_sign``
    +1 normally; -1 after the sigma/time-reversal transform, in which case every
    quarter turn is ``-sigma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .algebra import TransverseVec, rotate
from .errors import GridMismatch, GridTooSmall
from .modes import FieldSample, ModeSpec


@dataclass(frozen=True)
class GridSpec:
    nx: int
    ny: int
    nt: int
    hx: float
    hy: float
    ht: float
    hz: float
    x0: float = 0.0
    y0: float = 0.0
    t0: float | None = None
    z0: float = 0.0
    periodic: bool = False

    def __post_init__(self):
        if min(self.hx, self.hy, self.ht, self.hz) <= 0:
            raise ValueError("grid spacings must be positive")
        if min(self.nx, self.ny, self.nt) < 1:
            raise ValueError("grid sizes must be positive")
        if self.t0 is None:
            # symmetric time window by default
            object.__setattr__(self, "t0", -0.5 * (self.nt - 1) * self.ht)

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.hx * np.arange(self.nx)

    @property
    def y(self) -> np.ndarray:
        return self.y0 + self.hy * np.arange(self.ny)

    @property
    def t(self) -> np.ndarray:
        return self.t0 + self.ht * np.arange(self.nt)

    @property
    def z(self) -> np.ndarray:
        return self.z0 + self.hz * np.array([-1.0, 0.0, 1.0])

    @property
    def spacing(self) -> float:
        return self.hx

    def refined(self, factor: int = 2) -> GridSpec:
        """Same physical window sampled with all spacings divided by ``factor``."""
        if self.periodic:
            return replace(self, nx=self.nx * factor, ny=self.ny * factor, nt=self.nt * factor,
                           hx=self.hx / factor, hy=self.hy / factor, ht=self.ht / factor,
                           hz=self.hz / factor, t0=self.t0)
        return replace(self, nx=(self.nx - 1) * factor + 1, ny=(self.ny - 1) * factor + 1,
                       nt=(self.nt - 1) * factor + 1, hx=self.hx / factor, hy=self.hy / factor,
                       ht=self.ht / factor, hz=self.hz / factor, t0=self.t0)


@dataclass(frozen=True)
class FieldGrid:
    """Field components on a :class:`GridSpec`; arrays have shape ``(nx, ny, 3, nt)``."""

    spec: GridSpec
    ex: np.ndarray
    ey: np.ndarray
    bx: np.ndarray
    by: np.ndarray
    ez: np.ndarray
    bz: np.ndarray
    n: float
    omega: float
    frame_angle: np.ndarray | None = None
    sigma_sign: int = 1
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        shape = (self.spec.nx, self.spec.ny, 3, self.spec.nt)
        for name in ("ex", "ey", "bx", "by", "ez", "bz"):
            arr = getattr(self, name)
            if arr.shape != shape:
                raise GridMismatch(f"{name} has shape {arr.shape}, expected {shape}")
        if self.frame_angle is None:
            object.__setattr__(self, "frame_angle", np.zeros((3, self.spec.nt)))

    @property
    def et(self) -> TransverseVec:
        return TransverseVec(self.ex, self.ey)

    @property
    def cbt(self) -> TransverseVec:
        return TransverseVec(self.bx, self.by)

    @property
    def components(self) -> tuple[np.ndarray, ...]:
        return self.ex, self.ey, self.bx, self.by, self.ez, self.bz

    def with_fields(self, **arrays) -> FieldGrid:
        return replace(self, **arrays)

    def scaled(self, s) -> FieldGrid:
        return replace(self, **{k: getattr(self, k) * s
                                for k in ("ex", "ey", "bx", "by", "ez", "bz")})

    def __add__(self, other: FieldGrid) -> FieldGrid:
        if other.spec != self.spec:
            raise GridMismatch("grids must share a GridSpec")
        return replace(self, **{k: getattr(self, k) + getattr(other, k)
                                for k in ("ex", "ey", "bx", "by", "ez", "bz")})

    def real(self) -> FieldGrid:
        """Physical (real) fields from the phasor representation."""
        return replace(self, **{k: np.real(getattr(self, k)).astype(float)
                                for k in ("ex", "ey", "bx", "by", "ez", "bz")})

    def field_scale(self) -> float:
        e = np.sqrt(np.abs(self.ex) ** 2 + np.abs(self.ey) ** 2 + np.abs(self.ez) ** 2)
        b = np.sqrt(np.abs(self.bx) ** 2 + np.abs(self.by) ** 2 + np.abs(self.bz) ** 2)
        return float(max(e.max(), b.max()))


def sample_grid(sampler, spec: GridSpec, *, n: float | None = None,
                omega: float | None = None, meta: dict | None = None) -> FieldGrid:
    """Materialise ``sampler`` on ``spec``.

    ``n`` and ``omega`` default to the sampler's own.  If the sampler exposes a
    ``frame_angle(z, t)`` method (helical modulations do) the grid records it so
    transverse gradients are evaluated in the rotated frame.
    """
    X, Y, Z, T = np.meshgrid(spec.x, spec.y, spec.z, spec.t, indexing="ij")
    fs: FieldSample = sampler(X, Y, Z, T)
    shape = X.shape

    def full(a):
        return np.broadcast_to(np.asarray(a, dtype=complex), shape).copy()

    frame = None
    if hasattr(sampler, "frame_angle"):
        zz, tt = np.meshgrid(spec.z, spec.t, indexing="ij")
        frame = np.asarray(sampler.frame_angle(zz, tt), dtype=float)
    md = {"sampler": repr(sampler)}
    if meta:
        md.update(meta)
    return FieldGrid(spec, full(fs.et.x), full(fs.et.y), full(fs.cbt.x), full(fs.cbt.y),
                     full(fs.ez), full(fs.cbz),
                     n=float(sampler.n if n is None else n),
                     omega=float(sampler.omega if omega is None else omega),
                     frame_angle=frame, meta=md)


def residual_spec(mode: ModeSpec | None = None, *, refine: int = 1,
                  nx: int = 32, nt: int = 64) -> GridSpec:
    """Canonical residual patch: 32x32x64, transverse h = 0.01, axial/temporal h = 0.001.

    ``refine=2`` samples the same window with every spacing halved (used for
    convergence orders).  The patch sits inside the first cosine cell, away
    from nodal lines.
    """
    x0, y0 = 0.25, 0.3
    if mode is not None:
        if hasattr(mode.profile, "cell"):
            ca, cb = mode.profile.cell
            x0, y0 = 0.3 * ca, 0.35 * cb
        else:
            x0 = y0 = 0.6 / mode.kappa
    spec = GridSpec(nx, nx, nt, 0.01, 0.01, 0.001, 0.001, x0=x0, y0=y0)
    return spec.refined(refine) if refine > 1 else spec


def cell_spec(mode: ModeSpec, *, nxy: int = 32, nt: int = 64, periods: int = 1,
              hz: float = 1e-3, t0: float = 0.0) -> GridSpec:
    """Periodic quadrature cell: the doubled cosine cell by one or more whole periods."""
    if not hasattr(mode.profile, "cell"):
        raise ValueError("quadrature cells need a separable-cosine profile")
    a, b = mode.profile.cell
    T = periods * 2.0 * math.pi / mode.omega
    return GridSpec(nxy, nxy, nt, 2 * a / nxy, 2 * b / nxy, T / nt, hz,
                    x0=0.0, y0=0.0, t0=t0, periodic=True)


# ---------------------------------------------------------------- stencils

class Stencil:
    """Central differences on the centre ``z`` plane of a grid.

    All outputs have shape ``(nx, ny, nt)``.  For non-periodic grids the outer
    layer in ``x, y, t`` holds wrapped (meaningless) values and is removed by
    :meth:`interior`.
    """

    def __init__(self, grid: FieldGrid):
        s = grid.spec
        if s.nx < 3 or s.ny < 3 or s.nt < 3:
            raise GridTooSmall("need at least 3 samples along x, y and t")
        self.grid = grid
        self.spec = s
        self.sign = grid.sigma_sign
        # rotation of the transverse frame on the centre plane, one per t
        self.frame = grid.sigma_sign * grid.frame_angle[1][None, None, :]

    # scalars
    def c(self, f):
        return f[:, :, 1, :]

    def dx(self, f):
        return (np.roll(f, -1, 0) - np.roll(f, 1, 0)) / (2 * self.spec.hx)

    def dy(self, f):
        return (np.roll(f, -1, 1) - np.roll(f, 1, 1)) / (2 * self.spec.hy)

    def dt(self, f):
        return (np.roll(f, -1, 2) - np.roll(f, 1, 2)) / (2 * self.spec.ht)

    def dz(self, f):
        return (f[:, :, 2, :] - f[:, :, 0, :]) / (2 * self.spec.hz)

    # transverse vectors (full 4-d components in, centre-plane out)
    def cv(self, F: TransverseVec) -> TransverseVec:
        return TransverseVec(self.c(F.x), self.c(F.y))

    def dzv(self, F: TransverseVec) -> TransverseVec:
        return TransverseVec(self.dz(F.x), self.dz(F.y))

    def dtv(self, F: TransverseVec) -> TransverseVec:
        return TransverseVec(self.dt(F.x), self.dt(F.y))

    def sig(self, F: TransverseVec) -> TransverseVec:
        """Quarter turn with the grid's sigma convention."""
        return TransverseVec(-self.sign * F.y, self.sign * F.x)

    def grad(self, f) -> TransverseVec:
        """Frame gradient ``Theta grad f`` of a centre-plane scalar."""
        return rotate(self.frame, TransverseVec(self.dx(f), self.dy(f)))

    def div(self, F: TransverseVec):
        """Frame divergence ``(Theta grad)^tr F = grad^tr (Theta^tr F)``."""
        G = rotate(-self.frame, F)
        return self.dx(G.x) + self.dy(G.y)

    def interior(self, a):
        if self.spec.periodic:
            return a
        return a[1:-1, 1:-1, 1:-1]


def vec_mag(F: TransverseVec):
    return np.sqrt(np.abs(F.x) ** 2 + np.abs(F.y) ** 2)
