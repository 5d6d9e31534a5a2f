"""Finite-difference residuals of the matrix-form Maxwell equations.

TE set (driven by ``cB_z``)::

    grad'^tr cB_T + dz cB_z                                   = 0
    grad'^tr (sigma E_T) - dt cB_z                            = 0
    dz (sigma cB_T) - n^2 dt E_T - sigma grad' cB_z + J_T     = 0

TM set (driven by ``n^2 E_z``)::

    (sigma grad')^tr (sigma n^2 E_T) + dz (n^2 E_z) - rho     = 0
    (sigma grad')^tr cB_T - dt (n^2 E_z) + J_z                = 0
    dz (sigma n^2 E_T) + n^2 dt cB_T - sigma grad' (n^2 E_z)  = 0

``grad'`` is the frame gradient of :class:`prahm.grid.Stencil`.  Residuals are
normalised by ``max(|E|, |cB|) * n * omega`` and reported as RMS (``l2``) and
max (``linf``) norms over the trimmed interior of the centre plane.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .algebra import TransverseVec
from .errors import AsymmetricWindow, DegenerateResidual, SpacingMismatch
from .grid import FieldGrid, Stencil, vec_mag

TE_EQUATIONS = ("te_divergence", "te_axial_faraday", "te_transverse_ampere")
TM_EQUATIONS = ("tm_divergence", "tm_axial_ampere", "tm_transverse_faraday")


@dataclass(frozen=True)
class ResidualReport:
    names: tuple[str, ...]
    l2: np.ndarray
    linf: np.ndarray
    scale: float
    spacing: float

    @property
    def max_linf(self) -> float:
        return float(np.max(self.linf))

    @property
    def max_l2(self) -> float:
        return float(np.max(self.l2))

    def as_dict(self) -> dict:
        return {name: {"l2": float(a), "linf": float(b)}
                for name, a, b in zip(self.names, self.l2, self.linf)}


def _report(st: Stencil, names, residuals, scale=None) -> ResidualReport:
    grid = st.grid
    if scale is None:
        scale = grid.field_scale() * grid.n * grid.omega
    l2, linf = [], []
    for r in residuals:
        mag = st.interior(np.abs(r) if not isinstance(r, TransverseVec) else vec_mag(r))
        if scale > 0:
            l2.append(np.sqrt(np.mean(mag**2)) / scale)
            linf.append(np.max(mag) / scale)
        else:
            l2.append(0.0)
            linf.append(0.0)
    return ResidualReport(tuple(names), np.array(l2), np.array(linf), float(scale),
                          grid.spec.spacing)


def te_residual_fields(grid: FieldGrid, jt: TransverseVec | None = None, jz=None):
    """Pointwise TE residuals on the centre plane (full ``(nx, ny, nt)`` arrays)."""
    st = Stencil(grid)
    n2 = grid.n**2
    E, cB, cbz = grid.et, grid.cbt, grid.bz
    bzc = st.c(cbz)
    r1 = st.div(st.cv(cB)) + st.dz(cbz)
    r2 = st.div(st.sig(st.cv(E))) - st.dt(bzc)
    r3 = st.dzv(st.sig(cB)) - st.dtv(st.cv(E)) * n2 - st.sig(st.grad(bzc))
    if jt is not None:
        r3 = r3 + jt
    return st, (r1, r2, r3)


def tm_residual_fields(grid: FieldGrid, rho=None, jz=None):
    st = Stencil(grid)
    n2 = grid.n**2
    E, cB = grid.et, grid.cbt
    dz_ez = n2 * grid.ez
    dzc = st.c(dz_ez)
    r1 = st.div(st.cv(E) * n2) + st.dz(dz_ez)
    if rho is not None:
        r1 = r1 - rho
    r2 = st.div(-st.sig(st.cv(cB))) - st.dt(dzc)
    if jz is not None:
        r2 = r2 + jz
    r3 = st.dzv(st.sig(E * n2)) + st.dtv(st.cv(cB)) * n2 - st.sig(st.grad(dzc))
    return st, (r1, r2, r3)


def residual_te(grid: FieldGrid, jt: TransverseVec | None = None, jz=None) -> ResidualReport:
    """Normalised residuals of the three TE equations.

    Optional source ``jt`` is a centre-plane :class:`TransverseVec`; ``jz`` is
    accepted for signature symmetry and does not enter the TE set.
    """
    st, rs = te_residual_fields(grid, jt, jz)
    return _report(st, TE_EQUATIONS, rs)


def residual_tm(grid: FieldGrid, rho=None, jz=None) -> ResidualReport:
    """Normalised residuals of the three TM equations (sources default to zero)."""
    st, rs = tm_residual_fields(grid, rho, jz)
    return _report(st, TM_EQUATIONS, rs)


# ------------------------------------------------------------ light cone


@dataclass(frozen=True)
class LightConeFields:
    te_plus: TransverseVec
    te_minus: TransverseVec
    tm_plus: TransverseVec
    tm_minus: TransverseVec
    sigma_sign: int = 1


def _sig(F: TransverseVec, s: int) -> TransverseVec:
    return TransverseVec(-s * F.y, s * F.x)


def lightcone_decompose(grid: FieldGrid) -> LightConeFields:
    """Forward/backward light-cone combinations at every grid point.

    TE: ``F+ = cB - sigma E``, ``F- = cB + sigma E``;
    TM: ``F+ = n^2 E + sigma cB``, ``F- = n^2 E - sigma cB``.
    """
    s = grid.sigma_sign
    n2 = grid.n**2
    E, cB = grid.et, grid.cbt
    sE, scB = _sig(E, s), _sig(cB, s)
    return LightConeFields(cB - sE, cB + sE, E * n2 + scB, E * n2 - scB, s)


def lightcone_reconstruct(lc: LightConeFields, n: float):
    """Invert :func:`lightcone_decompose`: returns ``(E_te, cB_te, E_tm, cB_tm)``."""
    s = lc.sigma_sign
    cb_te = (lc.te_plus + lc.te_minus) * 0.5
    s_e_te = (lc.te_minus - lc.te_plus) * 0.5
    e_te = _sig(s_e_te, -s)  # sigma^-1 = -sigma
    e_tm = (lc.tm_plus + lc.tm_minus) * (0.5 / n**2)
    s_cb_tm = (lc.tm_plus - lc.tm_minus) * 0.5
    cb_tm = _sig(s_cb_tm, -s)
    return e_te, cb_te, e_tm, cb_tm


def residual_lightcone(grid: FieldGrid, kind: str = "TE",
                       lc: LightConeFields | None = None) -> ResidualReport:
    """Residuals of the light-cone form, with the ``(n^2 - 1)/2`` cross coupling.

    The two divergence-type equations use ``d+ = dz + dt`` and ``d- = dz - dt``;
    the third is the mixed equation whose residual is exactly ``-2 sigma``
    times the corresponding transverse curl residual of the matrix form.
    """
    st = Stencil(grid)
    lc = lightcone_decompose(grid) if lc is None else lc
    if kind == "TE":
        fp, fm = lc.te_plus, lc.te_minus
        drive = grid.bz
    elif kind == "TM":
        fp, fm = lc.tm_plus, lc.tm_minus
        drive = grid.n**2 * grid.ez
    else:
        raise ValueError("kind must be TE or TM")
    a = 0.5 * (grid.n**2 - 1.0)
    dc = st.c(drive)

    def dplus(f):
        return st.dz(f) + st.dt(st.c(f))

    def dminus(f):
        return st.dz(f) - st.dt(st.c(f))

    def dplus_v(F):
        return TransverseVec(dplus(F.x), dplus(F.y))

    def dminus_v(F):
        return TransverseVec(dminus(F.x), dminus(F.y))

    r1 = st.div(st.cv(fp)) + dplus(drive)
    r2 = st.div(st.cv(fm)) + dminus(drive)
    r3 = (dplus_v(fm * (1 + a) - fp * a) + dminus_v(fp * (1 + a) - fm * a)
          - st.grad(dc) * 2.0)
    names = tuple(f"{kind.lower()}_lightcone_{tag}" for tag in ("plus", "minus", "mixed"))
    return _report(st, names, (r1, r2, r3))


# ------------------------------------------------------- time reversal


def sigma_time_reverse(grid: FieldGrid) -> FieldGrid:
    """Flip the sigma convention and run time backwards.

    The sample at ``t`` moves to ``-t`` and every quarter turn becomes
    ``-sigma``; the helical frame angle changes sign with ``t``.  Each
    residual changes at most by an overall sign, so all norms are preserved,
    and applying the transform twice restores the input.
    """
    s = grid.spec
    if abs(s.t0 + 0.5 * (s.nt - 1) * s.ht) > 1e-9 * max(s.ht, 1.0):
        raise AsymmetricWindow("time samples must be symmetric about t = 0")
    rev = {k: getattr(grid, k)[..., ::-1].copy() for k in ("ex", "ey", "bx", "by", "ez", "bz")}
    meta = dict(grid.meta)
    meta["sigma_time_reversed"] = not grid.meta.get("sigma_time_reversed", False)
    return replace(grid, frame_angle=-grid.frame_angle[:, ::-1], sigma_sign=-grid.sigma_sign,
                   meta=meta, **rev)


def convergence_order(report_a: ResidualReport, report_b: ResidualReport,
                      norm: str = "l2") -> np.ndarray:
    """Per-equation ``log2(res_a / res_b)`` for spacings ``h`` and ``h/2``."""
    if abs(report_b.spacing * 2.0 - report_a.spacing) > 1e-9 * report_a.spacing:
        raise SpacingMismatch(f"spacings {report_a.spacing} and {report_b.spacing} are not h, h/2")
    a = np.asarray(getattr(report_a, norm))
    b = np.asarray(getattr(report_b, norm))
    if np.any(a <= 1e-300) or np.any(b <= 1e-300):
        raise DegenerateResidual("residual vanishes; order undefined")
    return np.log2(a / b)
