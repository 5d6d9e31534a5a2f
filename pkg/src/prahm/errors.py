"""Exception types raised by the prahm package."""


class PrahmError(Exception):
    """Base class for all package errors."""


class BelowCutoff(PrahmError):
    """Requested mode or sideband has no real axial wavenumber (evanescent)."""


class KappaZero(PrahmError):
    """Transverse wavenumber is zero; transverse fields via grad/kappa^2 are undefined."""


class GridTooSmall(PrahmError):
    """Grid cannot support the central-difference stencils."""


class GridMismatch(PrahmError):
    """Two grids that must share a layout do not."""


class AsymmetricWindow(PrahmError):
    """Time window is not symmetric about t = 0."""


class SpacingMismatch(PrahmError):
    """Residual reports are not at spacings h and h/2."""


class DegenerateResidual(PrahmError):
    """Residual is zero, so a convergence order cannot be formed."""


class IncompletePeriod(PrahmError):
    """Time samples do not span a whole number of temporal periods."""


class PhiOutOfRange(PrahmError):
    """Inter-wave angle does not admit a positive packet boundary."""


class NeedTwoProbes(PrahmError):
    """A velocity needs at least two distinct probe positions."""


class DegenerateCancellation(PrahmError):
    """Retarded and advanced generators cancel identically."""
