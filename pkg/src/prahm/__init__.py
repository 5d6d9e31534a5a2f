"""Helically modulated waveguide modes, packets and their numerical checks."""

from .algebra import SIGMA, SigmaRotation, TransverseVec, inner, rotate, sigma_apply
from .errors import PrahmError
from .grid import FieldGrid, GridSpec, cell_spec, residual_spec, sample_grid
from .helical import HelicalModulation, apply_helical, classical_energy_density, vh_sweep
from .interaction import helical_power_balance, interaction_energy
from .ladder import LadderState, demote, promote
from .modes import ModeSpec, canonical_mode, mode_sampler
from .packet import PacketSpec, packet_params, spectrum_uncertainty, synth_packet
from .residual import residual_te, residual_tm, sigma_time_reverse
from .txline import TxLineSpec, planck_xi, simulate

__version__ = "0.1.0"

__all__ = [
    "SIGMA", "SigmaRotation", "TransverseVec", "inner", "rotate", "sigma_apply",
    "PrahmError",
    "FieldGrid", "GridSpec", "cell_spec", "residual_spec", "sample_grid",
    "HelicalModulation", "apply_helical", "classical_energy_density", "vh_sweep",
    "helical_power_balance", "interaction_energy",
    "LadderState", "demote", "promote",
    "ModeSpec", "canonical_mode", "mode_sampler",
    "PacketSpec", "packet_params", "spectrum_uncertainty", "synth_packet",
    "residual_te", "residual_tm", "sigma_time_reverse",
    "TxLineSpec", "planck_xi", "simulate",
]
