"""Secrecy outage capacity and optimal relay power allocation for two-hop
large-scale MIMO amplify-and-forward relaying with imperfect CSI."""

__version__ = "0.1.0"

from .capacity import (
    AllocationResult,
    closed_form_csoc,
    csoc_derivative,
    max_csoc,
    optimal_power,
    positivity,
    saturation_ceiling,
)
from .channel import ChannelRealization, SnrPair, rate_difference, sample_channels, snr_pair
from .errors import (
    DegenerateSourceError,
    DimensionMismatchError,
    InfeasibleSecrecyError,
    InsufficientSamplesError,
    MaxIterationsError,
    NoPositiveValueError,
    ParameterError,
)
from .montecarlo import OutageEstimate, convergence_sweep, estimate_outage_capacity
from .search import SearchResult, argmax_power, bracket_maximum, golden_section_max
from .system_model import (
    DerivedParams,
    SystemParams,
    db_to_linear,
    derive_params,
    linear_to_db,
    min_antennas,
    reference_params,
    with_relative_path_loss,
)
