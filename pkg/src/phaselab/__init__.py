"""Phase retrieval from spectrogram measurements and stability certificates."""

from .ambiguity import (
    AmbiguityGrid,
    LocalCorrelation,
    ambiguity,
    autocorr_slice,
    dual_estimate_ambiguity,
    estimate_signal_ambiguity,
    local_correlations,
)
from .certificates import (
    THEOREMS,
    StabilityReport,
    aligned_distance,
    certify,
    check_propagation_inequality,
    check_split_inequality,
    epsilon_freq,
    epsilon_magnitude,
    epsilon_time,
    epsilon_time_single,
)
from .errors import DimensionError, HypothesisError, ParameterError, PhaselabError, WindowSupportError
from .graphs import GraphParams, IslandGraph, build_graph, coprime_condition, is_connected, propagation_order, window_support
from .reconstruction import (
    ReconstructionResult,
    reconstruct_freq,
    reconstruct_li,
    reconstruct_time,
    retrieve_magnitudes,
    wrap_angle,
)
from .signals import add_noise, make_window, random_short_window, random_signal, two_bump
from .transforms import dft, dft2, dgt, frobenius_distance, idft, measure, shift

__version__ = "0.1.0"
