"""Bistatic backscatter MIMO link simulator.

Pilot-based LS estimation of the carrier-emitter to reader channel, SVD
nullspace-projection beamforming against the direct-link interference, and
Neyman-Pearson detection of a single backscatter device, with reproducible
Monte-Carlo experiment drivers.
"""

from .chanest import PilotObservation, ls_estimate, receive_pilots
from .detector import (DetectorSideInfo, Phase2Observation, np_statistic,
                       q_func, q_inv, receive_phase2, side_info,
                       theoretical_pd, threshold_for_pfa)
from .errors import ConfigurationError, UsageError
from .harness import (DynRangePoint, ExperimentConfig, RocPoint,
                      default_config, default_p_fa_grid, run_dynrange,
                      run_roc, write_dynrange_csv, write_roc_csv)
from .metrics import (dynamic_range_mc, dynamic_range_sample,
                      power_from_snr_d, power_from_snr_p)
from .nullproj import (Projector, SvdResult, apply_scaled, complex_svd,
                       identity_projector, make_projector)
from .scene import ChannelSet, SceneConfig, build_channels, path_loss, steering_vector
from .seeding import complex_noise, derive_stream
from .waveform import (PhaseParams, default_gamma_schedule, pilot_matrix,
                       probe_matrix, signal_energy)

__version__ = "0.1.0"
