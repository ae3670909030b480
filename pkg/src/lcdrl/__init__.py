"""Construction and exact verification of binary and ternary LCD codes.

A linear code is LCD (linear complementary dual) when it intersects its
dual only in the zero vector, equivalently when G G^T is nonsingular for
a generator matrix G. This package searches for good LCD codes with a
policy-gradient constructor whose rewards combine an exact LCD test, a
performance metric (minimum distance or simulated block error rate), and
a novelty bonus from a random-distillation pair of networks.
"""

from .channel import BlerEstimate, ChannelConfig, awgn_add, bpsk_modulate, estimate_bler, osd_decode
from .codes import (
    CodeReport,
    LinearCode,
    analyze,
    hull_dimension,
    is_lcd,
    load_code,
    lookup_distance_bound,
    make_standard_code,
    min_distance,
    parse_code,
    save_code,
    serialize,
)
from .errors import (
    EnumerationCapError,
    FieldError,
    MatrixParseError,
    NumericError,
    ShapeError,
)
from .evaluator import Evaluator, RewardBreakdown
from .gf import GFMatrix, format_matrix, is_nonsingular, mat_mul, parse_matrix, rank, transpose
from .policy import (
    PolicyNet,
    Trajectory,
    TrajectoryStep,
    map_action_binary,
    map_action_ternary,
    reinforce_update,
    sample_action,
)
from .rnd import RndPair
from .trainer import TrainConfig, TrainResult, run_ablation, run_episode, run_variance_sweep, train

__version__ = "0.1.0"
