"""Capacity analysis and simulation for cascades of reconfigurable
intelligent surfaces with fully-connected (beyond-diagonal) phase
networks.

The package optimizes the surface responses of a multi-hop MIMO link in
closed form, evaluates exact per-realization capacity, predicts ergodic
capacity analytically, and sizes surfaces for rate targets.  The ``cli``
module exposes the same functionality as a batch command-line tool.
"""

from .analysis import (
    DEFAULT_DIGAMMA_VARIANT,
    DigammaVariant,
    EcPrediction,
    SizingResult,
    crossover_point,
    ec_high_snr,
    ec_high_snr_large_n,
    ec_taylor,
    large_n_capacity,
    n_required,
)
from .channel import (
    ChannelSet,
    RisConfiguration,
    SystemConfig,
    compose_cascade,
    generate_channels,
    link_shapes,
)
from .experiment import (
    ExperimentConfig,
    OutputBundle,
    SchemaError,
    load_config,
    run_experiment,
)
from .numerics import (
    SvdTriple,
    WaterfillResult,
    WishartParams,
    digamma,
    logdet_capacity,
    svd,
    waterfill,
    wishart_eig_moment,
)
from .optimizer import (
    CapacityReport,
    Precoder,
    SvdWfSettings,
    evaluate,
    optimize_svdwf,
    optimize_upa,
    project_diagonal,
    trace_objective,
)
from .simulator import (
    Axis,
    McEstimate,
    Strategy,
    StrategyEntry,
    SweepRow,
    SweepSpec,
    estimate_ec,
    run_sweep,
    trial_capacity,
)
from .validation import ValidationSuite, run_validation

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_DIGAMMA_VARIANT",
    "DigammaVariant",
    "EcPrediction",
    "SizingResult",
    "crossover_point",
    "ec_high_snr",
    "ec_high_snr_large_n",
    "ec_taylor",
    "large_n_capacity",
    "n_required",
    "ChannelSet",
    "RisConfiguration",
    "SystemConfig",
    "compose_cascade",
    "generate_channels",
    "link_shapes",
    "ExperimentConfig",
    "OutputBundle",
    "SchemaError",
    "load_config",
    "run_experiment",
    "SvdTriple",
    "WaterfillResult",
    "WishartParams",
    "digamma",
    "logdet_capacity",
    "svd",
    "waterfill",
    "wishart_eig_moment",
    "CapacityReport",
    "Precoder",
    "SvdWfSettings",
    "evaluate",
    "optimize_svdwf",
    "optimize_upa",
    "project_diagonal",
    "trace_objective",
    "Axis",
    "McEstimate",
    "Strategy",
    "StrategyEntry",
    "SweepRow",
    "SweepSpec",
    "estimate_ec",
    "run_sweep",
    "trial_capacity",
    "ValidationSuite",
    "run_validation",
    "__version__",
]
