"""Fit close-in (CI) and alpha-beta-gamma (ABG) path-loss models and study how
well each predicts held-out distances, frequencies and environments."""

from .estimation import (
    DegenerateDesignError,
    FitResult,
    ResidualStats,
    evaluate,
    fit_abg,
    fit_ci,
)
from .experiments import (
    DEFAULT_BANDS,
    EmptyPartitionError,
    FigureRow,
    FigureTable,
    SplitResult,
    SplitSpec,
    dynamic_range_filter,
    group_band,
    run_distance_sweep,
    run_environment_cross,
    run_frequency_loo,
    split,
)
from .model import (
    FSPL_1M_1GHZ,
    SPEED_OF_LIGHT,
    AbgModel,
    CiModel,
    Sample,
    abg_path_loss,
    ci_as_abg,
    ci_path_loss,
    fspl_1m,
    path_loss,
)
from .synth import GeneratorSpec, GridEdgeError, GridSpec, generate, generate_many, grid_fit, preset

__version__ = "0.1.0"
