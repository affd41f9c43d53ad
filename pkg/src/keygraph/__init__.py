"""Keyframe selection on similarity path graphs.

The toolkit turns a sequence of frame feature vectors into a path graph whose
edge weights encode visual similarity, selects keyframes whose Gershgorin
disc alignment certifies a spectral lower bound on the resulting coefficient
matrix, reconstructs node signals from the samples, and scores automatic
summaries against human ones.  Everything is deterministic; the verification
oracles are self-contained.
"""

from .estimator import KeyframeSampler
from .evaluation import (
    EvalReport,
    MatchConfig,
    Summary,
    aggregate_report,
    evaluate_users,
    match_count,
    prf,
)
from .features_io import (
    FeatureFileHeader,
    load_features,
    save_features,
    to_frame_index,
)
from .graph import (
    GeneralGraph,
    PathGraph,
    TridiagonalLaplacian,
    build_spg,
    feature_distance,
    generalized_laplacian,
    partition_induced,
    path_laplacian,
    validate_features,
)
from .reconstruct import SampledSignal, solve_glr
from .sampler import (
    CoverageResult,
    SamplerParams,
    SelectionResult,
    align_scalar,
    budgeted_sample,
    choose_sample,
    disc_align_coverage,
    partition_sample,
)
from .spectral import (
    CoefficientMatrix,
    coefficient_matrix,
    gct_lower_bound,
    gershgorin_left_ends,
    lambda_min_dense,
    lambda_min_tridiagonal,
    scaled_gct_lower_bound,
    selection_to_sampling_matrix,
)
from .verify import SuiteResult, VerifyConfig, run_all

__version__ = "0.1.0"

__all__ = [
    "KeyframeSampler",
    "EvalReport",
    "MatchConfig",
    "Summary",
    "aggregate_report",
    "evaluate_users",
    "match_count",
    "prf",
    "FeatureFileHeader",
    "load_features",
    "save_features",
    "to_frame_index",
    "GeneralGraph",
    "PathGraph",
    "TridiagonalLaplacian",
    "build_spg",
    "feature_distance",
    "generalized_laplacian",
    "partition_induced",
    "path_laplacian",
    "validate_features",
    "SampledSignal",
    "solve_glr",
    "CoverageResult",
    "SamplerParams",
    "SelectionResult",
    "align_scalar",
    "budgeted_sample",
    "choose_sample",
    "disc_align_coverage",
    "partition_sample",
    "CoefficientMatrix",
    "coefficient_matrix",
    "gct_lower_bound",
    "gershgorin_left_ends",
    "lambda_min_dense",
    "lambda_min_tridiagonal",
    "scaled_gct_lower_bound",
    "selection_to_sampling_matrix",
    "SuiteResult",
    "VerifyConfig",
    "run_all",
    "__version__",
]
