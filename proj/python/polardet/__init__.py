"""Polar-metric detection and SEP analysis under residual RF impairments."""

from ._core import (
    Constellation,
    DetectorKind,
    ImpairmentParams,
    ObjectiveMode,
    OptimizeConfig,
    OptimizeResult,
    PairwiseStats,
    SepEstimate,
    SnMoments,
    __version__,
    check_constellation,
    delta_from_skewness,
    detect,
    error_floor,
    estimate_sep,
    load_constellation,
    make_qam,
    make_sapsk,
    metric_euc,
    metric_gap,
    metric_pad,
    normalize,
    optimize,
    owen_t,
    pairwise_coeffs,
    pairwise_pep,
    project_constraints,
    q_function,
    save_constellation,
    sep_union,
    sn_cdf,
    sn_moments,
    snr_to_sigma_n2,
    sweep,
)

__all__ = [
    "Constellation",
    "DetectorKind",
    "ImpairmentParams",
    "ObjectiveMode",
    "OptimizeConfig",
    "OptimizeResult",
    "PairwiseStats",
    "SepEstimate",
    "SnMoments",
    "__version__",
    "check_constellation",
    "delta_from_skewness",
    "detect",
    "error_floor",
    "estimate_sep",
    "load_constellation",
    "make_qam",
    "make_sapsk",
    "metric_euc",
    "metric_gap",
    "metric_pad",
    "normalize",
    "optimize",
    "owen_t",
    "pairwise_coeffs",
    "pairwise_pep",
    "project_constraints",
    "q_function",
    "save_constellation",
    "sep_union",
    "sn_cdf",
    "sn_moments",
    "snr_to_sigma_n2",
    "sweep",
]
