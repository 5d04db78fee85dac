"""Queueing analysis of random linear codes over a two-state erasure channel.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from gequeue._core import (
    ChannelParams,
    CodeConfig,
    CodeRateRow,
    CodeRateSweepResult,
    ConvergenceError,
    DecodeFidelity,
    ErasureHistogram,
    ErasureJoint,
    QbdBlocks,
    RateReport,
    SimResult,
    SingularMatrixError,
    SolverOptions,
    StationarySolution,
    SurfacePoint,
    TailEstimate,
    TrafficParams,
    UnstableSystemError,
    average_erasure_probability,
    avg_failure_probability,
    build_blocks,
    channel_memory,
    channel_stationary,
    channel_transition_matrix,
    decay_surface,
    failure_probability,
    infinite_backlog_throughput,
    rank_failure_frequency,
    rate_conversions,
    segment_completion_prob,
    simulate,
    simulate_erasure_histogram,
    solve_stationary,
    sweep_code_rate,
)

__all__ = [
    "ChannelParams",
    "CodeConfig",
    "CodeRateRow",
    "CodeRateSweepResult",
    "ConvergenceError",
    "DecodeFidelity",
    "ErasureHistogram",
    "ErasureJoint",
    "QbdBlocks",
    "RateReport",
    "SimResult",
    "SingularMatrixError",
    "SolverOptions",
    "StationarySolution",
    "SurfacePoint",
    "TailEstimate",
    "TrafficParams",
    "UnstableSystemError",
    "average_erasure_probability",
    "avg_failure_probability",
    "build_blocks",
    "channel_memory",
    "channel_stationary",
    "channel_transition_matrix",
    "decay_surface",
    "failure_probability",
    "infinite_backlog_throughput",
    "rank_failure_frequency",
    "rate_conversions",
    "segment_completion_prob",
    "simulate",
    "simulate_erasure_histogram",
    "solve_stationary",
    "sweep_code_rate",
]
