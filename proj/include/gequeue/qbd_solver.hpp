#ifndef GEQUEUE_QBD_SOLVER_HPP
#define GEQUEUE_QBD_SOLVER_HPP

#include <cstddef>

#include "gequeue/qbd_model.hpp"

namespace gequeue {

struct SolverOptions {
    double tol = 1e-13;              // max-abs change between successive iterates
    std::size_t max_iter = 1000000;  // linear fixed-point iteration, cheap at 2x2
};

struct RateMatrixResult {
    Mat2 r;
    std::size_t iterations;
    double residual;  // ||R - (A0 + R^2 A2)(I - A1)^{-1}||_max at the final iterate
};

// Minimal nonnegative solution of R = (A0 + R^2 A2)(I - A1)^{-1}, computed by
// the fixed-point iteration from R_0 = 0. Throws UnstableSystemError when the
// drift is nonnegative and ConvergenceError when max_iter is exhausted.
RateMatrixResult solve_rate_matrix(const QbdBlocks& blocks, const SolverOptions& opts = {});

struct BoundaryResult {
    Mat2 z;
    Vec2 pi0;
};

// Boundary solve: Z = (I - C1) A2^{-1} and
// pi0 = [beta/(alpha+beta), alpha/(alpha+beta)] (I + Z (I - R)^{-1})^{-1}.
// Level distributions follow as pi_1 = pi0 Z and pi_{q+1} = pi_q R for q >= 1.
BoundaryResult solve_boundary(const QbdBlocks& blocks, const Mat2& r,
                              const ChannelParams& channel);

struct StationarySolution {
    Mat2 rate_matrix;      // R
    Mat2 boundary_matrix;  // Z
    Vec2 pi0;
    double spectral_radius_r;
    std::size_t iterations_used;
    double residual;
    double margin;          // stability margin of the blocks
    bool ill_conditioned;   // margin below 1e-6; results near the boundary
};

StationarySolution solve_stationary(const QbdBlocks& blocks, const ChannelParams& channel,
                                    const SolverOptions& opts = {});

// Stationary mass of level q, split by channel state.
Vec2 level_distribution(const StationarySolution& sol, int level);

// Pr(Q > tau) = pi_1 R^tau (I - R)^{-1} 1. At tau = 0 this is 1 - pi0 * 1.
double tail_probability(const StationarySolution& sol, int tau);

// log Pr(Q > tau), evaluated with per-step renormalization so it stays finite
// far beyond the underflow point of the linear-domain value.
double log_tail_probability(const StationarySolution& sol, int tau);

// Asymptotic tail decay: lim (1/tau) log Pr(Q >= tau) = log rho(R), strictly
// negative for a stable queue; -infinity when R = 0 (the queue never backs up).
double decay_rate(const StationarySolution& sol);

// E[Q] = pi_1 (I - R)^{-2} 1.
double mean_queue_length(const StationarySolution& sol);

}  // namespace gequeue

#endif
