#include "gequeue/qbd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gequeue {

namespace {

// Stationary row vector of a 2x2 stochastic matrix. For A = A0 + A1 + A2 this
// coincides with the channel's stationary law, so the solver can check drift
// from the blocks alone.
Vec2 stationary_of(const Mat2& m) {
    const double up = m(0, 1);
    const double down = m(1, 0);
    const double s = up + down;
    if (s == 0.0) return {0.5, 0.5};  // two closed states; either weighting works for drift
    return {down / s, up / s};
}

double drift_margin(const QbdBlocks& blocks) {
    const Vec2 nu = stationary_of(blocks.a0 + blocks.a1 + blocks.a2);
    return dot(nu, blocks.a2.row_sums()) - dot(nu, blocks.a0.row_sums());
}

}  // namespace

RateMatrixResult solve_rate_matrix(const QbdBlocks& blocks, const SolverOptions& opts) {
    const double margin = drift_margin(blocks);
    if (!(margin > 0.0)) throw UnstableSystemError(margin);

    const Mat2 inv = inverse(Mat2::identity() - blocks.a1, "I - A1");

    Mat2 r = Mat2::zero();
    double diff = std::numeric_limits<double>::infinity();
    std::size_t it = 0;
    while (it < opts.max_iter) {
        const Mat2 next = (blocks.a0 + r * r * blocks.a2) * inv;
        diff = (next - r).max_abs();
        r = next;
        ++it;
        if (diff <= opts.tol) break;
    }
    if (diff > opts.tol) throw ConvergenceError(it, diff);

    const double residual = (r - (blocks.a0 + r * r * blocks.a2) * inv).max_abs();
    if (spectral_radius_nonneg(r) >= 1.0)
        throw UnstableSystemError(margin);  // drift said stable but R disagrees
    return {r, it, residual};
}

BoundaryResult solve_boundary(const QbdBlocks& blocks, const Mat2& r,
                              const ChannelParams& channel) {
    const Mat2 a2_inv = inverse(blocks.a2, "A2 (no downward transitions; check gamma, rho and the erasure probabilities)");
    const Mat2 z = (Mat2::identity() - blocks.c1) * a2_inv;
    const Mat2 inv_i_r = inverse(Mat2::identity() - r, "I - R");
    const Mat2 norm = inverse(Mat2::identity() + z * inv_i_r, "I + Z(I - R)^{-1}");
    const Vec2 pi0 = channel_stationary(channel) * norm;
    return {z, pi0};
}

StationarySolution solve_stationary(const QbdBlocks& blocks, const ChannelParams& channel,
                                    const SolverOptions& opts) {
    const double margin = stability_margin(blocks, channel);
    if (!(margin > 0.0)) throw UnstableSystemError(margin);

    const RateMatrixResult rate = solve_rate_matrix(blocks, opts);
    const BoundaryResult boundary = solve_boundary(blocks, rate.r, channel);

    StationarySolution sol;
    sol.rate_matrix = rate.r;
    sol.boundary_matrix = boundary.z;
    sol.pi0 = boundary.pi0;
    sol.spectral_radius_r = spectral_radius_nonneg(rate.r);
    sol.iterations_used = rate.iterations;
    sol.residual = rate.residual;
    sol.margin = margin;
    sol.ill_conditioned = margin < 1e-6;
    return sol;
}

Vec2 level_distribution(const StationarySolution& sol, int level) {
    if (level < 0) throw std::invalid_argument("level must be nonnegative");
    if (level == 0) return sol.pi0;
    return sol.pi0 * sol.boundary_matrix *
           matrix_power(sol.rate_matrix, static_cast<unsigned long>(level - 1));
}

double tail_probability(const StationarySolution& sol, int tau) {
    if (tau < 0) throw std::invalid_argument("tau must be nonnegative");
    Vec2 w = sol.pi0 * sol.boundary_matrix;  // pi_1
    for (int t = 0; t < tau; ++t) w = w * sol.rate_matrix;
    const Mat2 inv_i_r = inverse(Mat2::identity() - sol.rate_matrix, "I - R");
    // pi0 * Z cancels to rounding noise when the queue never grows; keep the
    // probability nonnegative
    return std::max((w * inv_i_r).sum(), 0.0);
}

double log_tail_probability(const StationarySolution& sol, int tau) {
    if (tau < 0) throw std::invalid_argument("tau must be nonnegative");
    Vec2 w = sol.pi0 * sol.boundary_matrix;
    double log_scale = 0.0;
    for (int t = 0; t < tau; ++t) {
        w = w * sol.rate_matrix;
        const double s = w.sum();
        if (s <= 0.0) return -std::numeric_limits<double>::infinity();
        log_scale += std::log(s);
        w = w * (1.0 / s);
    }
    const Mat2 inv_i_r = inverse(Mat2::identity() - sol.rate_matrix, "I - R");
    const double rest = (w * inv_i_r).sum();
    if (rest <= 0.0) return -std::numeric_limits<double>::infinity();
    return log_scale + std::log(rest);
}

double decay_rate(const StationarySolution& sol) {
    if (sol.spectral_radius_r == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(sol.spectral_radius_r);
}

double mean_queue_length(const StationarySolution& sol) {
    const Vec2 pi1 = sol.pi0 * sol.boundary_matrix;
    const Mat2 inv_i_r = inverse(Mat2::identity() - sol.rate_matrix, "I - R");
    return (pi1 * inv_i_r * inv_i_r).sum();
}

}  // namespace gequeue
