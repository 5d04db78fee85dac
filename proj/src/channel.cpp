#include "gequeue/channel.hpp"

#include <stdexcept>
#include <string>

namespace gequeue {

namespace {

// The O(N^2) joint DP is quadratic in the blocklength; cap it well above any
// realistic codeword size.
constexpr int kMaxBlocklength = 10000;

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                    std::to_string(p));
}

}  // namespace

ChannelParams::ChannelParams(double alpha, double beta, double eps_b, double eps_g)
    : alpha(alpha), beta(beta), eps_b(eps_b), eps_g(eps_g) {
    check_probability(alpha, "alpha");
    check_probability(beta, "beta");
    check_probability(eps_b, "eps_b");
    check_probability(eps_g, "eps_g");
    if (eps_b < eps_g)
        throw std::invalid_argument("eps_b must be >= eps_g (bad state erases more)");
    if (alpha + beta == 0.0)
        throw std::invalid_argument("alpha + beta must be positive for an ergodic chain");
}

Mat2 channel_transition_matrix(const ChannelParams& params) {
    Mat2 p;
    p(kBad, kBad) = 1.0 - params.alpha;
    p(kBad, kGood) = params.alpha;
    p(kGood, kBad) = params.beta;
    p(kGood, kGood) = 1.0 - params.beta;
    return p;
}

Vec2 channel_stationary(const ChannelParams& params) {
    const double s = params.alpha + params.beta;
    return {params.beta / s, params.alpha / s};
}

double channel_memory(const ChannelParams& params) { return 1.0 - params.alpha - params.beta; }

double average_erasure_probability(const ChannelParams& params) {
    const Vec2 nu = channel_stationary(params);
    return nu[kBad] * params.eps_b + nu[kGood] * params.eps_g;
}

ErasureJoint::ErasureJoint(const ChannelParams& params, int blocklength)
    : blocklength_(blocklength) {
    if (blocklength < 1) throw std::invalid_argument("blocklength must be >= 1");
    if (blocklength > kMaxBlocklength)
        throw std::invalid_argument("blocklength exceeds the supported cap of " +
                                    std::to_string(kMaxBlocklength));

    const std::size_t n = static_cast<std::size_t>(blocklength);
    const Mat2 p = channel_transition_matrix(params);
    const double eps[2] = {params.eps_b, params.eps_g};

    table_.assign(4 * (n + 1), 0.0);

    // dp[s][e]: probability of being in state s after k uses with e erasures
    // so far. One transition consumes one bit whose erasure probability is
    // that of the state being left.
    std::vector<double> dp(2 * (n + 1));
    std::vector<double> next(2 * (n + 1));
    for (int c = 0; c < 2; ++c) {
        std::fill(dp.begin(), dp.end(), 0.0);
        dp[static_cast<std::size_t>(c) * (n + 1)] = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            std::fill(next.begin(), next.end(), 0.0);
            for (int s = 0; s < 2; ++s) {
                const double* src = &dp[static_cast<std::size_t>(s) * (n + 1)];
                const double keep = 1.0 - eps[s];
                for (int t = 0; t < 2; ++t) {
                    double* dst = &next[static_cast<std::size_t>(t) * (n + 1)];
                    const double w = p(s, t);
                    if (w == 0.0) continue;
                    for (std::size_t e = 0; e <= k; ++e) {
                        const double v = src[e] * w;
                        dst[e] += v * keep;
                        dst[e + 1] += v * eps[s];
                    }
                }
            }
            dp.swap(next);
        }
        for (int d = 0; d < 2; ++d)
            for (std::size_t e = 0; e <= n; ++e)
                table_[(static_cast<std::size_t>(c) * 2 + static_cast<std::size_t>(d)) * (n + 1) +
                       e] = dp[static_cast<std::size_t>(d) * (n + 1) + e];
    }
}

Mat2 ErasureJoint::state_marginal() const {
    Mat2 m;
    for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
            double s = 0.0;
            for (int e = 0; e <= blocklength_; ++e) s += prob(c, d, e);
            m(c, d) = s;
        }
    return m;
}

}  // namespace gequeue
