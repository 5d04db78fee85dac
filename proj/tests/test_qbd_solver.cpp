#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "gequeue/qbd_solver.hpp"
#include "support/oracles.hpp"

using namespace gequeue;

namespace {

const ChannelParams kDemoChannel(0.02, 0.005, 0.49, 0.0025);
const CodeConfig kDemoCode(114, 83);
const TrafficParams kDemoTraffic(0.25, 1.0 / 195.0);

QbdBlocks demo_blocks() { return build_blocks(kDemoChannel, kDemoCode, kDemoTraffic); }

double fixed_point_residual(const QbdBlocks& blocks, const Mat2& r) {
    const Mat2 inv = inverse(Mat2::identity() - blocks.a1, "I - A1");
    return (r - (blocks.a0 + r * r * blocks.a2) * inv).max_abs();
}

// The five oracle parameter sets used for truncated-chain equivalence.
struct ParamSet {
    ChannelParams channel;
    CodeConfig code;
    TrafficParams traffic;
};

const ParamSet kOracleSets[] = {
    {ChannelParams(0.02, 0.005, 0.49, 0.0025), CodeConfig(114, 83),
     TrafficParams(0.25, 1.0 / 195.0)},
    {ChannelParams(0.1, 0.1, 0.3, 0.01), CodeConfig(40, 28), TrafficParams(0.3, 0.02)},
    {ChannelParams(0.4, 0.5, 0.3, 0.05), CodeConfig(20, 12), TrafficParams(0.2, 0.1)},
    {ChannelParams(0.02, 0.02, 0.6, 0.001), CodeConfig(60, 40), TrafficParams(0.15, 0.01)},
    {ChannelParams(0.3, 0.05, 0.45, 0.05), CodeConfig(30, 18),
     TrafficParams(0.1, 1.0 / 30.0)},
};

}  // namespace

TEST_CASE("rate matrix vanishes without arrivals") {
    const QbdBlocks blocks =
        build_blocks(kDemoChannel, CodeConfig(20, 10), TrafficParams(0.0, 0.2));
    const RateMatrixResult res = solve_rate_matrix(blocks);
    CHECK(res.r.max_abs() == 0.0);

    const StationarySolution sol = solve_stationary(blocks, kDemoChannel);
    CHECK(decay_rate(sol) == -std::numeric_limits<double>::infinity());
    CHECK(mean_queue_length(sol) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tail_probability(sol, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tail_probability(sol, 3) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sol.pi0.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rate matrix reduces to the scalar fixed point on decoupled phases") {
    // Two identical, non-communicating phases emulate the scalar chain with
    // up/stay/down probabilities (lambda, kappa, mu); the minimal root of
    // mu r^2 - (1 - kappa) r + lambda = 0 is lambda/mu.
    const double lambda = 0.2, kappa = 0.5, mu = 0.3;
    Mat2 a0, a1, a2, c0, c1;
    for (int i = 0; i < 2; ++i) {
        a0(i, i) = lambda;
        a1(i, i) = kappa;
        a2(i, i) = mu;
        c0(i, i) = lambda;
        c1(i, i) = 1.0 - lambda;
    }
    const QbdBlocks blocks(a0, a1, a2, c0, c1);
    const RateMatrixResult res = solve_rate_matrix(blocks);
    CHECK(res.r(0, 0) == doctest::Approx(lambda / mu).epsilon(1e-10));
    CHECK(res.r(1, 1) == doctest::Approx(lambda / mu).epsilon(1e-10));
    CHECK(res.r(0, 1) == 0.0);
    CHECK(res.r(1, 0) == 0.0);
    CHECK(spectral_radius_nonneg(res.r) == doctest::Approx(lambda / mu).epsilon(1e-10));
}

TEST_CASE("unstable blocks are refused with the margin attached") {
    const QbdBlocks blocks =
        build_blocks(kDemoChannel, CodeConfig(114, 110), kDemoTraffic);
    CHECK(stability_margin(blocks, kDemoChannel) < 0.0);
    CHECK_THROWS_AS(solve_rate_matrix(blocks), UnstableSystemError);
    try {
        solve_stationary(blocks, kDemoChannel);
        FAIL("expected UnstableSystemError");
    } catch (const UnstableSystemError& e) {
        CHECK(e.margin() < 0.0);
    }
}

TEST_CASE("iteration budget exhaustion raises ConvergenceError") {
    try {
        solve_rate_matrix(demo_blocks(), SolverOptions{1e-12, 3});
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.iterations() == 3);
        CHECK(e.residual() > 0.0);
    }
}

TEST_CASE("singular A2 is reported as such") {
    const ChannelParams all_bad(0.3, 0.2, 1.0, 1.0);
    const QbdBlocks blocks = build_blocks(all_bad, CodeConfig(12, 5), TrafficParams(0.0, 0.25));
    CHECK_THROWS_AS(solve_boundary(blocks, Mat2::zero(), all_bad), SingularMatrixError);
}

TEST_CASE("demo solve satisfies the theorem identities") {
    const QbdBlocks blocks = demo_blocks();
    const StationarySolution sol = solve_stationary(blocks, kDemoChannel);

    CHECK(sol.residual <= 1e-10);
    CHECK(fixed_point_residual(blocks, sol.rate_matrix) <= 1e-10);
    CHECK(sol.iterations_used > 0);
    CHECK(sol.spectral_radius_r > 0.0);
    CHECK(sol.spectral_radius_r < 1.0);
    CHECK(sol.spectral_radius_r == doctest::Approx(0.787063440428973).epsilon(1e-10));
    CHECK_FALSE(sol.ill_conditioned);

    const Vec2 pi0 = sol.pi0;
    const Vec2 pi1 = pi0 * sol.boundary_matrix;
    const Vec2 pi2 = pi1 * sol.rate_matrix;
    CHECK(pi0[0] >= 0.0);
    CHECK(pi0[1] >= 0.0);
    CHECK(pi1[0] >= 0.0);
    CHECK(pi1[1] >= 0.0);

    // level-0 and level-1 balance
    const Vec2 bal0 = pi0 * blocks.c1 + pi1 * blocks.a2 - pi0;
    const Vec2 bal1 = pi0 * blocks.c0 + pi1 * blocks.a1 + pi2 * blocks.a2 - pi1;
    CHECK(std::abs(bal0[0]) <= 1e-10);
    CHECK(std::abs(bal0[1]) <= 1e-10);
    CHECK(std::abs(bal1[0]) <= 1e-10);
    CHECK(std::abs(bal1[1]) <= 1e-10);

    // normalization and channel marginal
    const Mat2 inv_i_r = inverse(Mat2::identity() - sol.rate_matrix, "I - R");
    const Vec2 marginal = pi0 * (Mat2::identity() + sol.boundary_matrix * inv_i_r);
    const Vec2 nu = channel_stationary(kDemoChannel);
    CHECK(std::abs(marginal.sum() - 1.0) <= 1e-10);
    CHECK(std::abs(marginal[0] - nu[0]) <= 1e-10);
    CHECK(std::abs(marginal[1] - nu[1]) <= 1e-10);
}

TEST_CASE("demo tails and moments match frozen regression values") {
    const StationarySolution sol = solve_stationary(demo_blocks(), kDemoChannel);
    CHECK(tail_probability(sol, 0) ==
          doctest::Approx(1.0 - sol.pi0.sum()).epsilon(1e-12));
    CHECK(tail_probability(sol, 5) == doctest::Approx(0.2536306188257436).epsilon(1e-9));
    CHECK(tail_probability(sol, 10) == doctest::Approx(0.07660381159097226).epsilon(1e-9));
    CHECK(tail_probability(sol, 15) == doctest::Approx(0.023136575455424375).epsilon(1e-9));
    CHECK(tail_probability(sol, 20) == doctest::Approx(0.006987917607322173).epsilon(1e-9));
    CHECK(tail_probability(sol, 25) == doctest::Approx(0.002110554026493788).epsilon(1e-9));
    CHECK(mean_queue_length(sol) == doctest::Approx(3.9438606116603174).epsilon(1e-9));
    CHECK(decay_rate(sol) == doctest::Approx(-0.23944642335745367).epsilon(1e-9));

    double prev = tail_probability(sol, 0);
    for (int tau = 1; tau <= 40; ++tau) {
        const double t = tail_probability(sol, tau);
        CHECK(t <= prev + 1e-15);
        prev = t;
    }
}

TEST_CASE("level distributions match the truncated-chain oracle") {
    for (const ParamSet& set : kOracleSets) {
        const QbdBlocks blocks = build_blocks(set.channel, set.code, set.traffic);
        REQUIRE(stability_margin(blocks, set.channel) > 0.0);
        const StationarySolution sol = solve_stationary(blocks, set.channel);
        const std::vector<Vec2> oracle = test::truncated_chain_levels(blocks, 500);
        for (int q = 0; q <= 30; ++q) {
            const Vec2 mg = level_distribution(sol, q);
            CHECK(std::abs(mg[0] - oracle[static_cast<std::size_t>(q)][0]) <= 1e-8);
            CHECK(std::abs(mg[1] - oracle[static_cast<std::size_t>(q)][1]) <= 1e-8);
        }

        double truncated_mean = 0.0;
        for (std::size_t q = 0; q < oracle.size(); ++q)
            truncated_mean += static_cast<double>(q) * oracle[q].sum();
        CHECK(std::abs(mean_queue_length(sol) - truncated_mean) <= 1e-6);
    }
}

TEST_CASE("tail decay approaches log spectral radius") {
    const StationarySolution sol = solve_stationary(demo_blocks(), kDemoChannel);
    const double lhs = log_tail_probability(sol, 2000) / 2000.0;
    CHECK(std::abs(lhs - decay_rate(sol)) <= 1e-3);

    // linear- and log-domain evaluations agree where both are representable
    CHECK(log_tail_probability(sol, 25) ==
          doctest::Approx(std::log(tail_probability(sol, 25))).epsilon(1e-12));
}

TEST_CASE("solver identities hold over randomized stable parameters") {
    std::mt19937_64 gen(2718);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int accepted = 0;
    while (accepted < 40) {
        const double alpha = 0.02 + 0.96 * u(gen);
        const double beta = 0.02 + 0.96 * u(gen);
        const double eg = 0.6 * u(gen);
        const double eb = eg + (1.0 - eg) * u(gen);
        const ChannelParams ch(alpha, beta, eb, eg);
        const int n = 4 + static_cast<int>(u(gen) * 26);
        const int k = 1 + static_cast<int>(u(gen) * (n - 1));
        const TrafficParams traffic(0.35 * u(gen), 0.01 + 0.5 * u(gen));

        const QbdBlocks blocks = build_blocks(ch, CodeConfig(n, k), traffic);
        if (stability_margin(blocks, ch) <= 1e-4) continue;
        Mat2 a2_inv;
        try {
            a2_inv = inverse(blocks.a2, "A2");
        } catch (const SingularMatrixError&) {
            continue;  // boundary formula needs A2^{-1}
        }
        if (a2_inv.max_abs() > 300.0) continue;  // keep Z amplification bounded
        ++accepted;

        const StationarySolution sol = solve_stationary(blocks, ch);
        CHECK(sol.residual <= 1e-10);
        CHECK(sol.spectral_radius_r < 1.0);

        const Vec2 pi1 = sol.pi0 * sol.boundary_matrix;
        const Vec2 pi2 = pi1 * sol.rate_matrix;
        const Vec2 bal0 = sol.pi0 * blocks.c1 + pi1 * blocks.a2 - sol.pi0;
        const Vec2 bal1 = sol.pi0 * blocks.c0 + pi1 * blocks.a1 + pi2 * blocks.a2 - pi1;
        for (int i = 0; i < 2; ++i) {
            CHECK(std::abs(bal0[i]) <= 1e-10);
            CHECK(std::abs(bal1[i]) <= 1e-10);
        }

        const Mat2 inv_i_r = inverse(Mat2::identity() - sol.rate_matrix, "I - R");
        const Vec2 marginal = sol.pi0 * (Mat2::identity() + sol.boundary_matrix * inv_i_r);
        const Vec2 nu = channel_stationary(ch);
        CHECK(std::abs(marginal.sum() - 1.0) <= 1e-10);
        CHECK(std::abs(marginal[0] - nu[0]) <= 1e-10);

        // nonnegative levels with geometric decay of the level masses
        double prev_mass = -1.0;
        for (int q = 0; q <= 60; ++q) {
            const Vec2 pi = level_distribution(sol, q);
            CHECK(pi[0] >= -1e-15);
            CHECK(pi[1] >= -1e-15);
            if (q >= 40) {
                const double mass = pi.sum();
                if (prev_mass >= 0.0)
                    CHECK(mass <= sol.spectral_radius_r * prev_mass * (1.0 + 1e-9) + 1e-300);
                prev_mass = mass;
            }
        }
    }
}

TEST_CASE("near-critical systems are flagged ill-conditioned") {
    // bisect gamma until the margin lands just inside (0, 1e-6); closer to
    // the boundary the iteration rate degenerates to 1 and no budget helps
    const ErasureJoint joint(kDemoChannel, kDemoCode.blocklength);
    auto margin_at = [&](double gamma) {
        const QbdBlocks b =
            build_blocks(kDemoChannel, kDemoCode, TrafficParams(gamma, 1.0 / 195.0), joint);
        return stability_margin(b, kDemoChannel);
    };
    double lo = 0.25, hi = 0.5;  // margin(lo) > 0 > margin(hi)
    REQUIRE(margin_at(lo) > 0.0);
    REQUIRE(margin_at(hi) < 0.0);
    double margin_lo = margin_at(lo);
    for (int i = 0; i < 60 && margin_lo >= 1e-6; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double m = margin_at(mid);
        if (m > 0.0) {
            lo = mid;
            margin_lo = m;
        } else {
            hi = mid;
        }
    }
    REQUIRE(margin_lo > 0.0);
    REQUIRE(margin_lo < 1e-6);

    const QbdBlocks near =
        build_blocks(kDemoChannel, kDemoCode, TrafficParams(lo, 1.0 / 195.0), joint);
    const StationarySolution sol = solve_stationary(near, kDemoChannel,
                                                    SolverOptions{1e-9, 60000000});
    CHECK(sol.ill_conditioned);
    CHECK(sol.spectral_radius_r < 1.0);
}

TEST_CASE("level_distribution input validation") {
    const StationarySolution sol = solve_stationary(demo_blocks(), kDemoChannel);
    CHECK_THROWS_AS(level_distribution(sol, -1), std::invalid_argument);
    CHECK_THROWS_AS(tail_probability(sol, -1), std::invalid_argument);
    const Vec2 l0 = level_distribution(sol, 0);
    CHECK(l0[0] == sol.pi0[0]);
    CHECK(l0[1] == sol.pi0[1]);
}
