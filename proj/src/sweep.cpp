#include "gequeue/sweep.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gequeue {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

void SweepSpec::validate() const {
    if (k_min < 1 || k_max > blocklength || k_min > k_max)
        throw std::invalid_argument("K range must satisfy 1 <= k_min <= k_max <= N");
    if (tau_list.empty()) throw std::invalid_argument("tau_list must be nonempty");
    for (int tau : tau_list)
        if (tau < 0) throw std::invalid_argument("tau values must be nonnegative");
}

CodeRateSweepResult sweep_code_rate(const SweepSpec& spec) {
    spec.validate();

    const ErasureJoint joint(spec.channel, spec.blocklength);  // K-independent, shared

    CodeRateSweepResult result;
    result.tau_list = spec.tau_list;
    result.argmin_tail.assign(spec.tau_list.size(), -1);
    result.argmax_decay = -1;

    std::vector<double> best_tail(spec.tau_list.size(),
                                  std::numeric_limits<double>::infinity());
    double best_decay = 0.0;  // most negative log rho(R) wins
    double best_throughput = -std::numeric_limits<double>::infinity();

    for (int k = spec.k_min; k <= spec.k_max; ++k) {
        const CodeConfig code(spec.blocklength, k);
        const QbdBlocks blocks = build_blocks(spec.channel, code, spec.traffic, joint);

        CodeRateRow row;
        row.info_bits = k;
        row.margin = stability_margin(blocks, spec.channel);
        row.stable = row.margin > 0.0;
        row.throughput = infinite_backlog_throughput(spec.channel, code, joint);
        row.decay = kNaN;
        row.mean_queue = kNaN;
        row.iterations = 0;
        row.residual = kNaN;

        if (row.stable) {
            const StationarySolution sol = solve_stationary(blocks, spec.channel, spec.solver);
            row.decay = decay_rate(sol);
            row.mean_queue = mean_queue_length(sol);
            row.iterations = sol.iterations_used;
            row.residual = sol.residual;
            row.tail.reserve(spec.tau_list.size());
            for (std::size_t i = 0; i < spec.tau_list.size(); ++i) {
                const double t = tail_probability(sol, spec.tau_list[i]);
                row.tail.push_back(t);
                if (t < best_tail[i]) {
                    best_tail[i] = t;
                    result.argmin_tail[i] = k;
                }
            }
            if (result.argmax_decay == -1 || row.decay < best_decay) {
                best_decay = row.decay;
                result.argmax_decay = k;
            }
        }

        if (row.throughput > best_throughput) best_throughput = row.throughput;
        result.rows.push_back(std::move(row));
    }

    for (const CodeRateRow& row : result.rows)
        if (std::abs(row.throughput - best_throughput) <= 1e-12)
            result.argmax_throughput.push_back(row.info_bits);

    result.argmin_tail_tied.assign(spec.tau_list.size(), false);
    for (std::size_t i = 0; i < spec.tau_list.size(); ++i) {
        int within = 0;
        for (const CodeRateRow& row : result.rows)
            if (row.stable && std::abs(row.tail[i] - best_tail[i]) <= 1e-12) ++within;
        result.argmin_tail_tied[i] = within > 1;
    }

    return result;
}

double infinite_backlog_throughput(const ChannelParams& channel, const CodeConfig& code) {
    return infinite_backlog_throughput(channel, code,
                                       ErasureJoint(channel, code.blocklength));
}

double infinite_backlog_throughput(const ChannelParams& channel, const CodeConfig& code,
                                   const ErasureJoint& joint) {
    if (joint.blocklength() != code.blocklength)
        throw std::invalid_argument("erasure joint blocklength does not match the code");
    const Vec2 nu = channel_stationary(channel);
    const int p = code.parity_bits();
    double delivered = 0.0;
    for (int e = 0; e <= code.blocklength; ++e) {
        const double ok = 1.0 - failure_probability(p, e);
        if (ok == 0.0) continue;
        for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) delivered += nu[c] * joint.prob(c, d, e) * ok;
    }
    return code.info_bits * delivered;
}

void SurfaceSpec::validate() const {
    if (k_min < 1 || k_max > blocklength || k_min > k_max)
        throw std::invalid_argument("K range must satisfy 1 <= k_min <= k_max <= N");
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("surface sweep requires gamma in (0, 1]");
    if (arrival_bits_per_block.empty())
        throw std::invalid_argument("arrival grid must be nonempty");
    for (double a : arrival_bits_per_block)
        if (!(a > gamma))
            throw std::invalid_argument(
                "arrival bits per block must exceed gamma (rho = gamma/a must be < 1)");
}

std::vector<SurfacePoint> decay_surface(const SurfaceSpec& spec) {
    spec.validate();

    const ErasureJoint joint(spec.channel, spec.blocklength);
    std::vector<SurfacePoint> grid;
    grid.reserve(static_cast<std::size_t>(spec.k_max - spec.k_min + 1) *
                 spec.arrival_bits_per_block.size());

    for (int k = spec.k_min; k <= spec.k_max; ++k) {
        const CodeConfig code(spec.blocklength, k);
        for (double arrival : spec.arrival_bits_per_block) {
            const TrafficParams traffic(spec.gamma, spec.gamma / arrival);
            const QbdBlocks blocks = build_blocks(spec.channel, code, traffic, joint);

            SurfacePoint pt;
            pt.info_bits = k;
            pt.arrival_bits_per_block = arrival;
            pt.gamma = traffic.gamma;
            pt.rho = traffic.rho;
            pt.margin = stability_margin(blocks, spec.channel);
            pt.stable = pt.margin > 0.0;
            pt.tail_decay = kNaN;
            if (pt.stable) {
                const RateMatrixResult rate = solve_rate_matrix(blocks, spec.solver);
                pt.tail_decay = -std::log(spectral_radius_nonneg(rate.r));
            }
            grid.push_back(pt);
        }
    }
    return grid;
}

RateReport rate_conversions(const ChannelParams& channel, const CodeConfig& code,
                            const TrafficParams& traffic, double slot_seconds) {
    if (!(slot_seconds > 0.0)) throw std::invalid_argument("slot_seconds must be positive");
    RateReport report;
    report.slot_seconds = slot_seconds;
    report.avg_erasure = average_erasure_probability(channel);
    report.arrival_bits_per_sec = traffic.gamma * (1.0 / traffic.rho) / slot_seconds;
    report.shannon_limit_bits_per_block = (1.0 - report.avg_erasure) * code.blocklength;
    report.ergodic_capacity_bits_per_sec =
        report.shannon_limit_bits_per_block / slot_seconds;
    return report;
}

}  // namespace gequeue
