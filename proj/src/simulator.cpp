#include "gequeue/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "gequeue/qbd_solver.hpp"

namespace gequeue {

void SimConfig::validate() const {
    if (blocks_to_simulate <= warmup_blocks)
        throw std::invalid_argument("blocks_to_simulate must exceed warmup_blocks");
    if (fidelity == DecodeFidelity::matrix_sampling) {
        if (code.blocklength > 64 || code.parity_bits() > 64)
            throw std::invalid_argument(
                "matrix_sampling fidelity requires N <= 64 and N - K <= 64");
    }
    for (int tau : tau_list)
        if (tau < 0) throw std::invalid_argument("tau values must be nonnegative");
}

double SimResult::state_b_frequency() const {
    double f = 0.0;
    for (const auto& lvl : level_masses) f += lvl[kBad];
    return f;
}

double SimResult::tail_frequency(int tau) const {
    double f = 0.0;
    for (std::size_t q = static_cast<std::size_t>(tau) + 1; q < level_masses.size(); ++q)
        f += level_masses[q][kBad] + level_masses[q][kGood];
    return f;
}

namespace {

// Batch-means accumulator: block-boundary samples are correlated, so the
// standard error comes from the variance of per-batch means rather than the
// raw binomial formula.
class BatchAccumulator {
  public:
    BatchAccumulator(std::uint64_t total_samples, std::uint64_t target_batches = 200)
        : batch_len_(std::max<std::uint64_t>(1, total_samples / target_batches)) {}

    void add(double x) {
        total_sum_ += x;
        ++total_n_;
        batch_sum_ += x;
        if (++batch_n_ == batch_len_) {
            const double m = batch_sum_ / static_cast<double>(batch_len_);
            means_sum_ += m;
            means_sq_sum_ += m * m;
            ++batches_;
            batch_sum_ = 0.0;
            batch_n_ = 0;
        }
    }

    double mean() const {
        return total_n_ == 0 ? 0.0 : total_sum_ / static_cast<double>(total_n_);
    }

    double std_error() const {
        if (batches_ < 2) return std::numeric_limits<double>::quiet_NaN();
        const double b = static_cast<double>(batches_);
        const double mean_of_means = means_sum_ / b;
        const double var =
            std::max(0.0, (means_sq_sum_ - b * mean_of_means * mean_of_means) / (b - 1.0));
        return std::sqrt(var / b);
    }

  private:
    std::uint64_t batch_len_;
    std::uint64_t batch_n_ = 0;
    double batch_sum_ = 0.0;
    std::uint64_t batches_ = 0;
    double means_sum_ = 0.0;
    double means_sq_sum_ = 0.0;
    std::uint64_t total_n_ = 0;
    double total_sum_ = 0.0;
};

}  // namespace

SimResult simulate(const SimConfig& config) {
    config.validate();

    const int n = config.code.blocklength;
    const int p = config.code.parity_bits();
    const double gamma = config.traffic.gamma;
    const double rho = config.traffic.rho;
    const double rho_r = segment_completion_prob(config.traffic, config.code);

    // Refuse configurations whose queue has no stationary law; the estimates
    // below would chase a diverging process.
    {
        const QbdBlocks blocks = build_blocks(config.channel, config.code, config.traffic);
        const double margin = stability_margin(blocks, config.channel);
        if (!(margin > 0.0)) throw UnstableSystemError(margin);
    }

    std::vector<double> pf(static_cast<std::size_t>(n) + 1);
    for (int e = 0; e <= n; ++e) pf[static_cast<std::size_t>(e)] = failure_probability(p, e);

    const double eps[2] = {config.channel.eps_b, config.channel.eps_g};
    const double flip[2] = {config.channel.alpha, config.channel.beta};
    const double log1m_rho = std::log1p(-rho);

    RngStream rng(config.seed, 0);

    int state = rng.bernoulli(channel_stationary(config.channel)[kGood]) ? kGood : kBad;
    std::uint64_t queue = 0;
    std::deque<std::uint64_t> segments;  // per-packet remaining segments (debug fidelity)

    const std::uint64_t recorded_total = config.blocks_to_simulate - config.warmup_blocks;
    std::vector<std::array<std::uint64_t, 2>> level_counts;
    std::vector<BatchAccumulator> tail_acc(config.tau_list.size(),
                                           BatchAccumulator(recorded_total));
    BatchAccumulator queue_acc(recorded_total);

    std::uint64_t attempts = 0, failures = 0;

    for (std::uint64_t s = 0; s < config.blocks_to_simulate; ++s) {
        if (s >= config.warmup_blocks) {
            if (level_counts.size() <= queue)
                level_counts.resize(static_cast<std::size_t>(queue) + 1, {0, 0});
            ++level_counts[static_cast<std::size_t>(queue)][static_cast<std::size_t>(state)];
            for (std::size_t i = 0; i < config.tau_list.size(); ++i)
                tail_acc[i].add(queue > static_cast<std::uint64_t>(config.tau_list[i]) ? 1.0
                                                                                       : 0.0);
            queue_acc.add(static_cast<double>(queue));
        }

        // N channel uses; each bit is erased per the state it is sent from.
        int erasures = 0;
        for (int i = 0; i < n; ++i) {
            if (rng.uniform() < eps[state]) ++erasures;
            if (rng.uniform() < flip[state]) state = 1 - state;
        }

        // A nonempty queue transmits one codeword per block.
        if (queue > 0) {
            ++attempts;
            bool failed;
            if (config.fidelity == DecodeFidelity::analytical_failure)
                failed = rng.uniform() < pf[static_cast<std::size_t>(erasures)];
            else
                failed = rank_failure_sample(p, erasures, rng);
            if (failed) {
                ++failures;
            } else if (config.materialize_packet_lengths) {
                if (--segments.front() == 0) {
                    segments.pop_front();
                    --queue;
                }
            } else if (rng.uniform() < rho_r) {
                --queue;
            }
        }

        if (rng.uniform() < gamma) {
            ++queue;
            if (config.materialize_packet_lengths) {
                // geometric packet length by inversion, L >= 1
                double u = rng.uniform();
                while (u == 0.0) u = rng.uniform();
                const std::uint64_t bits =
                    1 + static_cast<std::uint64_t>(std::floor(std::log(u) / log1m_rho));
                segments.push_back((bits + static_cast<std::uint64_t>(config.code.info_bits) -
                                    1) /
                                   static_cast<std::uint64_t>(config.code.info_bits));
            }
        }
    }

    SimResult result;
    result.level_masses.resize(level_counts.size());
    for (std::size_t q = 0; q < level_counts.size(); ++q)
        for (int c = 0; c < 2; ++c)
            result.level_masses[q][static_cast<std::size_t>(c)] =
                static_cast<double>(level_counts[q][static_cast<std::size_t>(c)]) /
                static_cast<double>(recorded_total);
    result.tails.reserve(config.tau_list.size());
    for (std::size_t i = 0; i < config.tau_list.size(); ++i)
        result.tails.push_back(
            {config.tau_list[i], tail_acc[i].mean(), tail_acc[i].std_error()});
    result.mean_queue = queue_acc.mean();
    result.mean_queue_std_error = queue_acc.std_error();
    result.decode_attempts = attempts;
    result.decode_failures = failures;
    result.recorded_blocks = recorded_total;
    result.seed = config.seed;
    return result;
}

double ErasureHistogram::frequency(int from, int to, int erasures) const {
    const std::size_t idx =
        (static_cast<std::size_t>(from) * 2 + static_cast<std::size_t>(to)) *
            (static_cast<std::size_t>(blocklength) + 1) +
        static_cast<std::size_t>(erasures);
    return static_cast<double>(counts[idx]) / static_cast<double>(blocks);
}

ErasureHistogram simulate_erasure_histogram(const ChannelParams& channel, int blocklength,
                                            std::uint64_t blocks, std::uint64_t seed) {
    if (blocklength < 1) throw std::invalid_argument("blocklength must be >= 1");
    if (blocks == 0) throw std::invalid_argument("blocks must be positive");

    const double eps[2] = {channel.eps_b, channel.eps_g};
    const double flip[2] = {channel.alpha, channel.beta};

    RngStream rng(seed, 0);
    int state = rng.bernoulli(channel_stationary(channel)[kGood]) ? kGood : kBad;

    ErasureHistogram hist;
    hist.blocklength = blocklength;
    hist.blocks = blocks;
    hist.counts.assign(4 * (static_cast<std::size_t>(blocklength) + 1), 0);

    for (std::uint64_t b = 0; b < blocks; ++b) {
        const int start = state;
        int erasures = 0;
        for (int i = 0; i < blocklength; ++i) {
            if (rng.uniform() < eps[state]) ++erasures;
            if (rng.uniform() < flip[state]) state = 1 - state;
        }
        ++hist.counts[(static_cast<std::size_t>(start) * 2 + static_cast<std::size_t>(state)) *
                          (static_cast<std::size_t>(blocklength) + 1) +
                      static_cast<std::size_t>(erasures)];
    }
    return hist;
}

}  // namespace gequeue
