#ifndef GEQUEUE_SIMULATOR_HPP
#define GEQUEUE_SIMULATOR_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "gequeue/qbd_model.hpp"

namespace gequeue {

// How decoding outcomes are drawn: from the closed-form failure probability,
// or by sampling the rank of an actual random parity submatrix (slower, but
// shares nothing with the closed form).
enum class DecodeFidelity { analytical_failure, matrix_sampling };

struct SimConfig {
    ChannelParams channel;
    CodeConfig code;
    TrafficParams traffic;
    std::uint64_t blocks_to_simulate;
    std::uint64_t warmup_blocks;
    std::uint64_t seed;
    DecodeFidelity fidelity = DecodeFidelity::analytical_failure;
    std::vector<int> tau_list = {5, 10, 15, 20, 25};
    // Debug fidelity knob: track explicit geometric packet lengths and
    // segment countdowns instead of the memoryless completion draw.
    bool materialize_packet_lengths = false;

    void validate() const;
};

struct TailEstimate {
    int tau;
    double frequency;
    double std_error;  // batch-means estimate, robust to block-to-block correlation
};

struct SimResult {
    // frequency of (Q = q, channel state) at block onsets, after warmup
    std::vector<std::array<double, 2>> level_masses;
    std::vector<TailEstimate> tails;
    double mean_queue;
    double mean_queue_std_error;
    std::uint64_t decode_attempts;
    std::uint64_t decode_failures;
    std::uint64_t recorded_blocks;
    std::uint64_t seed;

    double state_b_frequency() const;
    double tail_frequency(int tau) const;  // from level_masses, any tau
};

// Monte Carlo realization of the exact queue/channel chain. Per block: the
// channel advances N uses (bit erasures drawn one at a time), a nonempty
// queue attempts one decode and on success completes the head packet with
// the segment-completion probability, and an arrival occurs independently.
// Queue length is recorded at block onsets. Refuses unstable systems.
SimResult simulate(const SimConfig& config);

struct ErasureHistogram {
    int blocklength;
    std::uint64_t blocks;
    // counts[(c*2+d)*(N+1)+e], initial state c, final state d, e erasures
    std::vector<std::uint64_t> counts;

    double frequency(int from, int to, int erasures) const;
};

// Empirical counterpart of ErasureJoint: long run of consecutive blocks with
// per-bit erasure draws, initial state drawn from the stationary law.
ErasureHistogram simulate_erasure_histogram(const ChannelParams& channel, int blocklength,
                                            std::uint64_t blocks, std::uint64_t seed);

}  // namespace gequeue

#endif
