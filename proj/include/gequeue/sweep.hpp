#ifndef GEQUEUE_SWEEP_HPP
#define GEQUEUE_SWEEP_HPP

#include <vector>

#include "gequeue/qbd_solver.hpp"

namespace gequeue {

struct SweepSpec {
    ChannelParams channel;
    int blocklength;
    TrafficParams traffic;
    int k_min;
    int k_max;
    std::vector<int> tau_list;
    SolverOptions solver;

    void validate() const;
};

struct CodeRateRow {
    int info_bits;
    bool stable;
    double margin;
    std::vector<double> tail;  // aligned with tau_list; empty when unstable
    double decay;              // log rho(R); NaN when unstable
    double mean_queue;         // NaN when unstable
    double throughput;         // infinite-backlog bits per block, defined regardless
    std::size_t iterations;
    double residual;
};

struct CodeRateSweepResult {
    std::vector<int> tau_list;
    std::vector<CodeRateRow> rows;
    std::vector<int> argmin_tail;          // per tau; -1 when no stable row
    std::vector<bool> argmin_tail_tied;    // true when several K tie within 1e-12
    int argmax_decay;                      // K with largest |decay|; -1 when none
    std::vector<int> argmax_throughput;    // all K tied within 1e-12 of the max
};

// One row per K in [k_min, k_max]; unstable K are recorded with their margin
// rather than failing the sweep. The erasure joint is computed once and
// shared across K.
CodeRateSweepResult sweep_code_rate(const SweepSpec& spec);

// Expected information bits delivered per block when a codeword is always
// available, block-start state drawn from the stationary law:
//   K * sum_{c,d,e} nu_c J(c,d,e) (1 - P_f(N-K, e))
double infinite_backlog_throughput(const ChannelParams& channel, const CodeConfig& code);
double infinite_backlog_throughput(const ChannelParams& channel, const CodeConfig& code,
                                   const ErasureJoint& joint);

struct SurfaceSpec {
    ChannelParams channel;
    int blocklength;
    double gamma;
    int k_min;
    int k_max;
    // Arrival axis in expected arriving bits per block, gamma/rho; each grid
    // value a is realized by rho = gamma/a at fixed gamma.
    std::vector<double> arrival_bits_per_block;
    SolverOptions solver;

    void validate() const;
};

struct SurfacePoint {
    int info_bits;
    double arrival_bits_per_block;
    double gamma;
    double rho;
    bool stable;
    double margin;
    double tail_decay;  // -log rho(R); NaN when unstable
};

std::vector<SurfacePoint> decay_surface(const SurfaceSpec& spec);

struct RateReport {
    double slot_seconds;
    double arrival_bits_per_sec;           // gamma * mean packet length / slot
    double ergodic_capacity_bits_per_sec;  // (1 - avg erasure) * N / slot
    double shannon_limit_bits_per_block;   // (1 - avg erasure) * N
    double avg_erasure;
};

RateReport rate_conversions(const ChannelParams& channel, const CodeConfig& code,
                            const TrafficParams& traffic, double slot_seconds);

}  // namespace gequeue

#endif
