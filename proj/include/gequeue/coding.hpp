#ifndef GEQUEUE_CODING_HPP
#define GEQUEUE_CODING_HPP

#include "gequeue/channel.hpp"
#include "gequeue/rng.hpp"

namespace gequeue {

// Random binary linear code: K information bits per length-N codeword.
struct CodeConfig {
    int blocklength;  // N
    int info_bits;    // K

    CodeConfig(int blocklength, int info_bits);

    int parity_bits() const { return blocklength - info_bits; }
    double rate() const { return static_cast<double>(info_bits) / blocklength; }
};

// Probability that maximum-likelihood decoding fails given e erased positions
// and p parity bits:
//
//   P_f(p, e) = 1 - prod_{i=0}^{e-1} (1 - 2^{i-p})
//
// Equals 1 exactly whenever e > p. Nondecreasing in e, nonincreasing in p.
double failure_probability(int parity_bits, int erasures);

// E[P_f(N-K, E)] with E distributed per the erasure joint and the initial
// channel state drawn from initial_state_dist.
double avg_failure_probability(const CodeConfig& code, const ErasureJoint& joint,
                               const Vec2& initial_state_dist);

// Draws a uniformly random e x p matrix over GF(2) and reports whether its
// rank is below e, i.e. whether decoding fails. Empirical frequency over many
// draws converges to failure_probability(p, e). Requires p, e <= 64 so rows
// fit in machine words; larger inputs must use the closed form instead.
bool rank_failure_sample(int parity_bits, int erasures, RngStream& rng);

}  // namespace gequeue

#endif
