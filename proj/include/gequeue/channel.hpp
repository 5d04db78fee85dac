#ifndef GEQUEUE_CHANNEL_HPP
#define GEQUEUE_CHANNEL_HPP

#include <vector>

#include "gequeue/mat2.hpp"

namespace gequeue {

// Phase indices used everywhere: bad first, good second.
inline constexpr int kBad = 0;
inline constexpr int kGood = 1;

// Two-state Markov erasure channel. In state b every bit is erased with
// probability eps_b, in state g with eps_g; per channel use the state flips
// b->g with probability alpha and g->b with probability beta.
struct ChannelParams {
    double alpha;
    double beta;
    double eps_b;
    double eps_g;

    ChannelParams(double alpha, double beta, double eps_b, double eps_g);
};

// [[1-alpha, alpha], [beta, 1-beta]] under (b, g) ordering.
Mat2 channel_transition_matrix(const ChannelParams& params);

// [beta/(alpha+beta), alpha/(alpha+beta)]
Vec2 channel_stationary(const ChannelParams& params);

// Second eigenvalue of the transition matrix, 1 - alpha - beta. Governs the
// exponential rate at which the chain forgets its initial state.
double channel_memory(const ChannelParams& params);

// Stationary per-bit erasure probability.
double average_erasure_probability(const ChannelParams& params);

// Joint law of the erasure count and the terminal channel state over a
// blocklength-N interval, conditioned on the initial state:
//
//   prob(c, d, e) = Pr(E = e, state after N uses = d | initial state = c)
//
// The bit sent while leaving state c is erased with probability eps_c.
// Computed as a dynamic program over (step, state, erasure count).
class ErasureJoint {
  public:
    ErasureJoint(const ChannelParams& params, int blocklength);

    int blocklength() const { return blocklength_; }

    double prob(int from, int to, int erasures) const {
        return table_[(static_cast<std::size_t>(from) * 2 + static_cast<std::size_t>(to)) *
                          (static_cast<std::size_t>(blocklength_) + 1) +
                      static_cast<std::size_t>(erasures)];
    }

    // Marginal over the erasure count; equals the N-step transition matrix.
    Mat2 state_marginal() const;

  private:
    int blocklength_;
    std::vector<double> table_;
};

}  // namespace gequeue

#endif
