#ifndef GEQUEUE_TESTS_ORACLES_HPP
#define GEQUEUE_TESTS_ORACLES_HPP

#include <vector>

#include "gequeue/channel.hpp"
#include "gequeue/qbd_model.hpp"

namespace gequeue::test {

// Exhaustive-path oracle for the erasure joint: enumerates every interior
// state sequence and convolves the per-step Bernoulli erasures. O(2^N),
// independent of the production dynamic program. Usable for N <= ~14.
class BruteForceJoint {
  public:
    BruteForceJoint(const ChannelParams& params, int blocklength);

    double prob(int from, int to, int erasures) const {
        return table_[(static_cast<std::size_t>(from) * 2 + static_cast<std::size_t>(to)) *
                          (static_cast<std::size_t>(blocklength_) + 1) +
                      static_cast<std::size_t>(erasures)];
    }

  private:
    int blocklength_;
    std::vector<double> table_;
};

// Stationary level distribution of the chain truncated at level q_max, with
// the top level's upward transitions folded into staying there. Solved as a
// dense linear system, independent of the matrix-geometric machinery.
std::vector<Vec2> truncated_chain_levels(const QbdBlocks& blocks, int q_max);

}  // namespace gequeue::test

#endif
