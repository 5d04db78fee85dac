#ifndef GEQUEUE_QBD_MODEL_HPP
#define GEQUEUE_QBD_MODEL_HPP

#include "gequeue/channel.hpp"
#include "gequeue/coding.hpp"

namespace gequeue {

// Arrival side: one packet arrives per codeword slot with probability gamma;
// packet lengths are geometric with parameter rho (mean 1/rho bits).
struct TrafficParams {
    double gamma;
    double rho;

    TrafficParams(double gamma, double rho);
};

// Probability that a successfully decoded codeword carries the last segment
// of the head packet: 1 - (1-rho)^K. The segment count of a packet is
// geometric with this parameter.
double segment_completion_prob(const TrafficParams& traffic, const CodeConfig& code);

// The five 2x2 blocks of the level-independent part of the queue/channel
// transition matrix. a0/a1/a2 move the queue up/keep/down from a nonempty
// level; c0/c1 are the empty-queue counterparts.
struct QbdBlocks {
    Mat2 a0;
    Mat2 a1;
    Mat2 a2;
    Mat2 c0;
    Mat2 c1;

    QbdBlocks(const Mat2& a0, const Mat2& a1, const Mat2& a2, const Mat2& c0, const Mat2& c1);
};

QbdBlocks build_blocks(const ChannelParams& channel, const CodeConfig& code,
                       const TrafficParams& traffic);

// Same, reusing a precomputed erasure joint (it does not depend on K, so
// code-rate sweeps share one).
QbdBlocks build_blocks(const ChannelParams& channel, const CodeConfig& code,
                       const TrafficParams& traffic, const ErasureJoint& joint);

// Mean downward drift minus mean upward drift under the stationary channel
// law; the queue is positive recurrent iff this is positive.
double stability_margin(const QbdBlocks& blocks, const ChannelParams& channel);

}  // namespace gequeue

#endif
