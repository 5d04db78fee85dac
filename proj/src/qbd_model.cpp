#include "gequeue/qbd_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace gequeue {

TrafficParams::TrafficParams(double gamma, double rho) : gamma(gamma), rho(rho) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::invalid_argument("gamma must lie in [0, 1], got " + std::to_string(gamma));
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("rho must lie in (0, 1), got " + std::to_string(rho));
}

double segment_completion_prob(const TrafficParams& traffic, const CodeConfig& code) {
    return 1.0 - std::pow(1.0 - traffic.rho, code.info_bits);
}

namespace {

void check_blocks_matrix(const Mat2& m, const char* name) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!(m(i, j) >= 0.0 && m(i, j) <= 1.0))
                throw std::invalid_argument(std::string("QbdBlocks: ") + name +
                                            " has an entry outside [0, 1]");
}

void check_row_stochastic(const Mat2& m, const char* what) {
    const Vec2 rs = m.row_sums();
    for (int i = 0; i < 2; ++i)
        if (std::abs(rs[i] - 1.0) > 1e-12)
            throw std::invalid_argument(std::string("QbdBlocks: ") + what +
                                        " row sums must equal 1 within 1e-12");
}

}  // namespace

QbdBlocks::QbdBlocks(const Mat2& a0, const Mat2& a1, const Mat2& a2, const Mat2& c0,
                     const Mat2& c1)
    : a0(a0), a1(a1), a2(a2), c0(c0), c1(c1) {
    check_blocks_matrix(a0, "A0");
    check_blocks_matrix(a1, "A1");
    check_blocks_matrix(a2, "A2");
    check_blocks_matrix(c0, "C0");
    check_blocks_matrix(c1, "C1");
    check_row_stochastic(a0 + a1 + a2, "A0 + A1 + A2");
    check_row_stochastic(c0 + c1, "C0 + C1");
}

QbdBlocks build_blocks(const ChannelParams& channel, const CodeConfig& code,
                       const TrafficParams& traffic) {
    return build_blocks(channel, code, traffic, ErasureJoint(channel, code.blocklength));
}

QbdBlocks build_blocks(const ChannelParams& channel, const CodeConfig& code,
                       const TrafficParams& traffic, const ErasureJoint& joint) {
    if (joint.blocklength() != code.blocklength)
        throw std::invalid_argument("erasure joint blocklength does not match the code");

    const int n = code.blocklength;
    const int p = code.parity_bits();
    const double gamma = traffic.gamma;
    const double rho_r = segment_completion_prob(traffic, code);

    // Per erasure count: the queue drops only when decoding succeeds and the
    // segment completes the head packet.
    std::vector<double> depart(static_cast<std::size_t>(n) + 1);
    for (int e = 0; e <= n; ++e)
        depart[static_cast<std::size_t>(e)] = (1.0 - failure_probability(p, e)) * rho_r;

    Mat2 a0, a1, a2;
    for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
            double up = 0.0, stay = 0.0, down = 0.0;
            for (int e = 0; e <= n; ++e) {
                const double j = joint.prob(c, d, e);
                const double dep = depart[static_cast<std::size_t>(e)];
                up += gamma * (1.0 - dep) * j;
                stay += (gamma * dep + (1.0 - gamma) * (1.0 - dep)) * j;
                down += (1.0 - gamma) * dep * j;
            }
            a0(c, d) = up;
            a1(c, d) = stay;
            a2(c, d) = down;
        }

    // From an empty queue the only event is an arrival; erasures do not matter.
    const Mat2 pn = matrix_power(channel_transition_matrix(channel),
                                 static_cast<unsigned long>(n));
    const Mat2 c0 = pn * gamma;
    const Mat2 c1 = pn * (1.0 - gamma);
    return QbdBlocks(a0, a1, a2, c0, c1);
}

double stability_margin(const QbdBlocks& blocks, const ChannelParams& channel) {
    const Vec2 nu = channel_stationary(channel);
    return dot(nu, blocks.a2.row_sums()) - dot(nu, blocks.a0.row_sums());
}

}  // namespace gequeue
