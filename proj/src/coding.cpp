#include "gequeue/coding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gequeue {

CodeConfig::CodeConfig(int blocklength, int info_bits)
    : blocklength(blocklength), info_bits(info_bits) {
    if (blocklength < 1) throw std::invalid_argument("blocklength must be >= 1");
    if (info_bits < 1 || info_bits > blocklength)
        throw std::invalid_argument("info_bits must satisfy 1 <= K <= N");
}

double failure_probability(int parity_bits, int erasures) {
    if (parity_bits < 0 || erasures < 0)
        throw std::invalid_argument("parity_bits and erasures must be nonnegative");
    if (erasures == 0) return 0.0;
    if (erasures > parity_bits) return 1.0;  // the i = p factor is zero

    double success = 1.0;
    for (int i = 0; i < erasures; ++i) {
        // 2^{i-p} is an exact dyadic; below 2^-60 the factor is 1 to machine
        // precision and is skipped.
        if (parity_bits - i > 60) continue;
        success *= 1.0 - std::ldexp(1.0, i - parity_bits);
    }
    return std::clamp(1.0 - success, 0.0, 1.0);
}

double avg_failure_probability(const CodeConfig& code, const ErasureJoint& joint,
                               const Vec2& initial_state_dist) {
    if (joint.blocklength() != code.blocklength)
        throw std::invalid_argument("erasure joint blocklength " +
                                    std::to_string(joint.blocklength()) +
                                    " does not match code blocklength " +
                                    std::to_string(code.blocklength));
    const int n = code.blocklength;
    const int p = code.parity_bits();
    double acc = 0.0;
    for (int e = 0; e <= n; ++e) {
        const double pf = failure_probability(p, e);
        for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) acc += initial_state_dist[c] * joint.prob(c, d, e) * pf;
    }
    return acc;
}

bool rank_failure_sample(int parity_bits, int erasures, RngStream& rng) {
    if (parity_bits < 0 || erasures < 0)
        throw std::invalid_argument("parity_bits and erasures must be nonnegative");
    if (erasures == 0) return false;
    if (erasures > parity_bits) return true;  // rank is at most p < e
    if (erasures > 64 || parity_bits > 64)
        throw std::invalid_argument(
            "rank sampling supports parity_bits, erasures <= 64; use failure_probability");

    const std::uint64_t mask =
        parity_bits == 64 ? ~0ull : ((1ull << parity_bits) - 1ull);

    // Row-reduce e random p-bit rows; a row cancelling to zero means the
    // rows seen so far are dependent, i.e. rank < e.
    std::uint64_t pivot[64] = {};
    for (int r = 0; r < erasures; ++r) {
        std::uint64_t row = rng.next_u64() & mask;
        while (row != 0) {
            const int lead = 63 - std::countl_zero(row);
            if (pivot[lead] == 0) {
                pivot[lead] = row;
                break;
            }
            row ^= pivot[lead];
        }
        if (row == 0) return true;
    }
    return false;
}

}  // namespace gequeue
