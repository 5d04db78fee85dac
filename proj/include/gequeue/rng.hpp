#ifndef GEQUEUE_RNG_HPP
#define GEQUEUE_RNG_HPP

#include <cstdint>
#include <random>

namespace gequeue {

// Reproducible random stream. Distinct (seed, stream) pairs yield independent
// sequences, so parallel replications can derive their streams from one seed.
// Doubles are produced from raw 64-bit draws directly; the sequence is
// therefore identical across standard library implementations.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : gen_(mix(seed, stream)) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform on [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        // splitmix64 over the pair, so nearby seeds map to distant states
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
};

}  // namespace gequeue

#endif
