#pragma once

// Portable seeded randomness. mt19937_64 output is fixed by the standard;
// the distributions below are hand-rolled so draws are identical on every
// standard library. Each subsystem gets its own stream derived through
// SplitMix64 from (seed, stream, index).

#include <cstdint>
#include <random>

namespace birds {

enum class Stream : std::uint64_t {
    Fleet = 1,
    Waypoints = 2,
    Users = 3,
    Jobs = 4,
    Consensus = 5,
};

std::uint64_t splitmix64(std::uint64_t& state);

std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index = 0);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0)
        : engine_(derive_seed(seed, stream, index)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n) by rejection; n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Number of Bernoulli(p) trials up to and including the first success.
    std::uint64_t geometric(double p);

private:
    std::mt19937_64 engine_;
};

}  // namespace birds
