#include "birds/rng.hpp"

#include <cmath>
#include <limits>

#include "birds/common.hpp"

namespace birds {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index) {
    std::uint64_t state = seed;
    std::uint64_t a = splitmix64(state);
    state = a ^ static_cast<std::uint64_t>(stream);
    std::uint64_t b = splitmix64(state);
    state = b ^ index;
    return splitmix64(state);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) {
        throw Error(ErrorKind::InvalidParameter, "empty range");
    }
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return x % n;
}

std::uint64_t Rng::geometric(double p) {
    if (!(p > 0.0) || p > 1.0) {
        throw Error(ErrorKind::InvalidParameter, "geometric probability out of range");
    }
    if (p == 1.0) {
        return 1;
    }
    // Inverse CDF on u in (0, 1].
    const double u = 1.0 - uniform();
    const double trials = std::ceil(std::log(u) / std::log1p(-p));
    return trials < 1.0 ? 1 : static_cast<std::uint64_t>(trials);
}

}  // namespace birds
