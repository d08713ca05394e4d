#include "privcd/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace privcd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Order-sensitive combine so that path (1,2) and path (2,1) differ.
std::uint64_t mix(std::uint64_t key, std::uint64_t label) {
    return splitmix64(key ^ (splitmix64(label) + 0x9E3779B97F4A7C15ULL + (key << 6) + (key >> 2)));
}

}  // namespace

RngSeed derive_stream(const RngSeed& seed, std::uint64_t label) {
    RngSeed child = seed;
    child.path.push_back(label);
    return child;
}

std::uint64_t stream_key(const RngSeed& seed) {
    std::uint64_t key = splitmix64(seed.master);
    for (std::uint64_t label : seed.path) {
        key = mix(key, label);
    }
    return key;
}

Rng::Rng(const RngSeed& seed) : engine_(stream_key(seed)) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("next_below: bound must be positive");
    }
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t draw;
    do {
        draw = engine_() & mask;
    } while (draw >= bound);
    return draw;
}

double Rng::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_gaussian_;
    }
    double u1;
    do {
        u1 = next_double();
    } while (u1 <= 0.0);
    double u2 = next_double();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * M_PI * u2;
    spare_gaussian_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

}  // namespace privcd
