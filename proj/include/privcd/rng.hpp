#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace privcd {

// Identity of a deterministic random stream: a master seed plus the path of
// stream labels that produced it. Two seeds with different (master, path)
// yield statistically independent streams.
//
// Derivation scheme (fixed for reproducibility): the stream key is a
// splitmix64 hash chain, key = mix(...mix(mix(master, path[0]), path[1])...),
// and the engine is std::mt19937_64 seeded with that key. All value draws go
// through the helpers below; std::uniform_*_distribution is avoided because
// its output is not pinned down by the standard.
struct RngSeed {
    std::uint64_t master = 0;
    std::vector<std::uint64_t> path;

    friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

// Child stream for `label`. Same inputs always give the same child; distinct
// labels or a different derivation order give distinct streams.
RngSeed derive_stream(const RngSeed& seed, std::uint64_t label);

// The 64-bit key the engine is seeded with; exposed for collision tests.
std::uint64_t stream_key(const RngSeed& seed);

class Rng {
public:
    explicit Rng(const RngSeed& seed);

    std::uint64_t next_u64();

    // Uniform on [0,1) with 53 random mantissa bits.
    double next_double();

    // Uniform on [0, bound), bound >= 1, by masked rejection.
    std::uint64_t next_below(std::uint64_t bound);

    // Standard normal via Box-Muller on explicit uniforms.
    double next_gaussian();

private:
    std::mt19937_64 engine_;
    double spare_gaussian_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace privcd
