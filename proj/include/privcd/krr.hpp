#pragma once

#include <cstdint>
#include <vector>

#include "privcd/domain.hpp"
#include "privcd/rng.hpp"

namespace privcd {

// k-ary randomized response: keep the true value with probability
// p = e^eps / (k - 1 + e^eps), otherwise report a uniform other value.
// q = (1 - p) / (k - 1) is the per-alternative swap probability, so
// p + (k-1) q = 1 and p / q = e^eps.
struct KrrParams {
    std::uint64_t k = 0;
    double epsilon = 0.0;
    double p = 0.0;
    double q = 0.0;

    static KrrParams from_epsilon(std::uint64_t k, double epsilon);
};

std::uint64_t krr_sample(std::uint64_t v, const KrrParams& params, Rng& rng);

// Budget split across attributes, proportional to cardinality:
// eps_i = eps * k_i / (k_1 + ... + k_d).
std::vector<double> krr_cwise_split(double epsilon, const Domain& domain);

// Treats the Cartesian product of all attributes as one symbol. Sampling
// needs only k, not a table, but k is still capped at 10^12.
KrrParams krr_comb_params(const Domain& domain, double epsilon);

inline constexpr std::uint64_t kKrrCombCap = 1'000'000'000'000ULL;

}  // namespace privcd
