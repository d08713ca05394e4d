#include "privcd/krr.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace privcd {

KrrParams KrrParams::from_epsilon(std::uint64_t k, double epsilon) {
    if (k < 2) {
        throw std::invalid_argument("KrrParams: k must be >= 2");
    }
    if (epsilon < 0.0 || !std::isfinite(epsilon)) {
        throw std::invalid_argument("KrrParams: epsilon must be finite and >= 0");
    }
    KrrParams params;
    params.k = k;
    params.epsilon = epsilon;
    double others = static_cast<double>(k - 1);
    // exp(eps) can overflow for large budgets; the keep probability then
    // saturates at 1.
    double e = std::exp(epsilon);
    if (std::isinf(e)) {
        params.p = 1.0;
        params.q = 0.0;
    } else {
        params.p = e / (others + e);
        params.q = (1.0 - params.p) / others;
    }
    return params;
}

std::uint64_t krr_sample(std::uint64_t v, const KrrParams& params, Rng& rng) {
    if (v >= params.k) {
        throw std::invalid_argument("krr_sample: value out of range");
    }
    if (rng.next_double() < params.p) {
        return v;
    }
    std::uint64_t other = rng.next_below(params.k - 1);
    return other >= v ? other + 1 : other;
}

std::vector<double> krr_cwise_split(double epsilon, const Domain& domain) {
    if (epsilon <= 0.0) {
        throw std::invalid_argument("krr_cwise_split: epsilon must be positive");
    }
    double total = static_cast<double>(
        std::accumulate(domain.dims.begin(), domain.dims.end(), std::int64_t{0}));
    std::vector<double> split;
    split.reserve(domain.arity());
    for (std::int64_t k : domain.dims) {
        split.push_back(epsilon * static_cast<double>(k) / total);
    }
    return split;
}

KrrParams krr_comb_params(const Domain& domain, double epsilon) {
    auto k = domain.combined_size();
    if (!k.has_value() || *k > kKrrCombCap) {
        throw std::invalid_argument("krr_comb_params: combined domain too large");
    }
    return KrrParams::from_epsilon(*k, epsilon);
}

}  // namespace privcd
