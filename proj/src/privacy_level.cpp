#include "privcd/privacy_level.hpp"

#include <cmath>
#include <stdexcept>

namespace privcd {

double privacy_of_krr(double epsilon, std::uint64_t k) {
    if (k < 2) {
        throw std::invalid_argument("privacy_of_krr: k must be >= 2");
    }
    if (epsilon < 0.0) {
        throw std::invalid_argument("privacy_of_krr: epsilon must be >= 0");
    }
    double e = std::exp(epsilon);
    if (std::isinf(e)) return 1.0;
    return e / (static_cast<double>(k - 1) + e);
}

double epsilon_for_krr(double level, std::uint64_t k) {
    if (k < 2) {
        throw std::invalid_argument("epsilon_for_krr: k must be >= 2");
    }
    if (level >= 1.0) {
        throw std::invalid_argument("epsilon_for_krr: level must be < 1");
    }
    // level == 1/k is the uniform channel (eps = 0); only strictly below the
    // floor is unreachable.
    if (level < 1.0 / static_cast<double>(k)) {
        throw std::invalid_argument("epsilon_for_krr: level below uniform-guessing floor 1/k");
    }
    return std::max(0.0, std::log(level * static_cast<double>(k - 1) / (1.0 - level)));
}

double privacy_of_geo(double p_max) {
    if (p_max <= 0.0 || p_max > 1.0) {
        throw std::invalid_argument("privacy_of_geo: p_max must be in (0,1]");
    }
    return p_max;
}

}  // namespace privcd
