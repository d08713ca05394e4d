#pragma once

#include <cstdint>

namespace privcd {

// The common privacy scale both mechanism families are tuned on: the
// probability that a Bayes attacker with a uniform prior guesses the true
// value from the report. For k-RR and the resample-mode bounded geometric
// the most likely report is the true value itself, so the level equals the
// mechanism's keep/mode probability.
struct PrivacyLevel {
    double p_attack = 0.0;
};

// Level of k-RR with budget eps: e^eps / (k - 1 + e^eps).
double privacy_of_krr(double epsilon, std::uint64_t k);

// Inverse of privacy_of_krr: eps = ln(level * (k-1) / (1 - level)).
// Requires 1/k < level < 1.
double epsilon_for_krr(double level, std::uint64_t k);

// Level of the bounded geometric with mode probability p_max: the identity.
double privacy_of_geo(double p_max);

}  // namespace privcd
