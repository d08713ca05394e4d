#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "privcd/domain.hpp"
#include "privcd/rng.hpp"

namespace privcd {

enum class NormKind { manhattan, euclidean, chebyshev };

enum class BoundingMode { clip, uniform_replace, resample };

std::string to_string(NormKind norm);
std::string to_string(BoundingMode mode);
NormKind norm_from_string(const std::string& s);
BoundingMode mode_from_string(const std::string& s);

// p-norm distance between two grid points.
double grid_distance(NormKind norm, const Record& a, const Record& b);

// Solves sum_y exp(-eps * d(x, y)) = 1 / p_max over the box by monotone
// bisection (the sum runs from K at eps=0 down to 1 as eps->infinity, so the
// root is unique); the bracket doubles upward from eps=1 until the sum drops
// below the target, then bisects to 1e-12 absolute tolerance on the sum.
// For the Manhattan norm the sum factorizes per dimension and the solve
// costs O(sum k_i) per step at any domain size; other norms enumerate the
// box, capped at K <= 10^7. Returns +infinity for p_max == 1.
double solve_eps_x(const Domain& domain, const Record& x, double p_max, NormKind norm);

inline constexpr std::uint64_t kGeoEnumerationCap = 10'000'000ULL;

// Bounded geometric mechanism with fixed mode probability:
//   P[Y=y | X=x] = p_max * exp(-eps_x * d(x, y))
// with eps_x solved per input so every row sums to one. The resample
// bounding (restrict the unbounded law to the box and renormalize) is
// implemented directly, which makes probability queries exact and sampling
// loop-free; it is distributionally identical to literal rejection
// resampling. clip and uniform_replace transform the unbounded 1D law
// instead and are provided as comparison baselines (1D domains only).
class BoundedGeometric {
public:
    BoundedGeometric(Domain box, double p_max, NormKind norm,
                     BoundingMode mode = BoundingMode::resample);

    // Fixed-rate variant: a single decay rate for every input, with the
    // mode probability 1/S_x(eps) varying per input instead.
    static BoundedGeometric with_fixed_rate(Domain box, double epsilon, NormKind norm,
                                            BoundingMode mode = BoundingMode::resample);

    const Domain& box() const { return box_; }
    double p_max() const { return p_max_; }
    NormKind norm() const { return norm_; }
    BoundingMode mode() const { return mode_; }
    bool fixed_rate() const { return fixed_rate_; }

    // eps_x for this input (cached). +infinity when p_max == 1.
    double rate_for(const Record& x) const;

    // Exact conditional probability P[Y=y | X=x].
    double prob(const Record& x, const Record& y) const;

    // One draw distributed per prob(x, .).
    Record sample(const Record& x, Rng& rng) const;

private:
    struct InputLaw {
        double eps = 0.0;
        double mode_prob = 0.0;  // P(x|x)
        // Non-factorized laws: probabilities indexed by flat y.
        std::vector<double> probs;
        // Factorized (manhattan/1D resample) laws: per-dimension weights.
        std::vector<std::vector<double>> dim_weights;
        std::vector<double> dim_totals;
    };

    BoundedGeometric(Domain box, NormKind norm, BoundingMode mode);

    const InputLaw& law_for(const Record& x) const;
    InputLaw build_law(const Record& x) const;
    bool factorized() const;
    std::vector<double> restricted_1d_weights(std::int64_t k, std::int64_t x, double eps) const;

    Domain box_;
    double p_max_ = 0.0;
    double fixed_eps_ = 0.0;
    bool fixed_rate_ = false;
    NormKind norm_;
    BoundingMode mode_;
    std::uint64_t combined_ = 0;

    // Solved laws, shared between copies (copies are cheap and see the same
    // cache; the laws themselves are immutable once built).
    struct LawCache {
        std::mutex mutex;
        std::map<Record, std::shared_ptr<const InputLaw>> laws;
    };
    std::shared_ptr<LawCache> cache_ = std::make_shared<LawCache>();
};

}  // namespace privcd
