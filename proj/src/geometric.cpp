#include "privcd/geometric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace privcd {

namespace {

constexpr double kSumTolerance = 1e-12;
constexpr int kMaxBisectionIterations = 500;

// Compensated (Neumaier) accumulation; keeps the solver's sum honest when
// the box has many points.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double value) {
        double t = sum + value;
        if (std::fabs(sum) >= std::fabs(value)) {
            carry += (sum - t) + value;
        } else {
            carry += (value - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + carry; }
};

// Distance histogram for one input over the enumerated box: pairs of
// (distance, multiplicity). Collapsing by distance makes each bisection
// step O(#distinct distances) instead of O(K).
std::vector<std::pair<double, double>> distance_histogram(const Domain& domain,
                                                          const Record& x, NormKind norm) {
    std::unordered_map<std::int64_t, double> counts;
    Record y(domain.arity(), 0);
    bool done = false;
    while (!done) {
        // Integer distance key: sum of squared deltas for Euclidean, the
        // distance itself for Manhattan/Chebyshev.
        std::int64_t key = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            std::int64_t delta = std::llabs(y[i] - x[i]);
            switch (norm) {
                case NormKind::manhattan: key += delta; break;
                case NormKind::euclidean: key += delta * delta; break;
                case NormKind::chebyshev: key = std::max(key, delta); break;
            }
        }
        counts[key] += 1.0;

        done = true;
        for (std::size_t i = y.size(); i-- > 0;) {
            if (++y[i] < domain.dims[i]) {
                done = false;
                break;
            }
            y[i] = 0;
        }
    }
    std::vector<std::pair<double, double>> histogram;
    histogram.reserve(counts.size());
    for (const auto& [k, c] : counts) {
        double dist = (norm == NormKind::euclidean) ? std::sqrt(static_cast<double>(k))
                                                    : static_cast<double>(k);
        histogram.emplace_back(dist, c);
    }
    return histogram;
}

double histogram_sum(const std::vector<std::pair<double, double>>& histogram, double eps) {
    CompensatedSum acc;
    for (const auto& [dist, count] : histogram) {
        acc.add(count * std::exp(-eps * dist));
    }
    return acc.value();
}

double per_dim_sum(std::int64_t k, std::int64_t x, double eps) {
    CompensatedSum acc;
    for (std::int64_t u = 0; u < k; ++u) {
        acc.add(std::exp(-eps * static_cast<double>(std::llabs(u - x))));
    }
    return acc.value();
}

double factorized_sum(const Domain& domain, const Record& x, double eps) {
    double product = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        product *= per_dim_sum(domain.dims[i], x[i], eps);
    }
    return product;
}

void check_point(const Domain& domain, const Record& x, const char* who) {
    if (x.size() != domain.arity()) {
        throw std::invalid_argument(std::string(who) + ": point arity mismatch");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0 || x[i] >= domain.dims[i]) {
            throw std::invalid_argument(std::string(who) + ": point outside the domain box");
        }
    }
}

// Unique root of sum_fn(eps) = target, where sum_fn is strictly decreasing
// from K (eps=0) to 1 (eps->inf).
template <typename SumFn>
double bisect_rate(SumFn&& sum_fn, double target, double domain_size) {
    if (target >= domain_size) return 0.0;
    double lo = 0.0;
    double hi = 1.0;
    while (sum_fn(hi) > target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9) return hi;  // effectively deterministic already
    }
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < kMaxBisectionIterations; ++i) {
        mid = 0.5 * (lo + hi);
        double s = sum_fn(mid);
        if (std::fabs(s - target) <= kSumTolerance) break;
        if (s > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return mid;
}

// First index whose cumulative weight exceeds the scaled draw; the final
// index absorbs any floating residue.
std::size_t invert_cdf(const std::vector<double>& weights, double scaled_draw) {
    double cumulative = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        cumulative += weights[i];
        if (scaled_draw < cumulative) return i;
    }
    return weights.size() - 1;
}

}  // namespace

std::string to_string(NormKind norm) {
    switch (norm) {
        case NormKind::manhattan: return "manhattan";
        case NormKind::euclidean: return "euclidean";
        case NormKind::chebyshev: return "chebyshev";
    }
    return "?";
}

std::string to_string(BoundingMode mode) {
    switch (mode) {
        case BoundingMode::clip: return "clip";
        case BoundingMode::uniform_replace: return "uniform_replace";
        case BoundingMode::resample: return "resample";
    }
    return "?";
}

NormKind norm_from_string(const std::string& s) {
    if (s == "manhattan" || s == "l1") return NormKind::manhattan;
    if (s == "euclidean" || s == "l2") return NormKind::euclidean;
    if (s == "chebyshev" || s == "linf") return NormKind::chebyshev;
    throw std::invalid_argument("unknown norm: " + s);
}

BoundingMode mode_from_string(const std::string& s) {
    if (s == "clip") return BoundingMode::clip;
    if (s == "uniform_replace") return BoundingMode::uniform_replace;
    if (s == "resample") return BoundingMode::resample;
    throw std::invalid_argument("unknown bounding mode: " + s);
}

double grid_distance(NormKind norm, const Record& a, const Record& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("grid_distance: arity mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double delta = std::fabs(static_cast<double>(a[i] - b[i]));
        switch (norm) {
            case NormKind::manhattan: acc += delta; break;
            case NormKind::euclidean: acc += delta * delta; break;
            case NormKind::chebyshev: acc = std::max(acc, delta); break;
        }
    }
    return norm == NormKind::euclidean ? std::sqrt(acc) : acc;
}

double solve_eps_x(const Domain& domain, const Record& x, double p_max, NormKind norm) {
    check_point(domain, x, "solve_eps_x");
    if (p_max > 1.0) {
        throw std::invalid_argument("solve_eps_x: p_max must be <= 1");
    }
    auto combined = domain.combined_size();
    if (combined.has_value()) {
        double floor = 1.0 / static_cast<double>(*combined);
        if (p_max < floor * (1.0 - 1e-12)) {
            throw std::invalid_argument("solve_eps_x: no solution: exceeds uniform (p_max < 1/K)");
        }
    } else if (p_max <= 0.0) {
        throw std::invalid_argument("solve_eps_x: p_max must be positive");
    }
    if (p_max == 1.0) return std::numeric_limits<double>::infinity();

    const double target = 1.0 / p_max;
    const bool factorize = norm == NormKind::manhattan || domain.arity() == 1;
    if (factorize) {
        double size = combined.has_value() ? static_cast<double>(*combined)
                                           : std::numeric_limits<double>::infinity();
        return bisect_rate([&](double eps) { return factorized_sum(domain, x, eps); }, target,
                           size);
    }
    if (!combined.has_value() || *combined > kGeoEnumerationCap) {
        throw std::invalid_argument(
            "solve_eps_x: domain too large to enumerate for this norm (cap 10^7); "
            "use the manhattan norm");
    }
    auto histogram = distance_histogram(domain, x, norm);
    return bisect_rate([&](double eps) { return histogram_sum(histogram, eps); }, target,
                       static_cast<double>(*combined));
}

BoundedGeometric::BoundedGeometric(Domain box, NormKind norm, BoundingMode mode)
    : box_(std::move(box)), norm_(norm), mode_(mode) {
    if (box_.arity() == 1) {
        norm_ = NormKind::manhattan;  // all p-norms coincide in 1D
    }
    if (mode_ != BoundingMode::resample && box_.arity() != 1) {
        throw std::invalid_argument(
            "BoundedGeometric: clip/uniform_replace are 1D baselines; use resample");
    }
    auto combined = box_.combined_size();
    if (!factorized() && mode_ == BoundingMode::resample) {
        if (!combined.has_value() || *combined > kGeoEnumerationCap) {
            throw std::invalid_argument(
                "BoundedGeometric: domain too large to enumerate for this norm (cap 10^7); "
                "use the manhattan norm");
        }
    }
    combined_ = combined.value_or(0);
}

BoundedGeometric::BoundedGeometric(Domain box, double p_max, NormKind norm, BoundingMode mode)
    : BoundedGeometric(std::move(box), norm, mode) {
    auto combined = box_.combined_size();
    if (p_max <= 0.0 || p_max > 1.0 ||
        (combined.has_value() && p_max < (1.0 - 1e-12) / static_cast<double>(*combined))) {
        throw std::invalid_argument("BoundedGeometric: p_max must be in [1/K, 1]");
    }
    p_max_ = p_max;
}

BoundedGeometric BoundedGeometric::with_fixed_rate(Domain box, double epsilon, NormKind norm,
                                                   BoundingMode mode) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("BoundedGeometric: fixed rate must be finite and positive");
    }
    BoundedGeometric geo(std::move(box), norm, mode);
    geo.fixed_rate_ = true;
    geo.fixed_eps_ = epsilon;
    return geo;
}

bool BoundedGeometric::factorized() const {
    return mode_ == BoundingMode::resample &&
           (norm_ == NormKind::manhattan || box_.arity() == 1);
}

double BoundedGeometric::rate_for(const Record& x) const {
    return law_for(x).eps;
}

std::vector<double> BoundedGeometric::restricted_1d_weights(std::int64_t k, std::int64_t x,
                                                            double eps) const {
    std::vector<double> w(static_cast<std::size_t>(k));
    for (std::int64_t u = 0; u < k; ++u) {
        w[static_cast<std::size_t>(u)] = std::exp(-eps * static_cast<double>(std::llabs(u - x)));
    }
    return w;
}

BoundedGeometric::InputLaw BoundedGeometric::build_law(const Record& x) const {
    InputLaw law;
    law.eps = fixed_rate_ ? fixed_eps_ : solve_eps_x(box_, x, p_max_, norm_);

    if (mode_ == BoundingMode::resample) {
        if (std::isinf(law.eps)) {
            law.mode_prob = 1.0;
            return law;
        }
        if (factorized()) {
            law.mode_prob = fixed_rate_ ? 1.0 / factorized_sum(box_, x, law.eps) : p_max_;
            for (std::size_t i = 0; i < box_.arity(); ++i) {
                law.dim_weights.push_back(restricted_1d_weights(box_.dims[i], x[i], law.eps));
                double total = 0.0;
                for (double w : law.dim_weights.back()) total += w;
                law.dim_totals.push_back(total);
            }
            return law;
        }
        auto histogram = distance_histogram(box_, x, norm_);
        law.mode_prob = fixed_rate_ ? 1.0 / histogram_sum(histogram, law.eps) : p_max_;
        law.probs.resize(combined_);
        Record y(box_.arity(), 0);
        for (std::uint64_t idx = 0; idx < combined_; ++idx) {
            law.probs[idx] = law.mode_prob * std::exp(-law.eps * grid_distance(norm_, x, y));
            for (std::size_t i = y.size(); i-- > 0;) {
                if (++y[i] < box_.dims[i]) break;
                y[i] = 0;
            }
        }
        return law;
    }

    // 1D clip / uniform_replace baselines: bound the unbounded two-sided
    // geometric law with rate eps (normalizer (1-t)/(1+t) over the integers).
    if (!(law.eps > 0.0) || std::isinf(law.eps)) {
        throw std::invalid_argument(
            "BoundedGeometric: clip/uniform_replace need a finite positive rate");
    }
    const std::int64_t k = box_.dims[0];
    const std::int64_t xi = x[0];
    const double t = std::exp(-law.eps);
    const double kappa = (1.0 - t) / (1.0 + t);
    law.probs.assign(static_cast<std::size_t>(k), 0.0);
    for (std::int64_t y = 0; y < k; ++y) {
        law.probs[static_cast<std::size_t>(y)] =
            kappa * std::pow(t, static_cast<double>(std::llabs(y - xi)));
    }
    if (mode_ == BoundingMode::clip) {
        // Each out-of-box tail collapses onto the nearest edge.
        law.probs[0] = kappa * std::pow(t, static_cast<double>(xi)) / (1.0 - t);
        law.probs[static_cast<std::size_t>(k - 1)] =
            kappa * std::pow(t, static_cast<double>(k - 1 - xi)) / (1.0 - t);
    } else {
        double in_box = 0.0;
        for (double p : law.probs) in_box += p;
        double share = (1.0 - in_box) / static_cast<double>(k);
        for (double& p : law.probs) p += share;
    }
    law.mode_prob = law.probs[static_cast<std::size_t>(xi)];
    return law;
}

const BoundedGeometric::InputLaw& BoundedGeometric::law_for(const Record& x) const {
    check_point(box_, x, "BoundedGeometric");
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->laws.find(x);
    if (it == cache_->laws.end()) {
        it = cache_->laws.emplace(x, std::make_shared<const InputLaw>(build_law(x))).first;
    }
    return *it->second;
}

double BoundedGeometric::prob(const Record& x, const Record& y) const {
    check_point(box_, y, "BoundedGeometric");
    const InputLaw& law = law_for(x);
    if (!law.probs.empty()) {
        std::uint64_t idx = box_.arity() == 1 ? static_cast<std::uint64_t>(y[0])
                                              : flatten_index(box_, y);
        return law.probs[idx];
    }
    if (std::isinf(law.eps)) {
        return x == y ? 1.0 : 0.0;
    }
    return law.mode_prob * std::exp(-law.eps * grid_distance(norm_, x, y));
}

Record BoundedGeometric::sample(const Record& x, Rng& rng) const {
    const InputLaw& law = law_for(x);
    if (std::isinf(law.eps)) {
        return x;
    }
    if (!law.probs.empty()) {
        std::size_t idx = invert_cdf(law.probs, rng.next_double());
        return box_.arity() == 1 ? Record{static_cast<std::int64_t>(idx)}
                                 : unflatten_index(box_, idx);
    }
    // Factorized resample law: dimensions are independent given the shared
    // rate, each restricted to its own segment.
    Record y(box_.arity());
    for (std::size_t i = 0; i < box_.arity(); ++i) {
        double draw = rng.next_double() * law.dim_totals[i];
        y[i] = static_cast<std::int64_t>(invert_cdf(law.dim_weights[i], draw));
    }
    return y;
}

}  // namespace privcd
