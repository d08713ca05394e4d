#include "privcd/pairwise.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "privcd/special.hpp"

namespace privcd {

namespace {

constexpr double kTieThreshold = 1e-12;

void check_pair(const std::vector<double>& x, const std::vector<double>& y, std::size_t min_n,
                const char* who) {
    if (x.size() != y.size()) {
        throw std::invalid_argument(std::string(who) + ": unequal lengths");
    }
    if (x.size() < min_n) {
        throw std::invalid_argument(std::string(who) + ": too few samples");
    }
}

DirectionDecision decide(double score) {
    DirectionDecision decision;
    decision.score = score;
    if (std::fabs(score) < kTieThreshold) {
        decision.direction = Direction::x_to_y;
        decision.forced = true;
        return decision;
    }
    decision.direction = score > 0.0 ? Direction::x_to_y : Direction::y_to_x;
    return decision;
}

std::vector<double> rescale_unit(const std::vector<double>& v, const char* who) {
    auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    if (!(*mx > *mn)) {
        throw std::invalid_argument(std::string(who) + ": constant variable");
    }
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = (v[i] - *mn) / (*mx - *mn);
    }
    return out;
}

std::vector<double> standardize(const std::vector<double>& v, const char* who) {
    double mean = 0.0;
    for (double value : v) mean += value;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double value : v) var += (value - mean) * (value - mean);
    var /= static_cast<double>(v.size());
    if (!(var > 0.0)) {
        throw std::invalid_argument(std::string(who) + ": constant variable");
    }
    double sd = std::sqrt(var);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = (v[i] - mean) / sd;
    }
    return out;
}

// Least-squares cubic fit, returning the residual MSE of target | input.
double cubic_fit_mse(const std::vector<double>& input, const std::vector<double>& target) {
    const std::size_t n = input.size();
    Eigen::MatrixXd design(n, 4);
    Eigen::VectorXd response(n);
    for (std::size_t r = 0; r < n; ++r) {
        double v = input[r];
        design(r, 0) = 1.0;
        design(r, 1) = v;
        design(r, 2) = v * v;
        design(r, 3) = v * v * v;
        response(r) = target[r];
    }
    Eigen::VectorXd coef = design.colPivHouseholderQr().solve(response);
    double mse = (design * coef - response).squaredNorm() / static_cast<double>(n);
    return mse;
}

// 1-spacing differential entropy over sorted values, skipping zero gaps.
double spacing_entropy(const std::vector<double>& v) {
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    std::size_t distinct = 1;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double gap = sorted[i + 1] - sorted[i];
        if (gap > 0.0) {
            acc += std::log(gap);
            ++distinct;
        }
    }
    if (distinct < 2) {
        throw std::invalid_argument("igci: fewer than two distinct values");
    }
    return acc / static_cast<double>(n - 1) + digamma(static_cast<double>(n)) - digamma(1.0);
}

double median_of(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    return values[mid];
}

double median_pairwise_sqdist(const std::vector<double>& v) {
    std::vector<double> dists;
    dists.reserve(v.size() * (v.size() - 1) / 2);
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            double d = v[i] - v[j];
            dists.push_back(d * d);
        }
    }
    double med = median_of(std::move(dists));
    return med > 0.0 ? med : 1.0;
}

Eigen::MatrixXd gaussian_kernel(const std::vector<double>& v, double sq_bandwidth) {
    const std::size_t n = v.size();
    Eigen::MatrixXd k(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double d = v[i] - v[j];
            double value = std::exp(-d * d / (2.0 * sq_bandwidth));
            k(i, j) = value;
            k(j, i) = value;
        }
    }
    return k;
}

// GP regression of target on input; returns the residuals. Observation
// noise starts at 1e-4 * var(target) and escalates x10 (up to 1e-1 * var)
// if the Cholesky factorization fails.
std::vector<double> gp_residuals(const std::vector<double>& input,
                                 const std::vector<double>& target) {
    const std::size_t n = input.size();
    double var = 0.0, mean = 0.0;
    for (double t : target) mean += t;
    mean /= static_cast<double>(n);
    for (double t : target) var += (t - mean) * (t - mean);
    var /= static_cast<double>(n);
    if (!(var > 0.0)) var = 1.0;

    double lengthscale_sq = median_pairwise_sqdist(input);
    Eigen::MatrixXd kernel = gaussian_kernel(input, lengthscale_sq);
    Eigen::VectorXd response(n);
    for (std::size_t i = 0; i < n; ++i) response(i) = target[i] - mean;

    double jitter = 1e-4 * var;
    for (;; jitter *= 10.0) {
        if (jitter > 1e-1 * var) {
            throw std::runtime_error("anm: kernel matrix not positive-definite after jitter");
        }
        Eigen::MatrixXd regularized =
            kernel + jitter * Eigen::MatrixXd::Identity(n, n);
        Eigen::LLT<Eigen::MatrixXd> llt(regularized);
        if (llt.info() != Eigen::Success) continue;
        Eigen::VectorXd alpha = llt.solve(response);
        Eigen::VectorXd fitted = kernel * alpha;
        std::vector<double> residuals(n);
        for (std::size_t i = 0; i < n; ++i) {
            residuals[i] = target[i] - (fitted(i) + mean);
        }
        return residuals;
    }
}

}  // namespace

std::string to_string(Direction direction) {
    return direction == Direction::x_to_y ? "x_to_y" : "y_to_x";
}

DirectionDecision reci(const std::vector<double>& x, const std::vector<double>& y) {
    check_pair(x, y, 10, "reci");
    auto xs = rescale_unit(x, "reci");
    auto ys = rescale_unit(y, "reci");
    double mse_forward = cubic_fit_mse(xs, ys);   // y | x
    double mse_backward = cubic_fit_mse(ys, xs);  // x | y
    return decide(mse_backward - mse_forward);
}

DirectionDecision igci(const std::vector<double>& x, const std::vector<double>& y) {
    check_pair(x, y, 20, "igci");
    auto xs = standardize(x, "igci");
    auto ys = standardize(y, "igci");
    // Under the deterministic-map postulate the effect's entropy does not
    // exceed the cause's.
    return decide(spacing_entropy(xs) - spacing_entropy(ys));
}

namespace {

// Average, over value bins, of the standard deviation (across conditioning
// bins) of the conditional distribution of the value variable.
double cds_spread(const std::vector<int>& cond_bins, const std::vector<int>& value_bins,
                  const CdsOptions& options) {
    const int b = options.bins;
    std::vector<std::vector<double>> conditional;
    for (int cb = 0; cb < b; ++cb) {
        std::vector<double> histogram(b, 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < cond_bins.size(); ++i) {
            if (cond_bins[i] == cb) {
                histogram[value_bins[i]] += 1.0;
                total += 1.0;
            }
        }
        if (total < options.min_count) continue;
        for (double& h : histogram) h /= total;
        conditional.push_back(std::move(histogram));
    }
    if (conditional.empty()) {
        throw std::invalid_argument("cds: no conditioning bin reaches min_count");
    }
    double spread = 0.0;
    for (int vb = 0; vb < b; ++vb) {
        double mean = 0.0;
        for (const auto& histogram : conditional) mean += histogram[vb];
        mean /= static_cast<double>(conditional.size());
        double var = 0.0;
        for (const auto& histogram : conditional) {
            var += (histogram[vb] - mean) * (histogram[vb] - mean);
        }
        var /= static_cast<double>(conditional.size());
        spread += std::sqrt(var);
    }
    return spread / static_cast<double>(b);
}

std::vector<int> quantize_standardized(const std::vector<double>& v, const CdsOptions& options) {
    std::vector<int> bins(v.size());
    const double lo = -options.span;
    const double width = 2.0 * options.span / static_cast<double>(options.bins);
    for (std::size_t i = 0; i < v.size(); ++i) {
        int b = static_cast<int>(std::floor((v[i] - lo) / width));
        bins[i] = std::clamp(b, 0, options.bins - 1);
    }
    return bins;
}

}  // namespace

DirectionDecision cds(const std::vector<double>& x, const std::vector<double>& y,
                      const CdsOptions& options) {
    check_pair(x, y, 50, "cds");
    auto xb = quantize_standardized(standardize(x, "cds"), options);
    auto yb = quantize_standardized(standardize(y, "cds"), options);
    double spread_forward = cds_spread(xb, yb, options);   // P(y | x-bin)
    double spread_backward = cds_spread(yb, xb, options);  // P(x | y-bin)
    // Lower spread of the conditionals marks the causal direction.
    return decide(spread_backward - spread_forward);
}

double normalized_hsic(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 3) {
        throw std::invalid_argument("normalized_hsic: invalid inputs");
    }
    const std::size_t n = a.size();
    Eigen::MatrixXd k = gaussian_kernel(a, median_pairwise_sqdist(a));
    Eigen::MatrixXd l = gaussian_kernel(b, median_pairwise_sqdist(b));
    Eigen::MatrixXd h =
        Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    Eigen::MatrixXd kc = h * k * h;
    Eigen::MatrixXd lc = h * l * h;
    double cross = (kc.array() * lc.array()).sum();
    double norm_k = (kc.array() * kc.array()).sum();
    double norm_l = (lc.array() * lc.array()).sum();
    if (norm_k <= 0.0 || norm_l <= 0.0) return 0.0;
    return cross / std::sqrt(norm_k * norm_l);
}

DirectionDecision anm(const std::vector<double>& x, const std::vector<double>& y,
                      const AnmOptions& options) {
    check_pair(x, y, 50, "anm");
    std::vector<double> xs = x;
    std::vector<double> ys = y;
    if (xs.size() > options.max_points) {
        // Uniform subsample without replacement, deterministic via the seed.
        Rng rng(options.subsample_seed);
        std::vector<std::size_t> index(xs.size());
        for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
        for (std::size_t i = index.size() - 1; i > 0; --i) {
            std::swap(index[i], index[rng.next_below(i + 1)]);
        }
        index.resize(options.max_points);
        std::sort(index.begin(), index.end());
        std::vector<double> sub_x, sub_y;
        sub_x.reserve(index.size());
        sub_y.reserve(index.size());
        for (std::size_t i : index) {
            sub_x.push_back(xs[i]);
            sub_y.push_back(ys[i]);
        }
        xs = std::move(sub_x);
        ys = std::move(sub_y);
    }
    xs = standardize(xs, "anm");
    ys = standardize(ys, "anm");
    auto residual_forward = gp_residuals(xs, ys);
    auto residual_backward = gp_residuals(ys, xs);
    double hsic_forward = normalized_hsic(xs, residual_forward);
    double hsic_backward = normalized_hsic(ys, residual_backward);
    return decide(hsic_backward - hsic_forward);
}

}  // namespace privcd
