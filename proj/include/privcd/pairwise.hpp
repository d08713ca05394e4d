#pragma once

#include <string>
#include <vector>

#include "privcd/rng.hpp"

namespace privcd {

enum class Direction { x_to_y, y_to_x };

// Forced-decision output of a pairwise decider. score > 0 favors x->y,
// score < 0 favors y->x; |score| < 1e-12 counts as a tie, broken toward
// x->y with the forced flag raised.
struct DirectionDecision {
    Direction direction = Direction::x_to_y;
    double score = 0.0;
    bool forced = false;
};

// Regression-error causal inference: rescale both variables to [0,1], fit
// least-squares cubics in both directions, prefer the direction with the
// smaller forward MSE. score = mse(x|y) - mse(y|x).
DirectionDecision reci(const std::vector<double>& x, const std::vector<double>& y);

// Information-geometric causal inference with a Gaussian reference measure:
// standardize both variables, estimate differential entropy with the
// 1-spacing estimator over sorted values (zero gaps skipped), prefer the
// side with the larger entropy as the cause. score = H(x) - H(y).
DirectionDecision igci(const std::vector<double>& x, const std::vector<double>& y);

struct CdsOptions {
    int bins = 13;          // equally spaced over +/- span standard deviations
    double span = 3.0;
    int min_count = 5;      // minimum occupancy for a conditioning bin
};

// Conditional-distribution similarity: quantize the standardized pair, and
// for each sufficiently occupied x-bin compare the conditional distributions
// of y; the lower their spread, the more likely x->y.
// score = spread(y-bins | x as effect) - spread(x as cause).
DirectionDecision cds(const std::vector<double>& x, const std::vector<double>& y,
                      const CdsOptions& options = {});

struct AnmOptions {
    std::size_t max_points = 500;  // GP cost is cubic; subsample above this
    RngSeed subsample_seed{20240101, {}};
};

// Additive-noise model test: Gaussian-process regression (RBF kernel,
// median-heuristic lengthscale) in both directions, then the normalized
// HSIC between regressor and residuals decides; the direction with the more
// independent residuals wins. score = hsic(y->x) - hsic(x->y).
DirectionDecision anm(const std::vector<double>& x, const std::vector<double>& y,
                      const AnmOptions& options = {});

// Normalized HSIC with Gaussian kernels and median-heuristic bandwidths;
// in [0, 1], zero iff empirically independent. Exposed for tests.
double normalized_hsic(const std::vector<double>& a, const std::vector<double>& b);

std::string to_string(Direction direction);

}  // namespace privcd
