#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "privcd/audit.hpp"
#include "privcd/geometric.hpp"
#include "privcd/krr.hpp"
#include "privcd/mechanism.hpp"
#include "privcd/rng.hpp"

using namespace privcd;

namespace {

// Independent scalar root finder on [0,1] for the polynomial oracles below.
template <typename F>
double bisect_root(F&& f, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (f(lo) * f(mid) <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE_BEGIN("mechanisms");

TEST_CASE("krr params satisfy the defining identities") {
    for (std::uint64_t k : {2ULL, 10ULL, 250ULL}) {
        for (double eps : {0.0, 0.7, 2.1972245773362196}) {
            auto params = KrrParams::from_epsilon(k, eps);
            CHECK(params.p == doctest::Approx(std::exp(eps) / (k - 1 + std::exp(eps))));
            CHECK(params.p + (k - 1) * params.q == doctest::Approx(1.0).epsilon(1e-14));
            if (params.q > 0) CHECK(params.p / params.q == doctest::Approx(std::exp(eps)));
        }
    }
}

TEST_CASE("krr keep rate at eps=0 is the uniform coin") {
    auto params = KrrParams::from_epsilon(2, 0.0);
    Rng rng(RngSeed{1, {0}});
    int kept = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        if (krr_sample(1, params, rng) == 1) ++kept;
    }
    CHECK(std::fabs(static_cast<double>(kept) / n - 0.5) <= 0.01);
}

TEST_CASE("krr k=10 at eps=ln9 keeps half") {
    auto params = KrrParams::from_epsilon(10, std::log(9.0));
    CHECK(params.p == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("krr huge eps is the identity") {
    auto params = KrrParams::from_epsilon(4, 50.0);
    Rng rng(RngSeed{2, {}});
    for (int i = 0; i < 1000; ++i) {
        CHECK(krr_sample(3, params, rng) == 3);
    }
    CHECK_THROWS(krr_sample(4, params, rng));
}

TEST_CASE("krr cwise split is proportional to cardinality") {
    Domain d({2, 5, 5, 5});
    auto split = krr_cwise_split(1.7, d);
    CHECK(split[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(split[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(split[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(split[3] == doctest::Approx(0.5).epsilon(1e-12));
    double total = 0;
    for (double e : split) total += e;
    CHECK(total == doctest::Approx(1.7).epsilon(1e-12));

    Domain single({7});
    CHECK(krr_cwise_split(1.3, single)[0] == doctest::Approx(1.3));
    Domain sym({3, 3});
    auto s2 = krr_cwise_split(2.0, sym);
    CHECK(s2[0] == doctest::Approx(1.0));
    CHECK(s2[1] == doctest::Approx(1.0));
}

TEST_CASE("krr comb params on product domains") {
    CHECK(krr_comb_params(Domain({2, 5, 5, 5}), 1.0).k == 250);
    CHECK(krr_comb_params(Domain({2}), 1.0).k == 2);
    // 10 attributes of 10 categories: k = 10^10, valid without a table.
    std::vector<std::int64_t> dims(10, 10);
    CHECK(krr_comb_params(Domain(dims), 1.0).k == 10000000000ULL);
    // 10^14 exceeds the cap.
    std::vector<std::int64_t> big(14, 10);
    CHECK_THROWS_WITH_AS(krr_comb_params(Domain(big), 1.0),
                         "krr_comb_params: combined domain too large", std::invalid_argument);
}

TEST_CASE("eps_x solver: 1D k=5 center, p_max=0.5") {
    // Oracle: with t = exp(-eps), sum = 1 + 2t + 2t^2 = 2, i.e. the positive
    // root of 2t^2 + 2t - 1 = 0, t = (sqrt(3) - 1) / 2.
    double t = (std::sqrt(3.0) - 1.0) / 2.0;
    double expected = -std::log(t);
    CHECK(expected == doctest::Approx(1.00505).epsilon(1e-4));
    double solved = solve_eps_x(Domain({5}), {2}, 0.5, NormKind::manhattan);
    CHECK(solved == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("eps_x solver: 1D k=5 corner, p_max=0.5") {
    // Oracle: root of t^4 + t^3 + t^2 + t - 1 = 0 via independent bisection.
    double t = bisect_root([](double v) { return ((v + 1) * v * v * v + v * v) + v - 1.0; },
                           0.0, 1.0);
    double expected = -std::log(t);
    CHECK(expected == doctest::Approx(0.6562).epsilon(2e-3));
    double solved = solve_eps_x(Domain({5}), {0}, 0.5, NormKind::manhattan);
    CHECK(solved == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("eps_x solver: p_max at the uniform floor gives zero rate") {
    CHECK(solve_eps_x(Domain({5}), {1}, 1.0 / 5.0, NormKind::manhattan) == 0.0);
    CHECK(solve_eps_x(Domain({5, 5}), {2, 2}, 1.0 / 25.0, NormKind::euclidean) == 0.0);
    CHECK_THROWS(solve_eps_x(Domain({5}), {0}, 0.1, NormKind::manhattan));
    CHECK_THROWS(solve_eps_x(Domain({5}), {0}, 1.5, NormKind::manhattan));
}

TEST_CASE("eps_x is center-peaked and nonincreasing toward the border") {
    const std::int64_t k = 99;
    Domain d({k});
    std::vector<double> rates;
    for (std::int64_t x = 0; x < k; ++x) {
        rates.push_back(solve_eps_x(d, {x}, 0.4, NormKind::manhattan));
    }
    for (std::int64_t x = 0; x + 1 <= k / 2; ++x) {
        CHECK(rates[x] <= rates[x + 1] + 1e-12);              // rising half
        CHECK(rates[k - 1 - x] <= rates[k - 2 - x] + 1e-12);  // falling half
    }
    CHECK(rates[k / 2] == *std::max_element(rates.begin(), rates.end()));
}

TEST_CASE("manhattan factorized solver matches joint enumeration on (5,5,5)") {
    Domain d({5, 5, 5});
    for (Record x : {Record{2, 2, 2}, Record{0, 0, 0}, Record{4, 1, 3}}) {
        double factorized = solve_eps_x(d, x, 0.05, NormKind::manhattan);
        // Enumerated reference: brute-force the sum over all 125 points.
        auto sum_at = [&](double eps) {
            double s = 0.0;
            for (std::int64_t a = 0; a < 5; ++a)
                for (std::int64_t b = 0; b < 5; ++b)
                    for (std::int64_t c = 0; c < 5; ++c)
                        s += std::exp(-eps * (std::llabs(a - x[0]) + std::llabs(b - x[1]) +
                                              std::llabs(c - x[2])));
            return s;
        };
        double enumerated = bisect_root([&](double eps) { return sum_at(eps) - 20.0; }, 0.0, 50.0);
        CHECK(factorized == doctest::Approx(enumerated).epsilon(1e-9));
    }
}

TEST_CASE("geo_prob: mode probability and decay from the solved rate") {
    BoundedGeometric geo(Domain({5}), 0.5, NormKind::manhattan);
    CHECK(geo.prob({2}, {2}) == doctest::Approx(0.5));
    // 0.5 * exp(-eps_center) = 0.5 * (sqrt(3)-1)/2
    double expected = 0.5 * (std::sqrt(3.0) - 1.0) / 2.0;
    CHECK(geo.prob({2}, {1}) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(geo.prob({2}, {1}) == doctest::Approx(0.18301).epsilon(1e-4));
}

TEST_CASE("geo rows sum to one for all inputs and norms on (2,5,5,5)") {
    Domain d({2, 5, 5, 5});
    for (NormKind norm : {NormKind::manhattan, NormKind::euclidean, NormKind::chebyshev}) {
        BoundedGeometric geo(d, 0.5, norm);
        for (std::uint64_t xi = 0; xi < 250; ++xi) {
            Record x = unflatten_index(d, xi);
            double sum = 0.0;
            for (std::uint64_t yi = 0; yi < 250; ++yi) {
                sum += geo.prob(x, unflatten_index(d, yi));
            }
            CHECK(std::fabs(sum - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("geo law: mode at the input, monotone decay in distance") {
    Domain d({2, 5, 5, 5});
    BoundedGeometric geo(d, 0.5, NormKind::euclidean);
    Record x = {1, 2, 0, 4};
    double px = geo.prob(x, x);
    for (std::uint64_t yi = 0; yi < 250; ++yi) {
        Record y = unflatten_index(d, yi);
        if (y != x) CHECK(geo.prob(x, y) < px);
    }
    Record y1 = {1, 2, 0, 3}, y2 = {1, 2, 4, 0};
    CHECK(grid_distance(NormKind::euclidean, x, y1) <= grid_distance(NormKind::euclidean, x, y2));
    CHECK(geo.prob(x, y1) >= geo.prob(x, y2));
}

TEST_CASE("manhattan joint law equals the product of per-dimension laws") {
    Domain d({5, 5, 5});
    BoundedGeometric geo(d, 0.05, NormKind::manhattan);
    Record x = {1, 3, 0};
    double eps = geo.rate_for(x);
    // Per-dimension restricted laws sharing the joint rate.
    auto dim_law = [&](std::int64_t xi, std::int64_t yi) {
        double total = 0.0;
        for (std::int64_t u = 0; u < 5; ++u) total += std::exp(-eps * std::llabs(u - xi));
        return std::exp(-eps * std::llabs(yi - xi)) / total;
    };
    double max_deviation = 0.0;
    for (std::uint64_t yi = 0; yi < 125; ++yi) {
        Record y = unflatten_index(d, yi);
        double product = dim_law(x[0], y[0]) * dim_law(x[1], y[1]) * dim_law(x[2], y[2]);
        max_deviation = std::max(max_deviation, std::fabs(product - geo.prob(x, y)));
    }
    CHECK(max_deviation <= 1e-12);
}

TEST_CASE("geo sampling matches the law: 1D keep rate") {
    BoundedGeometric geo(Domain({5}), 0.5, NormKind::manhattan);
    Rng rng(RngSeed{77, {}});
    int kept = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        if (geo.sample({2}, rng)[0] == 2) ++kept;
    }
    CHECK(std::fabs(static_cast<double>(kept) / n - 0.5) <= 0.01);
}

TEST_CASE("geo sampling: mode of the empirical histogram is the input") {
    BoundedGeometric geo(Domain({7}), 0.3, NormKind::manhattan);
    Rng rng(RngSeed{78, {}});
    for (std::int64_t x = 0; x < 7; ++x) {
        std::vector<int> counts(7, 0);
        for (int i = 0; i < 10000; ++i) ++counts[geo.sample({x}, rng)[0]];
        std::int64_t argmax =
            std::max_element(counts.begin(), counts.end()) - counts.begin();
        CHECK(argmax == x);
    }
}

TEST_CASE("factorized sampler tracks the enumerated law within TV 0.02") {
    Domain d({5, 5});
    BoundedGeometric geo(d, 0.3, NormKind::manhattan);
    Record x = {1, 3};
    Rng rng(RngSeed{79, {}});
    std::map<std::uint64_t, double> freq;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        freq[flatten_index(d, geo.sample(x, rng))] += 1.0 / n;
    }
    double tv = 0.0;
    for (std::uint64_t yi = 0; yi < 25; ++yi) {
        tv += 0.5 * std::fabs(freq[yi] - geo.prob(x, unflatten_index(d, yi)));
    }
    CHECK(tv < 0.02);
}

TEST_CASE("clip mode boosts the near edge; uniform_replace adds a constant") {
    Domain d({6});
    BoundedGeometric clip(d, 0.5, NormKind::manhattan, BoundingMode::clip);
    BoundedGeometric unif(d, 0.5, NormKind::manhattan, BoundingMode::uniform_replace);
    for (std::int64_t x = 0; x < 6; ++x) {
        double cs = 0.0, us = 0.0;
        for (std::int64_t y = 0; y < 6; ++y) {
            cs += clip.prob({x}, {y});
            us += unif.prob({x}, {y});
        }
        CHECK(cs == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(us == doctest::Approx(1.0).epsilon(1e-12));
    }
    // For a corner input under clipping, the out-of-box tail lands on the
    // input itself, so its mass exceeds the resample-mode p_max.
    CHECK(clip.prob({0}, {0}) > 0.5);
    // Multidimensional clip is rejected.
    CHECK_THROWS(BoundedGeometric(Domain({3, 3}), 0.5, NormKind::euclidean, BoundingMode::clip));
}

TEST_CASE("privatize_dataset: no-noise limit and determinism") {
    Dataset ds;
    ds.domain = Domain({4, 4});
    ds.rows = {{0, 1}, {3, 2}, {1, 1}, {2, 0}};
    MechanismSpec spec;
    spec.kind = MechanismKind::krr_comb;
    spec.epsilon = 50.0;
    auto out = privatize_dataset(ds, spec, RngSeed{5, {}});
    CHECK(out.rows == ds.rows);

    spec.epsilon = 0.4;
    auto a = privatize_dataset(ds, spec, RngSeed{6, {}});
    auto b = privatize_dataset(ds, spec, RngSeed{6, {}});
    CHECK(a.rows == b.rows);
}

TEST_CASE("privatize_dataset: geo c-wise per-attribute keep rate") {
    Dataset ds;
    ds.domain = Domain({5, 5});
    Rng fill(RngSeed{91, {}});
    ds.rows.resize(50000, Record(2));
    for (auto& row : ds.rows) {
        row[0] = static_cast<std::int64_t>(fill.next_below(5));
        row[1] = static_cast<std::int64_t>(fill.next_below(5));
    }
    MechanismSpec spec;
    spec.kind = MechanismKind::geo_cwise;
    spec.level = 0.5;
    auto out = privatize_dataset(ds, spec, RngSeed{92, {}});
    std::int64_t kept = 0, cells = 0;
    for (std::size_t r = 0; r < ds.rows.size(); ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            kept += out.rows[r][c] == ds.rows[r][c];
            ++cells;
        }
    }
    CHECK(std::fabs(static_cast<double>(kept) / static_cast<double>(cells) - 0.5) <= 0.01);
}

TEST_CASE("audit: k-RR effective epsilon is exact") {
    for (double eps : {0.3, 2.0, 8.0}) {
        auto report = audit_effective_eps(KrrParams::from_epsilon(16, eps));
        CHECK(report.ldp_eps == doctest::Approx(eps).epsilon(1e-12));
    }
    // Enumerated route agrees.
    auto params = KrrParams::from_epsilon(8, 1.5);
    CHECK(ldp_epsilon(channel_of(params)) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("audit: uniform geometric channel has zero ldp epsilon") {
    BoundedGeometric geo(Domain({6}), 1.0 / 6.0, NormKind::manhattan);
    CHECK(ldp_epsilon(channel_of(geo)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("audit: geometric d-privacy epsilon vs rate oracle (1D k=5)") {
    BoundedGeometric geo(Domain({5}), 0.5, NormKind::manhattan);
    // Restricted to input pairs with equal rates (mirror-symmetric pairs,
    // x1 != x2), the worst ratio equals the largest of those shared rates.
    double worst_restricted = 0.0;
    for (std::int64_t x1 = 0; x1 < 5; ++x1) {
        for (std::int64_t x2 = 0; x2 < 5; ++x2) {
            if (x1 == x2) continue;
            if (std::fabs(geo.rate_for({x1}) - geo.rate_for({x2})) > 1e-9) continue;
            for (std::int64_t y = 0; y < 5; ++y) {
                double ratio = std::log(geo.prob({x1}, {y}) / geo.prob({x2}, {y})) /
                               std::fabs(static_cast<double>(x1 - x2));
                worst_restricted = std::max(worst_restricted, ratio);
            }
        }
    }
    double max_offcenter_rate = std::max(geo.rate_for({0}), geo.rate_for({1}));
    CHECK(worst_restricted == doctest::Approx(max_offcenter_rate).epsilon(1e-6));
    // The full-domain diagnostic is at least the restricted value.
    auto report = audit_effective_eps(geo);
    CHECK(report.dpriv_eps >= worst_restricted - 1e-9);
}

TEST_CASE("audit reports infinity for deterministic channels") {
    auto report = audit_effective_eps(KrrParams::from_epsilon(4, 800.0));
    CHECK(std::isinf(report.ldp_eps));
}

TEST_SUITE_END();
