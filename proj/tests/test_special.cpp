#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "privcd/special.hpp"

using namespace privcd;

TEST_SUITE_BEGIN("special");

TEST_CASE("regularized incomplete gamma matches chi-square closed forms") {
    // df=1: Q(1/2, x/2) = erfc(sqrt(x/2));  df=2: Q(1, x/2) = exp(-x/2).
    for (double x : {0.1, 0.5, 1.0, 3.841, 10.0, 25.0}) {
        CHECK(gamma_q(0.5, x / 2) == doctest::Approx(std::erfc(std::sqrt(x / 2))).epsilon(1e-12));
        CHECK(gamma_q(1.0, x / 2) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-12));
    }
}

TEST_CASE("gamma_p and gamma_q are complementary") {
    for (double a : {0.5, 1.0, 3.5, 12.0}) {
        for (double x : {0.01, 1.0, 5.0, 20.0}) {
            CHECK(gamma_p(a, x) + gamma_q(a, x) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("incomplete beta closed forms") {
    for (double x : {0.1, 0.4, 0.9}) {
        for (double b : {1.0, 2.5, 10.0}) {
            CHECK(beta_inc(1.0, b, x) ==
                  doctest::Approx(1.0 - std::pow(1.0 - x, b)).epsilon(1e-12));
            CHECK(beta_inc(b, 1.0, x) == doctest::Approx(std::pow(x, b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("incomplete beta symmetry") {
    CHECK(beta_inc(3.0, 7.0, 0.3) ==
          doctest::Approx(1.0 - beta_inc(7.0, 3.0, 0.7)).epsilon(1e-12));
}

TEST_CASE("beta_inc_inv round-trips") {
    for (double a : {0.5, 2.0, 11.0}) {
        for (double b : {1.0, 4.5, 9.0}) {
            for (double p : {0.025, 0.5, 0.975}) {
                double x = beta_inc_inv(a, b, p);
                CHECK(beta_inc(a, b, x) == doctest::Approx(p).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("normal cdf reference points") {
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5));
    CHECK(norm_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-10));
    CHECK(norm_cdf(-1.959963984540054) == doctest::Approx(0.025).epsilon(1e-8));
}

TEST_CASE("digamma reference points") {
    const double gamma = 0.5772156649015329;
    CHECK(digamma(1.0) == doctest::Approx(-gamma).epsilon(1e-10));
    CHECK(digamma(2.0) == doctest::Approx(1.0 - gamma).epsilon(1e-10));
    CHECK(digamma(0.5) == doctest::Approx(-gamma - 2.0 * std::log(2.0)).epsilon(1e-10));
}

TEST_SUITE_END();
