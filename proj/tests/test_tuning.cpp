#include <cmath>

#include "doctest.h"
#include "privcd/audit.hpp"
#include "privcd/mechanism.hpp"
#include "privcd/privacy_level.hpp"

using namespace privcd;

TEST_SUITE_BEGIN("tuning");

TEST_CASE("privacy_of_krr values") {
    CHECK(privacy_of_krr(0.0, 4) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(privacy_of_krr(std::log(9.0), 10) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(privacy_of_krr(800.0, 3) == doctest::Approx(1.0));
}

TEST_CASE("epsilon_for_krr values and bounds") {
    CHECK(epsilon_for_krr(0.5, 2) == doctest::Approx(0.0));
    CHECK(epsilon_for_krr(0.5, 10) == doctest::Approx(std::log(9.0)).epsilon(1e-12));
    CHECK(epsilon_for_krr(0.05, 250) ==
          doctest::Approx(std::log(0.05 * 249.0 / 0.95)).epsilon(1e-12));
    CHECK(epsilon_for_krr(0.05, 250) == doctest::Approx(2.57301).epsilon(1e-5));
    CHECK(epsilon_for_krr(0.1, 10) == doctest::Approx(0.0));  // the uniform floor
    CHECK_THROWS(epsilon_for_krr(0.05, 10));                  // strictly below it
    CHECK_THROWS(epsilon_for_krr(1.0, 10));
}

TEST_CASE("epsilon_for_krr inverts privacy_of_krr") {
    // Above eps ~ 13 the level is within 1e-6 of 1.0 and the inverse loses
    // precision to cancellation in (1 - level), so the identity is checked
    // where a double can carry it.
    for (double eps : {1e-6, 0.5, 2.0, 9.0, 12.0}) {
        for (std::uint64_t k : {2ULL, 10ULL, 250ULL}) {
            CHECK(epsilon_for_krr(privacy_of_krr(eps, k), k) ==
                  doctest::Approx(eps).epsilon(1e-10));
        }
    }
}

TEST_CASE("privacy_of_geo is the identity on (0,1]") {
    CHECK(privacy_of_geo(0.5) == 0.5);
    CHECK(privacy_of_geo(0.05) == 0.05);
    CHECK(privacy_of_geo(1.0 / 250.0) == 1.0 / 250.0);
    CHECK_THROWS(privacy_of_geo(0.0));
    CHECK_THROWS(privacy_of_geo(1.2));
}

TEST_CASE("matched specs on a 1D domain") {
    Domain d({10});
    auto specs = matched_specs(PrivacyLevel{0.5}, d,
                               {MechanismKind::krr_comb, MechanismKind::geo_comb});
    REQUIRE(specs.size() == 2);
    CHECK(*specs[0].level == 0.5);
    CHECK(*specs[1].level == 0.5);
    // k-RR at that level resolves to eps = ln 9.
    auto params = krr_comb_params(d, epsilon_for_krr(*specs[0].level, 10));
    CHECK(params.epsilon == doctest::Approx(std::log(9.0)));
}

TEST_CASE("matched specs at scale: krr_comb epsilon formula") {
    std::vector<std::int64_t> dims(10, 10);
    Domain d(dims);
    double eps = epsilon_for_krr(0.05, 10000000000ULL);
    CHECK(eps == doctest::Approx(std::log(0.05 * (1e10 - 1) / 0.95)).epsilon(1e-10));
}

TEST_CASE("matched specs report infeasible levels per kind") {
    Domain d({4, 4});  // K = 16
    CHECK_THROWS(matched_specs(PrivacyLevel{0.01}, d, {MechanismKind::krr_comb}));
    // geo_cwise per-attribute needs level >= 1/4.
    CHECK_THROWS(matched_specs(PrivacyLevel{0.1}, d, {MechanismKind::geo_cwise}));
    CHECK_NOTHROW(matched_specs(PrivacyLevel{0.3}, d, {MechanismKind::geo_cwise}));
}

TEST_CASE("enumerated Bayes attacker success equals the declared level") {
    Domain d({2, 5, 5});  // K = 50
    const double level = 0.3;
    for (MechanismKind kind : {MechanismKind::krr_comb, MechanismKind::geo_comb}) {
        MechanismSpec spec;
        spec.kind = kind;
        spec.level = level;
        if (kind == MechanismKind::geo_comb) spec.norm = NormKind::euclidean;
        ChannelView view;
        if (kind == MechanismKind::krr_comb) {
            view = channel_of(krr_comb_params(d, epsilon_for_krr(level, 50)));
        } else {
            view = channel_of(BoundedGeometric(d, level, NormKind::euclidean));
        }
        CHECK(std::fabs(bayes_attacker_success(view) - level) <= 1e-9);
    }
}

TEST_CASE("bayes success for c-wise mechanisms under both splits") {
    Domain d({3, 4});
    // per_attribute: each attribute channel on its own reaches the level.
    auto geo_resolved = resolve_geo_cwise(d, [] {
        MechanismSpec s;
        s.kind = MechanismKind::geo_cwise;
        s.level = 0.5;
        return s;
    }());
    for (std::size_t i = 0; i < 2; ++i) {
        BoundedGeometric geo(Domain({d.dims[i]}), geo_resolved.p_maxes[i], NormKind::manhattan);
        CHECK(std::fabs(bayes_attacker_success(channel_of(geo)) - 0.5) <= 1e-9);
    }
    // joint: the product channel reaches the level.
    MechanismSpec joint;
    joint.kind = MechanismKind::krr_cwise;
    joint.level = 0.4;
    joint.cwise_split = CwiseSplit::joint;
    auto krr_resolved = resolve_krr_cwise(d, joint);
    std::vector<ChannelView> attribute_channels;
    for (std::size_t i = 0; i < 2; ++i) {
        attribute_channels.push_back(channel_of(KrrParams::from_epsilon(
            static_cast<std::uint64_t>(d.dims[i]), krr_resolved.epsilons[i])));
    }
    auto product = product_channel(d, std::move(attribute_channels));
    CHECK(std::fabs(bayes_attacker_success(product) - 0.4) <= 1e-8);
}

TEST_CASE("level at the uniform floor yields the uniform channel") {
    Domain d({4});
    BoundedGeometric geo(d, 0.25, NormKind::manhattan);
    for (std::int64_t y = 0; y < 4; ++y) {
        CHECK(geo.prob({1}, {y}) == doctest::Approx(0.25).epsilon(1e-9));
    }
    CHECK(std::fabs(bayes_attacker_success(channel_of(geo)) - 0.25) <= 1e-9);
}

TEST_SUITE_END();
