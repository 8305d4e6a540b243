#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypfill/bounds.hpp"
#include "hypfill/errors.hpp"
#include "hypfill/hyperbolic.hpp"

#include <cmath>
#include <random>

using namespace hypfill;

// mpmath, 30 digits
constexpr double kExactMin2 = 9.97731534635172645391491023448;
constexpr double kExactMin3 = 17.2748678676659542509686392293;
constexpr double kRatioMillion = 7.05098517066112376522763952284;
constexpr double kRatioLimit = 7.05098869615634420186087459984;

TEST_CASE("r value") {
    CHECK(r_value({2, {}}) == 0.0);
    CHECK(r_value({2, {std::exp(-1.0), std::exp(-2.0)}}) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(std::abs(r_value({2, {0.5, 0.25}}) - 2.07944154167983592825) < 1e-14);
    CHECK_THROWS_AS(r_value({2, {1.0}}), InputError);
    CHECK_THROWS_AS(r_value({2, {-0.1}}), InputError);
}

TEST_CASE("summary validation") {
    CHECK_THROWS_AS(validate({1, {}}), InputError);
    CHECK_THROWS_AS(validate({2, {0.1, 0.2, 0.3, 0.4}}), InputError);
    CHECK_NOTHROW(validate({2, {0.1, 0.2, 0.3}}));
    CHECK_THROWS_AS(genus_bounds({1, {}}), InputError);
}

TEST_CASE("exact minimum") {
    CHECK(std::abs(exact_min(2) - kExactMin2) < 1e-12);
    CHECK(std::abs(exact_min(2) - 9.98) < 5e-3);
    CHECK(std::abs(exact_min(3) - kExactMin3) < 1e-12);
    CHECK(std::abs(exact_min(1e6) / 1e6 - kRatioMillion) < 1e-9);
    CHECK(std::abs(exact_min(1e6) / 1e6 - kRatioLimit) < 1e-3);
    CHECK(std::abs(8 * std::acosh(std::sqrt(2.0)) - 7.0510) < 1e-4);
    double prev = exact_min(2);
    for (int g = 3; g <= 10000; ++g) {
        double v = exact_min(g);
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(exact_min(1), InputError);
}

TEST_CASE("seven g threshold") {
    // exact_min(69) - 483 = -0.0200 and exact_min(70) - 490 = +0.0312 at 30 digits
    CHECK(exact_min(69) < 7 * 69);
    CHECK(exact_min(70) > 7 * 70);
    CHECK(exact_min_threshold(10000) == 70);
    for (int g = 70; g <= 10000; ++g) CHECK(exact_min(g) > 7.0 * g);
}

TEST_CASE("genus bounds") {
    auto b = genus_bounds({2, {}});
    CHECK(b.r == 0.0);
    CHECK(b.lower == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(b.upper == 600.0);
    CHECK(b.lower < b.exact_min);
    CHECK(b.exact_min < b.upper);
    CHECK(b.lower_large_g == 7.0);
    CHECK_FALSE(b.large_g_applicable);
    CHECK(b.large_g_threshold == 70);
    CHECK(genus_bounds({70, {}}).large_g_applicable);

    auto s = genus_bounds({2, {0.5, 0.25}});
    CHECK(s.lower == doctest::Approx(5.22103419526962916671).epsilon(1e-14));
    CHECK(s.upper == doctest::Approx(624.953298500158031139).epsilon(1e-14));

    // doubling every log(1/l) doubles upper - 300 g
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int i = 0; i < 200; ++i) {
        int g = 2 + i % 20;
        std::vector<double> ls, sq;
        for (int k = 0; k < 1 + i % (3 * g - 3); ++k) {
            double l = u(rng);
            ls.push_back(l);
            sq.push_back(l * l);
        }
        auto a = genus_bounds({g, ls});
        auto d = genus_bounds({g, sq});
        CHECK(d.upper - 300 * g == doctest::Approx(2 * (a.upper - 300 * g)).epsilon(1e-12));
        CHECK(a.lower < a.upper);
    }

    auto j = bound_report_to_json(b);
    for (const char* k : {"lower", "upper", "exact_min", "lower_large_g", "R", "asymptotic_ratio"}) CHECK(j.contains(k));
    CHECK(nlohmann::json::parse(j.dump())["exact_min"].get<double>() == b.exact_min);
}

TEST_CASE("power mean inequality") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(1e-3, 10.0);
    for (double p : {0.5, 1.0, 2.0, 3.0}) {
        for (int t = 0; t < 2000; ++t) {
            std::vector<double> a(1 + t % 12);
            for (double& x : a) x = u(rng);
            auto m = power_means(a, p);
            CHECK(m.mean_pow <= m.max_pow * (1 + 1e-14));
            CHECK(m.max_pow <= m.sum_pow * (1 + 1e-14));
        }
    }
    CHECK_THROWS_AS(power_means({}, 1.0), InputError);
    CHECK_THROWS_AS(power_means({1.0, 0.0}, 1.0), InputError);
}
