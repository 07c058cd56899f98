#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "disparity/error.hpp"
#include "disparity/meta_metrics.hpp"

using namespace disparity;

namespace {

constexpr double kTol = 1e-12;

std::vector<MetaMetricKind> all_kinds() {
    return {MetaMetricKind::max_min_diff(), MetaMetricKind::max_min_ratio(), MetaMetricKind::max_abs_diff(),
            MetaMetricKind::mean_abs_dev(), MetaMetricKind::variance(), MetaMetricKind::generalized_entropy(2.0),
            MetaMetricKind::generalized_entropy(-0.5), MetaMetricKind::generalized_entropy(3.0)};
}

double value(std::vector<double> y, MetaMetricKind k) { return meta_metric(y, k).value; }

std::vector<double> random_rates(std::mt19937_64& rng, std::size_t k) {
    std::uniform_real_distribution<double> u(0.01, 1.0);
    std::vector<double> y(k);
    for (auto& v : y) v = u(rng);
    return y;
}

}  // namespace

TEST_CASE("constant vector") {
    const std::vector<double> y{0.5, 0.5, 0.5};
    CHECK(value(y, MetaMetricKind::max_min_diff()) == 0.0);
    CHECK(value(y, MetaMetricKind::max_min_ratio()) == 1.0);
    CHECK(value(y, MetaMetricKind::max_abs_diff()) == 0.0);
    CHECK(value(y, MetaMetricKind::mean_abs_dev()) == 0.0);
    CHECK(value(y, MetaMetricKind::variance()) == 0.0);
    CHECK(value(y, MetaMetricKind::generalized_entropy(2.0)) == 0.0);
}

TEST_CASE("worked example 0.2, 0.4, 0.9") {
    const std::vector<double> y{0.2, 0.4, 0.9};
    CHECK(std::abs(value(y, MetaMetricKind::max_min_diff()) - 0.7) < kTol);
    CHECK(std::abs(value(y, MetaMetricKind::max_min_ratio()) - 4.5) < kTol);
    CHECK(std::abs(value(y, MetaMetricKind::max_abs_diff()) - 0.4) < kTol);
    CHECK(std::abs(value(y, MetaMetricKind::mean_abs_dev()) - 4.0 / 15.0) < kTol);
    CHECK(std::abs(value(y, MetaMetricKind::variance()) - 0.13) < kTol);
    CHECK(meta_metric(y, MetaMetricKind::variance()).k == 3);
}

TEST_CASE("generalized entropy index") {
    CHECK(std::abs(value({0.2, 0.4}, MetaMetricKind::generalized_entropy(2.0)) - 1.0 / 18.0) < kTol);
    CHECK_THROWS_AS(MetaMetricKind::generalized_entropy(0.0), Error);
    CHECK_THROWS_AS(MetaMetricKind::generalized_entropy(1.0), Error);
    CHECK_FALSE(MetaMetricKind::parse("gei:abc").has_value());
    CHECK_THROWS_AS(MetaMetricKind::parse("gei:1"), Error);
    CHECK(MetaMetricKind::parse("gei:2")->alpha() == 2.0);
    CHECK(MetaMetricKind::parse("gei:-0.5")->name() == "gei:-0.5");
}

TEST_CASE("undefined inputs") {
    CHECK_THROWS_WITH_AS(value({0.0, 0.5}, MetaMetricKind::max_min_ratio()),
                         doctest::Contains("undefined for zero rate"), Error);
    CHECK_THROWS_WITH_AS(value({0.0, 0.5}, MetaMetricKind::generalized_entropy(2.0)),
                         doctest::Contains("undefined for zero rate"), Error);
    for (const auto& k : all_kinds()) CHECK_THROWS_AS(value({0.5}, k), Error);
    CHECK(value({0.0, 0.5}, MetaMetricKind::max_min_diff()) == 0.5);
}

TEST_CASE("all metrics vanish on random constant vectors") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.001, 1.0);
    for (int t = 0; t < 200; ++t) {
        const std::vector<double> y(2 + rng() % 40, u(rng));
        for (const auto& k : all_kinds()) {
            const double expected = k.tag() == MetaMetricKind::Tag::max_min_ratio ? 1.0 : 0.0;
            CHECK(value(y, k) == expected);
        }
    }
}

TEST_CASE("permutation, scale and homogeneity properties") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> cdist(0.1, 1.0);
    for (int t = 0; t < 200; ++t) {
        auto y = random_rates(rng, 2 + rng() % 30);
        auto shuffled = y;
        std::ranges::shuffle(shuffled, rng);
        const double c = cdist(rng);
        std::vector<double> scaled(y);
        for (auto& v : scaled) v *= c;

        for (const auto& k : all_kinds()) {
            const double base = value(y, k);
            CHECK(value(shuffled, k) == doctest::Approx(base).epsilon(1e-12));
            const double s = value(scaled, k);
            switch (k.tag()) {
                case MetaMetricKind::Tag::max_min_ratio:
                case MetaMetricKind::Tag::generalized_entropy:
                    CHECK(s == doctest::Approx(base).epsilon(1e-9));
                    break;
                case MetaMetricKind::Tag::variance:
                    CHECK(s == doctest::Approx(c * c * base).epsilon(1e-9));
                    break;
                default:
                    CHECK(s == doctest::Approx(c * base).epsilon(1e-9));
            }
            if (k.tag() == MetaMetricKind::Tag::max_min_ratio)
                CHECK(base >= 1.0);
            else if (k.tag() != MetaMetricKind::Tag::generalized_entropy)
                CHECK(base >= 0.0);
        }
    }
}

TEST_CASE("names round-trip through parse") {
    for (const auto& k : all_kinds()) CHECK(MetaMetricKind::parse(k.name()) == k);
    CHECK(MetaMetricKind::parse("mean-abs-dev") == MetaMetricKind::mean_abs_dev());
    CHECK_FALSE(MetaMetricKind::parse("theil").has_value());
}
