#include <doctest.h>

#include <cmath>
#include <map>
#include <memory>
#include <numeric>

#include "disparity/bootstrap.hpp"
#include "disparity/error.hpp"
#include "disparity/estimators.hpp"
#include "disparity/meta_metrics.hpp"

using namespace disparity;

namespace {

// Exact distribution of successes when n indices are drawn with replacement from a group of
// n binary outcomes with z ones, by enumerating all n^n index tuples.
std::vector<double> enumerate_resample_pmf(int n, int z) {
    std::vector<double> counts(n + 1, 0.0);
    std::vector<int> idx(n, 0);
    long total = 0;
    for (;;) {
        int successes = 0;
        for (int i : idx) successes += i < z;
        counts[successes] += 1.0;
        ++total;
        int pos = 0;
        while (pos < n && ++idx[pos] == n) idx[pos++] = 0;
        if (pos == n) break;
    }
    for (auto& c : counts) c /= static_cast<double>(total);
    return counts;
}

double binomial_pmf(int n, int k, double p) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

GroupMetricVector example_vector() {
    std::vector<GroupOutcome> g;
    for (int i = 0; i < 12; ++i) g.emplace_back(GroupKey{"g" + std::to_string(i)}, 20 + 3 * i, 5 + i);
    return make_group_vector("test", std::move(g));
}

}  // namespace

TEST_CASE("percentile interval worked examples") {
    std::vector<double> s(100);
    for (int i = 0; i < 100; ++i) s[i] = (i + 1) / 1000.0;
    auto iv = percentile_interval(s, 0.95);
    CHECK(std::abs(iv.lower - 0.003475) < 1e-12);
    CHECK(std::abs(iv.upper - 0.097525) < 1e-12);

    iv = percentile_interval(std::vector<double>{3.0, 1.0, 2.0}, 0.95);
    CHECK(std::abs(iv.lower - 1.05) < 1e-12);
    CHECK(std::abs(iv.upper - 2.95) < 1e-12);

    iv = percentile_interval(std::vector<double>(17, 0.25), 0.9);
    CHECK(iv.lower == 0.25);
    CHECK(iv.upper == 0.25);

    CHECK(percentile_interval(std::vector<double>{4.0}, 0.95).lower == 4.0);
    CHECK_THROWS_AS(percentile_interval(std::vector<double>{}, 0.95), Error);
}

TEST_CASE("binomial resampling matches with-replacement resampling exactly") {
    for (int n = 1; n <= 5; ++n)
        for (int z = 0; z <= n; ++z) {
            const auto pmf = enumerate_resample_pmf(n, z);
            for (int k = 0; k <= n; ++k)
                CHECK(pmf[k] == doctest::Approx(binomial_pmf(n, k, static_cast<double>(z) / n)).epsilon(1e-12));
        }
}

TEST_CASE("resample_group") {
    Rng rng(1);
    const GroupOutcome half({"a"}, 2, 1);
    std::map<std::int64_t, int> freq;
    constexpr int draws = 40000;
    for (int i = 0; i < draws; ++i) {
        const auto r = resample_group(half, rng);
        CHECK(r.n() == 2);
        ++freq[r.z()];
    }
    // 4 binomial standard errors at p = 0.25 and 0.5.
    CHECK(std::abs(freq[0] / double(draws) - 0.25) < 4 * std::sqrt(0.25 * 0.75 / draws));
    CHECK(std::abs(freq[1] / double(draws) - 0.50) < 4 * std::sqrt(0.25 / draws));
    CHECK(std::abs(freq[2] / double(draws) - 0.25) < 4 * std::sqrt(0.25 * 0.75 / draws));

    for (int i = 0; i < 100; ++i) {
        CHECK(resample_group(GroupOutcome({"a"}, 13, 13), rng).y() == 1.0);
        CHECK(resample_group(GroupOutcome({"a"}, 13, 0), rng).y() == 0.0);
    }
}

TEST_CASE("bootstrap config validation") {
    const auto v = example_vector();
    const auto stat = variance_statistic(VarianceEstimator::uncorrected);
    CHECK_THROWS_AS(bootstrap_statistic(v, stat, {1, 0.95, 0, 1}), Error);
    CHECK_THROWS_AS(bootstrap_statistic(v, stat, {10, 1.0, 0, 1}), Error);
    CHECK_THROWS_AS(bootstrap_statistic(v, stat, {10, 0.0, 0, 1}), Error);
    const auto one = make_group_vector("m", {GroupOutcome({"a"}, 5, 2)});
    CHECK_THROWS_AS(bootstrap_statistic(one, stat, {10, 0.95, 0, 1}), Error);
}

TEST_CASE("bootstrap results are identical for any thread count") {
    const auto v = example_vector();
    const NamedStatistic stats[] = {variance_statistic(VarianceEstimator::uncorrected),
                                    variance_statistic(VarianceEstimator::double_corrected)};
    const auto serial = bootstrap_statistics(v, stats, {257, 0.9, 99, 1});
    for (unsigned threads : {2u, 3u, 8u}) {
        const auto par = bootstrap_statistics(v, stats, {257, 0.9, 99, threads});
        for (std::size_t s = 0; s < 2; ++s) {
            CHECK(par[s].samples == serial[s].samples);
            CHECK(par[s].lower == serial[s].lower);
            CHECK(par[s].upper == serial[s].upper);
        }
    }
    const auto other_seed = bootstrap_statistics(v, stats, {257, 0.9, 100, 1});
    CHECK(other_seed[0].samples != serial[0].samples);
}

TEST_CASE("bootstrap result shape") {
    const auto v = example_vector();
    const auto r = bootstrap_statistic(v, variance_statistic(VarianceEstimator::uncorrected), {500, 0.95, 5, 1});
    CHECK(r.statistic_name == "uncorrected_var");
    CHECK(r.samples.size() == 500);
    CHECK(r.lower <= r.upper);
    CHECK(r.point_estimate == sample_variance(v.rates()));
    const auto iv = percentile_interval(r.samples, 0.95);
    CHECK(iv.lower == r.lower);
    CHECK(iv.upper == r.upper);
}

TEST_CASE("uncorrected variance on a flat large-n vector bootstraps slightly above zero") {
    std::vector<GroupOutcome> g;
    for (int i = 0; i < 10; ++i) g.emplace_back(GroupKey{"g" + std::to_string(i)}, 10000, 3000);
    const auto v = make_group_vector("flat", std::move(g));
    const auto r = bootstrap_statistic(v, variance_statistic(VarianceEstimator::uncorrected), {500, 0.95, 42, 1});
    CHECK(r.point_estimate == 0.0);
    CHECK(r.lower > 0.0);
    CHECK(r.upper < 1e-3);
}

TEST_CASE("statistic failures name the resample") {
    const auto v = example_vector();
    NamedStatistic failing{"fails_on_third", [calls = std::make_shared<int>(0)](const GroupMetricVector& g) {
                               if (g.groups[0].z() >= 0 && ++*calls == 4) throw Error("boom");
                               return 0.0;
                           }};
    CHECK_THROWS_WITH_AS(bootstrap_statistic(v, failing, {10, 0.95, 1, 1}),
                         doctest::Contains("bootstrap resample 2"), Error);
}
