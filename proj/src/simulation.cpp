#include "disparity/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "disparity/error.hpp"
#include "disparity/parallel.hpp"

namespace disparity {

Scenario::Scenario(std::string name, std::vector<double> mu, std::vector<std::int64_t> n)
    : name_(std::move(name)), mu_(std::move(mu)), n_(std::move(n)) {
    if (mu_.size() != n_.size()) throw Error("scenario '" + name_ + "': mu and n differ in length");
    if (mu_.size() < 2) throw Error("scenario '" + name_ + "': needs at least 2 groups");
    for (double m : mu_)
        if (!(m >= 0.0 && m <= 1.0)) throw Error("scenario '" + name_ + "': every mu must lie in [0, 1]");
    for (auto size : n_)
        if (size < 1) throw Error("scenario '" + name_ + "': every group size must be at least 1");
}

double Scenario::true_variance() const { return sample_variance(mu_); }

double Scenario::mean_sampling_variance() const {
    double s = 0.0;
    for (std::size_t i = 0; i < k(); ++i) s += mu_[i] * (1.0 - mu_[i]) / static_cast<double>(n_[i]);
    return s / static_cast<double>(k());
}

std::vector<double> equally_spaced(double lower, double upper, std::size_t k) {
    if (k < 2) throw Error("equally spaced grid needs K >= 2");
    std::vector<double> out(k);
    for (std::size_t i = 0; i < k; ++i)
        out[i] = lower + static_cast<double>(i) * (upper - lower) / static_cast<double>(k - 1);
    return out;
}

std::vector<Scenario> standard_scenarios() {
    constexpr std::size_t k = 100;
    const std::vector<double> equal_perf(k, 0.8);
    const auto unequal_perf = equally_spaced(0.1, 0.9, k);
    const std::vector<std::int64_t> equal_size(k, 50);
    std::vector<std::int64_t> unequal_size;
    for (double v : equally_spaced(10.0, 90.0, k)) unequal_size.push_back(std::llround(v));

    return {
        Scenario("Equal Size; Equal Perf", equal_perf, equal_size),
        Scenario("Unequal Size; Equal Perf", equal_perf, unequal_size),
        Scenario("Equal Size; Unequal Perf", unequal_perf, equal_size),
        Scenario("Unequal Size; Unequal Perf", unequal_perf, unequal_size),
    };
}

namespace {

std::string group_name(std::size_t i) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "g%03zu", i + 1);
    return buf;
}

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Central differences of M at mu; where M is not differentiable this is still a fixed vector,
// which is all the control variate needs.
std::vector<double> gradient_at(std::span<const double> mu, const MetaMetricKind& kind) {
    constexpr double h = 1e-6;
    std::vector<double> point(mu.begin(), mu.end());
    std::vector<double> g(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double orig = point[i];
        point[i] = orig + h;
        const double up = meta_metric(point, kind).value;
        point[i] = orig - h;
        const double down = meta_metric(point, kind).value;
        point[i] = orig;
        g[i] = (up - down) / (2.0 * h);
    }
    return g;
}

double standard_error(std::span<const double> v) {
    if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(sample_variance(v) / static_cast<double>(v.size()));
}

}  // namespace

GroupMetricVector draw_replicate(const Scenario& scenario, Rng& rng) {
    std::vector<GroupOutcome> groups;
    groups.reserve(scenario.k());
    for (std::size_t i = 0; i < scenario.k(); ++i) {
        const auto n = scenario.n()[i];
        groups.emplace_back(GroupKey{group_name(i)}, n, draw_binomial(rng, n, scenario.mu()[i]));
    }
    return make_group_vector("simulated", std::move(groups));
}

// ---------------------------------------------------------------------------

void BiasSweepConfig::validate() const {
    if (total_n < 1) throw Error("total_n must be positive");
    if (replicates < 2) throw Error("bias sweep needs at least 2 replicates");
    if (k_grid.empty() || lower_bounds.empty()) throw Error("bias sweep grid is empty");
    if (!(upper > 0.0 && upper <= 1.0)) throw Error("upper bound must lie in (0, 1]");
    for (auto k : k_grid) {
        if (k < 2) throw Error("every K in the grid must be at least 2");
        if (std::llround(static_cast<double>(total_n) / static_cast<double>(k)) < 1)
            throw Error("total_n / K rounds to zero for K = " + std::to_string(k));
    }
    for (double l : lower_bounds)
        if (!(l >= 0.0 && l <= upper)) throw Error("every lower bound must lie in [0, upper]");
    (void)MetaMetricKind::generalized_entropy(gei_alpha);
}

std::vector<MetaMetricKind> sweep_metrics(double gei_alpha) {
    return {MetaMetricKind::max_min_diff(), MetaMetricKind::max_min_ratio(), MetaMetricKind::max_abs_diff(),
            MetaMetricKind::mean_abs_dev(), MetaMetricKind::variance(),
            MetaMetricKind::generalized_entropy(gei_alpha)};
}

std::vector<BiasCell> bias_sweep(const BiasSweepConfig& config) {
    config.validate();
    const auto metrics = sweep_metrics(config.gei_alpha);
    const std::size_t n_metrics = metrics.size();
    const std::size_t n_l = config.lower_bounds.size();
    const std::size_t n_cells = config.k_grid.size() * n_l;

    std::vector<BiasCell> out(n_cells * n_metrics);
    parallel_chunks(n_cells, config.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            const std::size_t ki = c / n_l;
            const std::size_t li = c % n_l;
            const std::size_t k = config.k_grid[ki];
            const double lower = config.lower_bounds[li];
            const auto n = std::llround(static_cast<double>(config.total_n) / static_cast<double>(k));
            const Scenario scenario("sweep", equally_spaced(lower, config.upper, k),
                                    std::vector<std::int64_t>(k, n));

            std::vector<double> truth(n_metrics);
            std::vector<std::vector<double>> grad(n_metrics);
            for (std::size_t m = 0; m < n_metrics; ++m) {
                truth[m] = meta_metric(scenario.mu(), metrics[m]).value;
                grad[m] = gradient_at(scenario.mu(), metrics[m]);
            }
            std::vector<std::vector<double>> bias(n_metrics);
            std::vector<std::vector<double>> cv(n_metrics);
            std::vector<std::size_t> undefined(n_metrics, 0);

            for (std::size_t r = 0; r < config.replicates; ++r) {
                Rng rng = make_rng(config.seed, {ki, li, r});
                const auto y = draw_replicate(scenario, rng).rates();
                for (std::size_t m = 0; m < n_metrics; ++m) {
                    try {
                        const double b = meta_metric(y, metrics[m]).value - truth[m];
                        double linear = 0.0;
                        for (std::size_t i = 0; i < k; ++i) linear += grad[m][i] * (y[i] - scenario.mu()[i]);
                        bias[m].push_back(b);
                        cv[m].push_back(b - linear);
                    } catch (const Error&) {
                        ++undefined[m];
                    }
                }
            }

            for (std::size_t m = 0; m < n_metrics; ++m) {
                BiasCell& cell = out[c * n_metrics + m];
                cell.metric = metrics[m].name();
                cell.k = k;
                cell.lower = lower;
                cell.n_per_group = n;
                cell.true_value = truth[m];
                cell.replicates_used = bias[m].size();
                cell.undefined_replicates = undefined[m];
                cell.mean_bias = bias[m].empty() ? std::numeric_limits<double>::quiet_NaN() : mean_of(bias[m]);
                cell.mc_se = standard_error(bias[m]);
                cell.cv_bias = cv[m].empty() ? std::numeric_limits<double>::quiet_NaN() : mean_of(cv[m]);
                cell.cv_se = standard_error(cv[m]);
                cell.analytic_bias = metrics[m].tag() == MetaMetricKind::Tag::variance
                                         ? scenario.mean_sampling_variance()
                                         : std::numeric_limits<double>::quiet_NaN();
            }
        }
    });
    return out;
}

// ---------------------------------------------------------------------------

namespace {

template <typename Proj>
std::vector<double> project(const std::vector<VarianceEstimate>& v, Proj proj) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(proj(e));
    return out;
}

}  // namespace

double ReplicateSummary::mean_uncorrected() const {
    return mean_of(project(estimates, [](const VarianceEstimate& e) { return e.uncorrected; }));
}
double ReplicateSummary::mean_corrected_raw() const {
    return mean_of(project(estimates, [](const VarianceEstimate& e) { return e.corrected_raw; }));
}
double ReplicateSummary::se_corrected_raw() const {
    return standard_error(project(estimates, [](const VarianceEstimate& e) { return e.corrected_raw; }));
}
double ReplicateSummary::se_uncorrected() const {
    return standard_error(project(estimates, [](const VarianceEstimate& e) { return e.uncorrected; }));
}

ReplicateSummary replicate_study(const Scenario& scenario, std::size_t replicates, std::uint64_t seed,
                                 unsigned threads) {
    if (replicates < 2) throw Error("replicate study needs at least 2 replicates");
    ReplicateSummary summary{scenario.name(), scenario.true_variance(), scenario.mean_sampling_variance(),
                             std::vector<VarianceEstimate>(replicates)};
    parallel_chunks(replicates, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            Rng rng = make_rng(seed, {r});
            summary.estimates[r] = corrected_variance(draw_replicate(scenario, rng));
        }
    });
    return summary;
}

// ---------------------------------------------------------------------------

void CoverageConfig::validate() const {
    if (replicates < 1) throw Error("coverage study needs at least 1 replicate");
    if (estimators.empty()) throw Error("coverage study needs at least one estimator");
    bootstrap.validate();
}

const CoverageCell& CoverageReport::at(std::string_view scenario, VarianceEstimator e) const {
    for (const auto& c : cells)
        if (c.scenario == scenario && c.estimator == e) return c;
    throw Error("no coverage cell for scenario '" + std::string(scenario) + "'");
}

CoverageReport coverage_study(std::span<const Scenario> scenarios, const CoverageConfig& config) {
    config.validate();
    std::vector<NamedStatistic> stats;
    for (auto e : config.estimators) stats.push_back(variance_statistic(e, config.truncate));
    const std::size_t n_est = stats.size();

    CoverageReport report;
    report.replicates = config.replicates;
    report.b = config.bootstrap.b;
    report.level = config.bootstrap.level;

    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        const Scenario& scenario = scenarios[s];
        const double truth = scenario.true_variance();
        // intervals[r * n_est + e]
        std::vector<Interval> intervals(config.replicates * n_est);

        parallel_chunks(config.replicates, config.threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t r = begin; r < end; ++r) {
                Rng rng = make_rng(config.seed, {s, r, 0});
                const auto data = draw_replicate(scenario, rng);
                BootstrapConfig boot = config.bootstrap;
                boot.seed = derive_seed(config.seed, {s, r, 1});
                boot.threads = 1;
                const auto results = bootstrap_statistics(data, stats, boot);
                for (std::size_t e = 0; e < n_est; ++e) intervals[r * n_est + e] = results[e].interval();
            }
        });

        for (std::size_t e = 0; e < n_est; ++e) {
            CoverageCell cell{scenario.name(), config.estimators[e]};
            for (std::size_t r = 0; r < config.replicates; ++r) {
                const auto& iv = intervals[r * n_est + e];
                cell.covered += iv.contains(truth);
                cell.mean_lower += iv.lower;
                cell.mean_upper += iv.upper;
            }
            const auto reps = static_cast<double>(config.replicates);
            cell.coverage_pct = 100.0 * static_cast<double>(cell.covered) / reps;
            cell.mean_lower /= reps;
            cell.mean_upper /= reps;
            report.cells.push_back(cell);
        }
    }
    return report;
}

}  // namespace disparity
