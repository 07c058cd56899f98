#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "disparity/bootstrap.hpp"
#include "disparity/estimators.hpp"
#include "disparity/group_metrics.hpp"
#include "disparity/meta_metrics.hpp"
#include "disparity/random.hpp"
#include "disparity/variance_estimators.hpp"

namespace disparity {

/// True per-group rates and group sizes for the binomial generative model.
class Scenario {
public:
    Scenario(std::string name, std::vector<double> mu, std::vector<std::int64_t> n);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::span<const double> mu() const noexcept { return mu_; }
    [[nodiscard]] std::span<const std::int64_t> n() const noexcept { return n_; }
    [[nodiscard]] std::size_t k() const noexcept { return mu_.size(); }

    /// Variance of mu with divisor K-1, computed directly from the parameters.
    [[nodiscard]] double true_variance() const;
    /// (1/K) sum mu(1-mu)/n: the expected upward shift of the uncorrected variance.
    [[nodiscard]] double mean_sampling_variance() const;

private:
    std::string name_;
    std::vector<double> mu_;
    std::vector<std::int64_t> n_;
};

/// mu_k = lower + (k-1)(upper-lower)/(K-1), k = 1..K. Requires K >= 2.
[[nodiscard]] std::vector<double> equally_spaced(double lower, double upper, std::size_t k);

/// The four equal/unequal performance x equal/unequal group-size scenarios with K = 100,
/// ordered: equal size/equal perf, unequal size/equal perf, equal size/unequal perf,
/// unequal size/unequal perf.
[[nodiscard]] std::vector<Scenario> standard_scenarios();

/// One draw z_k ~ Binomial(n_k, mu_k). Groups are keyed "g001", "g002", ...
[[nodiscard]] GroupMetricVector draw_replicate(const Scenario& scenario, Rng& rng);

// ---------------------------------------------------------------------------
// Bias sweep

struct BiasSweepConfig {
    std::int64_t total_n = 5000;
    std::vector<std::size_t> k_grid{5, 10, 25, 50, 75, 100, 125, 150};
    std::vector<double> lower_bounds{0.1, 0.5, 0.7, 0.9};
    double upper = 0.9;
    std::size_t replicates = 1000;
    double gei_alpha = 2.0;
    std::uint64_t seed = 20220601;
    unsigned threads = 0;

    void validate() const;
};

struct BiasCell {
    std::string metric;
    std::size_t k = 0;
    double lower = 0.0;
    std::int64_t n_per_group = 0;
    double true_value = 0.0;      // M(mu)
    double mean_bias = 0.0;       // mean of M(Y) - M(mu) over replicates where M(Y) is defined
    double mc_se = 0.0;           // Monte-Carlo standard error of mean_bias
    /// Control-variate estimate of the same bias: mean of M(Y) - M(mu) - g.(Y - mu) with g the
    /// central-difference gradient of M at mu. The subtracted term has expectation exactly zero.
    double cv_bias = 0.0;
    double cv_se = 0.0;
    double analytic_bias = 0.0;   // exact expected bias; NaN where no closed form exists
    std::size_t replicates_used = 0;
    std::size_t undefined_replicates = 0;  // draws where M(Y) was undefined (a zero rate)
};

/// The meta-metrics swept by bias_sweep, in output order.
[[nodiscard]] std::vector<MetaMetricKind> sweep_metrics(double gei_alpha);

/// Monte-Carlo bias of every meta-metric over the (K, lower bound) grid, with n_k = round(total_n / K).
/// All metrics in a cell are evaluated on the same draws.
[[nodiscard]] std::vector<BiasCell> bias_sweep(const BiasSweepConfig& config);

// ---------------------------------------------------------------------------
// Replicate study: point estimates across independent draws

struct ReplicateSummary {
    std::string scenario;
    double true_variance = 0.0;
    double analytic_correction = 0.0;
    std::vector<VarianceEstimate> estimates;

    [[nodiscard]] double mean_uncorrected() const;
    [[nodiscard]] double mean_corrected_raw() const;
    [[nodiscard]] double se_corrected_raw() const;
    [[nodiscard]] double se_uncorrected() const;
};

[[nodiscard]] ReplicateSummary replicate_study(const Scenario& scenario, std::size_t replicates, std::uint64_t seed,
                                               unsigned threads = 0);

// ---------------------------------------------------------------------------
// Coverage study

struct CoverageConfig {
    std::size_t replicates = 1000;
    BootstrapConfig bootstrap{};  // bootstrap.seed and bootstrap.threads are ignored; see coverage_study
    std::vector<VarianceEstimator> estimators{kAllVarianceEstimators[0], kAllVarianceEstimators[1],
                                              kAllVarianceEstimators[2]};
    bool truncate = true;
    std::uint64_t seed = 20220601;
    unsigned threads = 0;

    void validate() const;
};

struct CoverageCell {
    std::string scenario;
    VarianceEstimator estimator;
    std::size_t covered = 0;
    double coverage_pct = 0.0;
    double mean_lower = 0.0;
    double mean_upper = 0.0;
};

struct CoverageReport {
    std::vector<CoverageCell> cells;  // scenario-major, then estimator
    std::size_t replicates = 0;
    std::size_t b = 0;
    double level = 0.0;

    [[nodiscard]] const CoverageCell& at(std::string_view scenario, VarianceEstimator e) const;
};

/// For each scenario and replicate r, draws data from substream (seed, scenario, r, 0), bootstraps
/// every estimator on resamples from substream (seed, scenario, r, 1), and records whether each
/// percentile interval contains the scenario's true variance. Replicates run in parallel; the
/// report is identical for any thread count.
[[nodiscard]] CoverageReport coverage_study(std::span<const Scenario> scenarios, const CoverageConfig& config);

}  // namespace disparity
