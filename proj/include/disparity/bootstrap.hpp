#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "disparity/group_metrics.hpp"
#include "disparity/random.hpp"

namespace disparity {

struct BootstrapConfig {
    std::size_t b = 500;       // number of resamples
    double level = 0.95;       // two-sided confidence level
    std::uint64_t seed = 0;
    unsigned threads = 1;      // 0 = all hardware threads; results do not depend on this

    /// Throws Error unless b >= 2 and 0 < level < 1.
    void validate() const;
};

struct Interval {
    double lower = 0.0;
    double upper = 0.0;

    [[nodiscard]] bool contains(double x) const noexcept { return lower <= x && x <= upper; }
};

struct BootstrapResult {
    std::string statistic_name;
    std::vector<double> samples;  // in resample order
    double lower = 0.0;
    double upper = 0.0;
    double point_estimate = 0.0;  // statistic on the original data

    [[nodiscard]] Interval interval() const noexcept { return {lower, upper}; }
};

using Statistic = std::function<double(const GroupMetricVector&)>;

struct NamedStatistic {
    std::string name;
    Statistic fn;
};

/// Draws z* ~ Binomial(n, y) with the group size held fixed. This has exactly the
/// distribution of counting successes among n with-replacement draws from the group.
[[nodiscard]] GroupOutcome resample_group(const GroupOutcome& outcome, Rng& rng);

/// Resamples every group of `source` into `target`, which must have the same shape.
void resample_into(const GroupMetricVector& source, GroupMetricVector& target, Rng& rng);

/// Linear interpolation between order statistics at position 1 + (b-1)q (1-based).
[[nodiscard]] double empirical_quantile(std::span<const double> sorted, double q);

/// Quantiles (1-level)/2 and 1-(1-level)/2 of `samples`.
[[nodiscard]] Interval percentile_interval(std::span<const double> samples, double level);

/// Percentile bootstrap of several statistics evaluated on the same resamples.
/// Resample i draws from the substream (config.seed, i), so the output is identical for any
/// thread count. A statistic that throws on a resample is reported with the resample index.
[[nodiscard]] std::vector<BootstrapResult> bootstrap_statistics(const GroupMetricVector& groups,
                                                                std::span<const NamedStatistic> statistics,
                                                                const BootstrapConfig& config);

[[nodiscard]] BootstrapResult bootstrap_statistic(const GroupMetricVector& groups, const NamedStatistic& statistic,
                                                  const BootstrapConfig& config);

}  // namespace disparity
