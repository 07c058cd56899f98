#pragma once

#include "disparity/group_metrics.hpp"

namespace disparity {

/// Between-group variance of the observed rates, with and without the sampling-noise correction.
struct VarianceEstimate {
    double uncorrected = 0.0;      // sample variance of the rates, divisor K-1
    double correction_term = 0.0;  // mean plug-in sampling variance (1/K) sum y(1-y)/n
    double corrected_raw = 0.0;    // uncorrected - correction_term, may be negative
    double corrected = 0.0;        // corrected_raw floored at zero

    [[nodiscard]] bool truncated() const noexcept { return corrected_raw < 0.0; }
};

/// Uncorrected and single-corrected estimates of the variance of the true per-group rates.
[[nodiscard]] VarianceEstimate corrected_variance(const GroupMetricVector& groups);

/// Plug-in sampling variance of a rate that was itself drawn by resampling within its group:
/// 2y(1-y)/n - y(1-y)/n^2.
[[nodiscard]] double bootstrap_sample_variance(const GroupOutcome& outcome) noexcept;

/// Variance of the rates of one bootstrap resample minus the mean of bootstrap_sample_variance,
/// before truncation.
[[nodiscard]] double double_corrected_variance_raw(const GroupMetricVector& bootstrap_groups);

/// Truncated form of double_corrected_variance_raw. Only meaningful when evaluated on bootstrap
/// resamples; on the original data it over-corrects.
[[nodiscard]] double double_corrected_variance(const GroupMetricVector& bootstrap_groups);

}  // namespace disparity
