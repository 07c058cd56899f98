#pragma once

#include <optional>
#include <string_view>

#include "disparity/bootstrap.hpp"

namespace disparity {

/// Between-group variance estimators that can be bootstrapped.
enum class VarianceEstimator { uncorrected, corrected, double_corrected };

inline constexpr VarianceEstimator kAllVarianceEstimators[] = {
    VarianceEstimator::uncorrected, VarianceEstimator::corrected, VarianceEstimator::double_corrected};

[[nodiscard]] std::string_view to_string(VarianceEstimator e);
[[nodiscard]] std::optional<VarianceEstimator> parse_variance_estimator(std::string_view name);

/// The estimator as a bootstrap statistic. `truncate` floors the corrected forms at zero.
[[nodiscard]] NamedStatistic variance_statistic(VarianceEstimator e, bool truncate = true);

}  // namespace disparity
