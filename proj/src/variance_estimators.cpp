#include "disparity/variance_estimators.hpp"

#include <algorithm>

#include "disparity/error.hpp"
#include "disparity/meta_metrics.hpp"

namespace disparity {

namespace {

void require_groups(const GroupMetricVector& groups) {
    if (groups.k() < 2) throw Error("variance estimate needs at least 2 groups, got " + std::to_string(groups.k()));
}

}  // namespace

VarianceEstimate corrected_variance(const GroupMetricVector& groups) {
    require_groups(groups);
    const auto y = groups.rates();
    VarianceEstimate est;
    est.uncorrected = sample_variance(y);
    for (const auto& g : groups.groups) est.correction_term += plug_in_variance(g);
    est.correction_term /= static_cast<double>(groups.k());
    est.corrected_raw = est.uncorrected - est.correction_term;
    est.corrected = std::max(0.0, est.corrected_raw);
    return est;
}

double bootstrap_sample_variance(const GroupOutcome& outcome) noexcept {
    const double y = outcome.y();
    const double n = static_cast<double>(outcome.n());
    const double p = y * (1.0 - y);
    return 2.0 * p / n - p / (n * n);
}

double double_corrected_variance_raw(const GroupMetricVector& bootstrap_groups) {
    require_groups(bootstrap_groups);
    double correction = 0.0;
    for (const auto& g : bootstrap_groups.groups) correction += bootstrap_sample_variance(g);
    correction /= static_cast<double>(bootstrap_groups.k());
    return sample_variance(bootstrap_groups.rates()) - correction;
}

double double_corrected_variance(const GroupMetricVector& bootstrap_groups) {
    return std::max(0.0, double_corrected_variance_raw(bootstrap_groups));
}

}  // namespace disparity
