#include "disparity/estimators.hpp"

#include <string>

#include "disparity/meta_metrics.hpp"
#include "disparity/variance_estimators.hpp"

namespace disparity {

std::string_view to_string(VarianceEstimator e) {
    switch (e) {
        case VarianceEstimator::uncorrected: return "uncorrected_var";
        case VarianceEstimator::corrected: return "corrected_var";
        case VarianceEstimator::double_corrected: return "double_corrected_var";
    }
    return "unknown";
}

std::optional<VarianceEstimator> parse_variance_estimator(std::string_view name) {
    for (auto e : kAllVarianceEstimators) {
        auto full = to_string(e);
        if (name == full || name == full.substr(0, full.size() - 4)) return e;
    }
    return std::nullopt;
}

NamedStatistic variance_statistic(VarianceEstimator e, bool truncate) {
    std::string name(to_string(e));
    switch (e) {
        case VarianceEstimator::uncorrected:
            return {name, [](const GroupMetricVector& g) { return sample_variance(g.rates()); }};
        case VarianceEstimator::corrected:
            if (truncate) return {name, [](const GroupMetricVector& g) { return corrected_variance(g).corrected; }};
            return {name, [](const GroupMetricVector& g) { return corrected_variance(g).corrected_raw; }};
        case VarianceEstimator::double_corrected:
            if (truncate) return {name, [](const GroupMetricVector& g) { return double_corrected_variance(g); }};
            return {name, [](const GroupMetricVector& g) { return double_corrected_variance_raw(g); }};
    }
    return {name, {}};
}

}  // namespace disparity
