#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "disparity/bootstrap.hpp"
#include "disparity/group_metrics.hpp"
#include "disparity/meta_metrics.hpp"
#include "disparity/records_io.hpp"
#include "disparity/variance_estimators.hpp"

namespace disparity {

enum class OutputFormat { json, csv };

[[nodiscard]] std::optional<OutputFormat> parse_output_format(std::string_view name);

/// Meta-metrics reported when the caller asks for none: the ones defined for any rate vector.
[[nodiscard]] std::vector<MetaMetricKind> default_meta_metrics();

struct AnalysisRequest {
    std::filesystem::path input;
    InputFormat format = InputFormat::records;
    /// Each entry is one grouping; several columns form an intersectional grouping.
    std::vector<std::vector<std::string>> groupings;
    std::vector<BaseMetric> metrics;
    /// Label for pre-aggregated counts, which carry no base metric of their own.
    std::string aggregated_label = "rate";
    std::vector<MetaMetricKind> meta_metrics = default_meta_metrics();
    BootstrapConfig bootstrap{};
    std::optional<std::filesystem::path> output;
    OutputFormat output_format = OutputFormat::json;

    void validate() const;
};

/// Results for one (base metric, grouping) pair.
struct ReportEntry {
    std::string base_metric;
    std::string grouping;  // grouping columns joined by ','
    GroupMetricVector groups;
    std::vector<MetaMetricResult> meta_metrics;
    VarianceEstimate variance;
    BootstrapResult uncorrected;
    BootstrapResult double_corrected;
};

struct DisparityReport {
    std::vector<ReportEntry> entries;
    std::size_t b = 0;
    double level = 0.0;
    std::uint64_t seed = 0;
};

/// Bootstrap seed for one entry; depends on the names only, never on entry order.
[[nodiscard]] std::uint64_t entry_seed(std::uint64_t seed, std::string_view base_metric, std::string_view grouping);

/// Meta-metrics, variance estimates and bootstrap intervals for one vector of group outcomes.
[[nodiscard]] ReportEntry analyze_groups(GroupMetricVector groups, std::string grouping,
                                         std::span<const MetaMetricKind> meta_metrics, const BootstrapConfig& bootstrap);

/// Every (metric, grouping) pair over in-memory records.
[[nodiscard]] DisparityReport analyze_records(const RecordTable& table, std::span<const BaseMetric> metrics,
                                              std::span<const std::vector<std::string>> groupings,
                                              std::span<const MetaMetricKind> meta_metrics,
                                              const BootstrapConfig& bootstrap);

/// Pre-aggregated counts under one label, grouped by the `group` column.
[[nodiscard]] DisparityReport analyze_aggregated(const AggregatedInput& input, const std::string& label,
                                                 std::span<const MetaMetricKind> meta_metrics,
                                                 const BootstrapConfig& bootstrap);

/// Loads request.input and runs the full pipeline. Does not write the output.
[[nodiscard]] DisparityReport run_analysis(const AnalysisRequest& request);

}  // namespace disparity
