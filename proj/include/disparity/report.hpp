#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "disparity/analysis.hpp"
#include "disparity/simulation.hpp"

namespace disparity {

/// Shortest decimal text that parses back to exactly `x` ("nan"/"inf" for non-finite).
[[nodiscard]] std::string format_double(double x);

[[nodiscard]] nlohmann::json report_to_json(const DisparityReport& report);
[[nodiscard]] DisparityReport report_from_json(const nlohmann::json& j);

/// Long format: base_metric,grouping,statistic,value,lower,upper. Per-group rates appear as
/// `rate[<key>]`, exclusions as `excluded[<key>]` with the reason in the value column.
[[nodiscard]] std::string report_to_csv(const DisparityReport& report);

[[nodiscard]] std::string render_report(const DisparityReport& report, OutputFormat format);

[[nodiscard]] nlohmann::json bias_sweep_to_json(std::span<const BiasCell> cells);
[[nodiscard]] std::string bias_sweep_to_csv(std::span<const BiasCell> cells);
[[nodiscard]] nlohmann::json coverage_to_json(const CoverageReport& report);
[[nodiscard]] std::string coverage_to_csv(const CoverageReport& report);
[[nodiscard]] nlohmann::json scenarios_to_json(std::span<const Scenario> scenarios);
[[nodiscard]] std::string scenarios_to_csv(std::span<const Scenario> scenarios);

/// Writes `text` to `path`, throwing Error on any I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Renders and writes the report.
void emit_report(const DisparityReport& report, const std::filesystem::path& path, OutputFormat format);

}  // namespace disparity
