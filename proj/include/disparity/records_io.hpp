#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "disparity/group_metrics.hpp"

namespace disparity {

enum class InputFormat { records, aggregated };

[[nodiscard]] std::optional<InputFormat> parse_input_format(std::string_view name);

/// Pre-aggregated per-group counts. Rows with n = 0 are kept as exclusions.
struct AggregatedInput {
    std::vector<GroupOutcome> groups;
    std::vector<ExcludedGroup> excluded;
};

/// Splits one CSV line on commas. Double-quoted fields may contain commas and "" escapes.
[[nodiscard]] std::vector<std::string> split_csv_line(std::string_view line);

/// Records CSV: header row with `label` and `prediction` (0/1) plus any attribute columns.
[[nodiscard]] RecordTable parse_records_csv(std::string_view text);
/// Aggregated CSV: header row with `group`, `n`, `z`.
[[nodiscard]] AggregatedInput parse_aggregated_csv(std::string_view text);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

using LoadedInput = std::variant<RecordTable, AggregatedInput>;

/// Reads and parses `path`. Errors carry the 1-based line number of the offending row.
[[nodiscard]] LoadedInput load_records(const std::filesystem::path& path, InputFormat format);

}  // namespace disparity
