#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace disparity {

/// Ordered category labels identifying a group, one entry per grouping column.
using GroupKey = std::vector<std::string>;

/// Label used for a grouping column value that is empty in the input.
inline constexpr std::string_view kMissingValue = "<missing>";

enum class BaseMetric { accuracy, false_positive_rate, true_positive_rate, selection_rate };

[[nodiscard]] std::string_view to_string(BaseMetric metric);
/// Accepts the long names ("true_positive_rate") and the short ones ("tpr", "fpr", "sr", "acc").
[[nodiscard]] std::optional<BaseMetric> parse_base_metric(std::string_view name);

struct ClassificationRecord {
    GroupKey group_key;
    std::uint8_t label = 0;       // true outcome, 0 or 1
    std::uint8_t prediction = 0;  // thresholded model output, 0 or 1
};

/// Per-group binomial outcome: z successes out of n trials.
class GroupOutcome {
public:
    GroupOutcome(GroupKey key, std::int64_t n, std::int64_t z);

    [[nodiscard]] const GroupKey& key() const noexcept { return key_; }
    [[nodiscard]] std::int64_t n() const noexcept { return n_; }
    [[nodiscard]] std::int64_t z() const noexcept { return z_; }
    [[nodiscard]] double y() const noexcept { return static_cast<double>(z_) / static_cast<double>(n_); }

    /// Same group and size with a different success count.
    [[nodiscard]] GroupOutcome with_successes(std::int64_t z) const;
    /// In-place form of with_successes, for reusing resample buffers.
    void set_successes(std::int64_t z);

    friend bool operator==(const GroupOutcome&, const GroupOutcome&) = default;

private:
    GroupKey key_;
    std::int64_t n_;
    std::int64_t z_;
};

struct ExcludedGroup {
    GroupKey key;
    std::string reason;

    friend bool operator==(const ExcludedGroup&, const ExcludedGroup&) = default;
};

/// Outcomes of one base metric over K groups, sorted by key.
struct GroupMetricVector {
    std::string metric;  // base metric name, or a caller-chosen label for pre-aggregated counts
    std::vector<GroupOutcome> groups;
    std::vector<ExcludedGroup> excluded;

    [[nodiscard]] std::size_t k() const noexcept { return groups.size(); }
    [[nodiscard]] std::vector<double> rates() const;
};

/// Builds a vector from already-counted outcomes. Keys must be unique; the result is sorted.
[[nodiscard]] GroupMetricVector make_group_vector(std::string metric, std::vector<GroupOutcome> groups,
                                                  std::vector<ExcludedGroup> excluded = {});

/// Tabular records: attribute columns plus label and prediction.
struct RecordTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // rows[i][j] is the value of columns[j]
    std::vector<std::uint8_t> labels;
    std::vector<std::uint8_t> predictions;

    [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
};

/// Keys every record by the cross product of `columns`; empty values become `<missing>`.
[[nodiscard]] std::vector<ClassificationRecord> intersect_groups(const RecordTable& table,
                                                                 std::span<const std::string> columns);

/// Counts (n, z) per group for `metric`. Groups with a zero denominator go to `excluded`.
/// Throws Error("insufficient groups") when fewer than two groups remain.
[[nodiscard]] GroupMetricVector aggregate(std::span<const ClassificationRecord> records, BaseMetric metric);

[[nodiscard]] GroupMetricVector aggregate(const RecordTable& table, BaseMetric metric,
                                          std::span<const std::string> group_columns);

/// Binomial plug-in sampling variance y(1-y)/n.
[[nodiscard]] double plug_in_variance(const GroupOutcome& outcome) noexcept;

/// Joins key parts with '|' for display.
[[nodiscard]] std::string key_label(const GroupKey& key);

}  // namespace disparity
