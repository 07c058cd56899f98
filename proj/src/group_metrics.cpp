#include "disparity/group_metrics.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "disparity/error.hpp"

namespace disparity {

std::string_view to_string(BaseMetric metric) {
    switch (metric) {
        case BaseMetric::accuracy: return "accuracy";
        case BaseMetric::false_positive_rate: return "false_positive_rate";
        case BaseMetric::true_positive_rate: return "true_positive_rate";
        case BaseMetric::selection_rate: return "selection_rate";
    }
    return "unknown";
}

std::optional<BaseMetric> parse_base_metric(std::string_view name) {
    if (name == "accuracy" || name == "acc") return BaseMetric::accuracy;
    if (name == "false_positive_rate" || name == "fpr") return BaseMetric::false_positive_rate;
    if (name == "true_positive_rate" || name == "tpr") return BaseMetric::true_positive_rate;
    if (name == "selection_rate" || name == "sr") return BaseMetric::selection_rate;
    return std::nullopt;
}

GroupOutcome::GroupOutcome(GroupKey key, std::int64_t n, std::int64_t z)
    : key_(std::move(key)), n_(n), z_(z) {
    if (key_.empty()) throw Error("group key must be non-empty");
    if (n_ < 1) throw Error("group '" + key_label(key_) + "': trial count must be at least 1");
    if (z_ < 0 || z_ > n_)
        throw Error("group '" + key_label(key_) + "': success count " + std::to_string(z_) +
                    " outside [0, " + std::to_string(n_) + "]");
}

GroupOutcome GroupOutcome::with_successes(std::int64_t z) const { return GroupOutcome(key_, n_, z); }

void GroupOutcome::set_successes(std::int64_t z) {
    if (z < 0 || z > n_) throw Error("success count outside [0, n]");
    z_ = z;
}

std::vector<double> GroupMetricVector::rates() const {
    std::vector<double> out;
    out.reserve(groups.size());
    for (const auto& g : groups) out.push_back(g.y());
    return out;
}

GroupMetricVector make_group_vector(std::string metric, std::vector<GroupOutcome> groups,
                                    std::vector<ExcludedGroup> excluded) {
    std::ranges::sort(groups, {}, &GroupOutcome::key);
    auto dup = std::ranges::adjacent_find(groups, {}, &GroupOutcome::key);
    if (dup != groups.end()) throw Error("duplicate group '" + key_label(dup->key()) + "'");
    std::ranges::sort(excluded, {}, &ExcludedGroup::key);
    return GroupMetricVector{std::move(metric), std::move(groups), std::move(excluded)};
}

std::vector<ClassificationRecord> intersect_groups(const RecordTable& table, std::span<const std::string> columns) {
    if (columns.empty()) throw Error("at least one group column is required");
    std::vector<std::size_t> index;
    index.reserve(columns.size());
    for (const auto& name : columns) {
        auto it = std::ranges::find(table.columns, name);
        if (it == table.columns.end()) throw Error("unknown group column '" + name + "'");
        index.push_back(static_cast<std::size_t>(it - table.columns.begin()));
    }

    std::vector<ClassificationRecord> out;
    out.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        GroupKey key;
        key.reserve(index.size());
        for (auto j : index) {
            const auto& v = table.rows[i][j];
            key.push_back(v.empty() ? std::string(kMissingValue) : v);
        }
        out.push_back({std::move(key), table.labels[i], table.predictions[i]});
    }
    return out;
}

namespace {

struct Counts {
    std::int64_t n = 0;
    std::int64_t z = 0;
};

std::string_view empty_denominator_reason(BaseMetric metric) {
    switch (metric) {
        case BaseMetric::false_positive_rate: return "no truly negative records";
        case BaseMetric::true_positive_rate: return "no truly positive records";
        default: return "no records";
    }
}

}  // namespace

GroupMetricVector aggregate(std::span<const ClassificationRecord> records, BaseMetric metric) {
    if (records.empty()) throw Error("no records to aggregate");

    std::map<GroupKey, Counts> counts;
    for (const auto& r : records) {
        if (r.group_key.empty()) throw Error("record with empty group key");
        if (r.label > 1 || r.prediction > 1) throw Error("label and prediction must be 0 or 1");
        auto& c = counts[r.group_key];
        switch (metric) {
            case BaseMetric::accuracy:
                ++c.n;
                c.z += r.label == r.prediction;
                break;
            case BaseMetric::selection_rate:
                ++c.n;
                c.z += r.prediction;
                break;
            case BaseMetric::false_positive_rate:
                if (r.label == 0) {
                    ++c.n;
                    c.z += r.prediction;
                }
                break;
            case BaseMetric::true_positive_rate:
                if (r.label == 1) {
                    ++c.n;
                    c.z += r.prediction;
                }
                break;
        }
    }

    std::vector<GroupOutcome> groups;
    std::vector<ExcludedGroup> excluded;
    for (auto& [key, c] : counts) {
        if (c.n == 0)
            excluded.push_back({key, std::string(empty_denominator_reason(metric))});
        else
            groups.emplace_back(key, c.n, c.z);
    }
    if (groups.size() < 2)
        throw Error("insufficient groups: " + std::to_string(groups.size()) + " group(s) with a nonzero " +
                    std::string(to_string(metric)) + " denominator");
    return make_group_vector(std::string(to_string(metric)), std::move(groups), std::move(excluded));
}

GroupMetricVector aggregate(const RecordTable& table, BaseMetric metric, std::span<const std::string> group_columns) {
    const auto records = intersect_groups(table, group_columns);
    return aggregate(records, metric);
}

double plug_in_variance(const GroupOutcome& outcome) noexcept {
    const double y = outcome.y();
    return y * (1.0 - y) / static_cast<double>(outcome.n());
}

std::string key_label(const GroupKey& key) {
    std::string out;
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i) out += '|';
        out += key[i];
    }
    return out;
}

}  // namespace disparity
