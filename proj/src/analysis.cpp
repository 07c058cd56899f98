#include "disparity/analysis.hpp"

#include "disparity/error.hpp"
#include "disparity/estimators.hpp"

namespace disparity {

std::optional<OutputFormat> parse_output_format(std::string_view name) {
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    return std::nullopt;
}

std::vector<MetaMetricKind> default_meta_metrics() {
    return {MetaMetricKind::max_min_diff(), MetaMetricKind::max_abs_diff(), MetaMetricKind::mean_abs_dev(),
            MetaMetricKind::variance()};
}

void AnalysisRequest::validate() const {
    if (input.empty()) throw Error("no input path given");
    if (format == InputFormat::records) {
        if (metrics.empty()) throw Error("at least one base metric is required");
        if (groupings.empty()) throw Error("at least one grouping is required");
        for (const auto& g : groupings)
            if (g.empty()) throw Error("empty grouping");
    }
    bootstrap.validate();
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

template <typename F>
auto annotated(std::string_view metric, std::string_view grouping, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error("[" + std::string(metric) + " by " + std::string(grouping) + "] " + e.what());
    }
}

}  // namespace

std::uint64_t entry_seed(std::uint64_t seed, std::string_view base_metric, std::string_view grouping) {
    return derive_seed(seed, {fnv1a(base_metric), fnv1a(grouping)});
}

ReportEntry analyze_groups(GroupMetricVector groups, std::string grouping, std::span<const MetaMetricKind> meta_metrics,
                           const BootstrapConfig& bootstrap) {
    ReportEntry entry;
    entry.base_metric = groups.metric;
    entry.grouping = std::move(grouping);

    const auto y = groups.rates();
    for (const auto& kind : meta_metrics) entry.meta_metrics.push_back(meta_metric(y, kind));
    entry.variance = corrected_variance(groups);

    BootstrapConfig config = bootstrap;
    config.seed = entry_seed(bootstrap.seed, entry.base_metric, entry.grouping);
    const NamedStatistic stats[] = {variance_statistic(VarianceEstimator::uncorrected),
                                    variance_statistic(VarianceEstimator::double_corrected)};
    auto results = bootstrap_statistics(groups, stats, config);
    entry.uncorrected = std::move(results[0]);
    entry.double_corrected = std::move(results[1]);
    entry.groups = std::move(groups);
    return entry;
}

DisparityReport analyze_records(const RecordTable& table, std::span<const BaseMetric> metrics,
                                std::span<const std::vector<std::string>> groupings,
                                std::span<const MetaMetricKind> meta_metrics, const BootstrapConfig& bootstrap) {
    bootstrap.validate();
    if (table.size() == 0) throw Error("no data");
    DisparityReport report{{}, bootstrap.b, bootstrap.level, bootstrap.seed};
    for (const auto& columns : groupings) {
        const auto grouping = join(columns, ',');
        const auto records = annotated("*", grouping, [&] { return intersect_groups(table, columns); });
        for (auto metric : metrics) {
            const auto name = to_string(metric);
            report.entries.push_back(annotated(name, grouping, [&] {
                return analyze_groups(aggregate(records, metric), grouping, meta_metrics, bootstrap);
            }));
        }
    }
    return report;
}

DisparityReport analyze_aggregated(const AggregatedInput& input, const std::string& label,
                                   std::span<const MetaMetricKind> meta_metrics, const BootstrapConfig& bootstrap) {
    bootstrap.validate();
    const std::string grouping = "group";
    DisparityReport report{{}, bootstrap.b, bootstrap.level, bootstrap.seed};
    report.entries.push_back(annotated(label, grouping, [&] {
        if (input.groups.size() < 2)
            throw Error("insufficient groups: " + std::to_string(input.groups.size()) + " group(s) with n > 0");
        return analyze_groups(make_group_vector(label, input.groups, input.excluded), grouping, meta_metrics,
                              bootstrap);
    }));
    return report;
}

DisparityReport run_analysis(const AnalysisRequest& request) {
    request.validate();
    auto loaded = load_records(request.input, request.format);
    if (auto* table = std::get_if<RecordTable>(&loaded))
        return analyze_records(*table, request.metrics, request.groupings, request.meta_metrics, request.bootstrap);
    return analyze_aggregated(std::get<AggregatedInput>(loaded), request.aggregated_label, request.meta_metrics,
                              request.bootstrap);
}

}  // namespace disparity
