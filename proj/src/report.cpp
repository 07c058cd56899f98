#include "disparity/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "disparity/error.hpp"

namespace disparity {

using nlohmann::json;

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

namespace {

json bootstrap_json(const BootstrapResult& r) {
    return {{"statistic", r.statistic_name},
            {"point_estimate", r.point_estimate},
            {"lower", r.lower},
            {"upper", r.upper},
            {"samples", r.samples}};
}

BootstrapResult bootstrap_from(const json& j) {
    BootstrapResult r;
    r.statistic_name = j.at("statistic").get<std::string>();
    r.point_estimate = j.at("point_estimate").get<double>();
    r.lower = j.at("lower").get<double>();
    r.upper = j.at("upper").get<double>();
    r.samples = j.at("samples").get<std::vector<double>>();
    return r;
}

// RFC 4180 quoting, applied only where needed.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string csv_row(std::initializer_list<std::string> fields) {
    std::string out;
    bool first = true;
    for (const auto& f : fields) {
        if (!first) out += ',';
        out += csv_field(f);
        first = false;
    }
    return out + '\n';
}

}  // namespace

json report_to_json(const DisparityReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        json groups = json::array();
        for (const auto& g : e.groups.groups) groups.push_back({{"key", g.key()}, {"n", g.n()}, {"z", g.z()}, {"y", g.y()}});
        json excluded = json::array();
        for (const auto& x : e.groups.excluded) excluded.push_back({{"key", x.key}, {"reason", x.reason}});
        json metas = json::array();
        for (const auto& m : e.meta_metrics) metas.push_back({{"name", m.kind.name()}, {"value", m.value}, {"k", m.k}});
        entries.push_back({
            {"base_metric", e.base_metric},
            {"grouping", e.grouping},
            {"groups", std::move(groups)},
            {"excluded", std::move(excluded)},
            {"meta_metrics", std::move(metas)},
            {"variance",
             {{"uncorrected", e.variance.uncorrected},
              {"correction_term", e.variance.correction_term},
              {"corrected_raw", e.variance.corrected_raw},
              {"corrected", e.variance.corrected},
              {"truncated", e.variance.truncated()}}},
            {"bootstrap",
             {{"uncorrected_var", bootstrap_json(e.uncorrected)},
              {"double_corrected_var", bootstrap_json(e.double_corrected)}}},
        });
    }
    return {{"bootstrap", {{"b", report.b}, {"level", report.level}, {"seed", report.seed}}},
            {"entries", std::move(entries)}};
}

DisparityReport report_from_json(const json& j) {
    try {
        DisparityReport report;
        const auto& boot = j.at("bootstrap");
        report.b = boot.at("b").get<std::size_t>();
        report.level = boot.at("level").get<double>();
        report.seed = boot.at("seed").get<std::uint64_t>();
        for (const auto& je : j.at("entries")) {
            ReportEntry e;
            e.base_metric = je.at("base_metric").get<std::string>();
            e.grouping = je.at("grouping").get<std::string>();
            std::vector<GroupOutcome> groups;
            for (const auto& g : je.at("groups"))
                groups.emplace_back(g.at("key").get<GroupKey>(), g.at("n").get<std::int64_t>(),
                                    g.at("z").get<std::int64_t>());
            std::vector<ExcludedGroup> excluded;
            for (const auto& x : je.at("excluded"))
                excluded.push_back({x.at("key").get<GroupKey>(), x.at("reason").get<std::string>()});
            e.groups = make_group_vector(e.base_metric, std::move(groups), std::move(excluded));
            for (const auto& m : je.at("meta_metrics")) {
                auto kind = MetaMetricKind::parse(m.at("name").get<std::string>());
                if (!kind) throw Error("unknown meta-metric '" + m.at("name").get<std::string>() + "'");
                e.meta_metrics.push_back({*kind, m.at("value").get<double>(), m.at("k").get<std::size_t>()});
            }
            const auto& v = je.at("variance");
            e.variance.uncorrected = v.at("uncorrected").get<double>();
            e.variance.correction_term = v.at("correction_term").get<double>();
            e.variance.corrected_raw = v.at("corrected_raw").get<double>();
            e.variance.corrected = v.at("corrected").get<double>();
            e.uncorrected = bootstrap_from(je.at("bootstrap").at("uncorrected_var"));
            e.double_corrected = bootstrap_from(je.at("bootstrap").at("double_corrected_var"));
            report.entries.push_back(std::move(e));
        }
        return report;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed report: ") + e.what());
    }
}

std::string report_to_csv(const DisparityReport& report) {
    std::string out = "base_metric,grouping,statistic,value,lower,upper\n";
    for (const auto& e : report.entries) {
        auto row = [&](const std::string& stat, const std::string& value, const std::string& lo = "",
                       const std::string& hi = "") { out += csv_row({e.base_metric, e.grouping, stat, value, lo, hi}); };
        for (const auto& g : e.groups.groups) row("rate[" + key_label(g.key()) + "]", format_double(g.y()));
        for (const auto& x : e.groups.excluded) row("excluded[" + key_label(x.key) + "]", x.reason);
        for (const auto& m : e.meta_metrics) row(m.kind.name(), format_double(m.value));
        row("correction_term", format_double(e.variance.correction_term));
        row("corrected_var", format_double(e.variance.corrected));
        for (const auto* b : {&e.uncorrected, &e.double_corrected})
            row(b->statistic_name, format_double(b->point_estimate), format_double(b->lower), format_double(b->upper));
    }
    return out;
}

std::string render_report(const DisparityReport& report, OutputFormat format) {
    if (format == OutputFormat::json) return report_to_json(report).dump(2) + '\n';
    return report_to_csv(report);
}

json bias_sweep_to_json(std::span<const BiasCell> cells) {
    json out = json::array();
    for (const auto& c : cells)
        out.push_back({{"metric", c.metric},
                       {"k", c.k},
                       {"lower", c.lower},
                       {"n_per_group", c.n_per_group},
                       {"true_value", c.true_value},
                       {"mean_bias", c.mean_bias},
                       {"mc_se", c.mc_se},
                       {"cv_bias", c.cv_bias},
                       {"cv_se", c.cv_se},
                       {"analytic_bias", std::isnan(c.analytic_bias) ? json(nullptr) : json(c.analytic_bias)},
                       {"replicates_used", c.replicates_used},
                       {"undefined_replicates", c.undefined_replicates}});
    return out;
}

std::string bias_sweep_to_csv(std::span<const BiasCell> cells) {
    std::string out =
        "metric,k,lower,n_per_group,true_value,mean_bias,mc_se,cv_bias,cv_se,analytic_bias,replicates_used,undefined_replicates\n";
    for (const auto& c : cells)
        out += csv_row({c.metric, std::to_string(c.k), format_double(c.lower), std::to_string(c.n_per_group),
                        format_double(c.true_value), format_double(c.mean_bias), format_double(c.mc_se),
                        format_double(c.cv_bias), format_double(c.cv_se),
                        std::isnan(c.analytic_bias) ? std::string() : format_double(c.analytic_bias),
                        std::to_string(c.replicates_used), std::to_string(c.undefined_replicates)});
    return out;
}

json coverage_to_json(const CoverageReport& report) {
    json cells = json::array();
    for (const auto& c : report.cells)
        cells.push_back({{"scenario", c.scenario},
                         {"estimator", std::string(to_string(c.estimator))},
                         {"covered", c.covered},
                         {"coverage_pct", c.coverage_pct},
                         {"mean_lower", c.mean_lower},
                         {"mean_upper", c.mean_upper}});
    return {{"replicates", report.replicates}, {"b", report.b}, {"level", report.level}, {"cells", std::move(cells)}};
}

std::string coverage_to_csv(const CoverageReport& report) {
    std::string out = "scenario,estimator,covered,replicates,coverage_pct,mean_lower,mean_upper\n";
    for (const auto& c : report.cells)
        out += csv_row({c.scenario, std::string(to_string(c.estimator)), std::to_string(c.covered),
                        std::to_string(report.replicates), format_double(c.coverage_pct), format_double(c.mean_lower),
                        format_double(c.mean_upper)});
    return out;
}

json scenarios_to_json(std::span<const Scenario> scenarios) {
    json out = json::array();
    for (const auto& s : scenarios)
        out.push_back({{"name", s.name()},
                       {"k", s.k()},
                       {"mu", std::vector<double>(s.mu().begin(), s.mu().end())},
                       {"n", std::vector<std::int64_t>(s.n().begin(), s.n().end())},
                       {"true_variance", s.true_variance()},
                       {"mean_sampling_variance", s.mean_sampling_variance()}});
    return out;
}

std::string scenarios_to_csv(std::span<const Scenario> scenarios) {
    std::string out = "scenario,group,mu,n\n";
    for (const auto& s : scenarios)
        for (std::size_t i = 0; i < s.k(); ++i)
            out += csv_row({s.name(), std::to_string(i + 1), format_double(s.mu()[i]), std::to_string(s.n()[i])});
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

void emit_report(const DisparityReport& report, const std::filesystem::path& path, OutputFormat format) {
    write_text_file(path, render_report(report, format));
}

}  // namespace disparity
