// Command-line front end: analyze, simulate-bias, simulate-coverage, scenarios.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "disparity/analysis.hpp"
#include "disparity/error.hpp"
#include "disparity/report.hpp"
#include "disparity/simulation.hpp"

namespace {

using namespace disparity;

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(part);
    return out;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_text_file(path, text);
}

struct AnalyzeArgs {
    std::string input;
    std::string format = "records";
    std::vector<std::string> group_by;
    std::vector<std::string> metrics;
    std::vector<std::string> meta_metrics;
    std::string label = "rate";
    std::size_t b = 500;
    double level = 0.95;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string output;
    std::string output_format = "json";
};

int run_analyze(const AnalyzeArgs& a) {
    AnalysisRequest req;
    req.input = a.input;
    auto format = parse_input_format(a.format);
    if (!format) throw Error("unknown input format '" + a.format + "'");
    req.format = *format;
    for (const auto& g : a.group_by) req.groupings.push_back(split_commas(g));
    for (const auto& m : a.metrics) {
        auto metric = parse_base_metric(m);
        if (!metric) throw Error("unknown base metric '" + m + "'");
        req.metrics.push_back(*metric);
    }
    if (req.format == InputFormat::aggregated) {
        if (req.metrics.size() > 1) throw Error("aggregated input carries a single metric; pass at most one --metric");
        req.aggregated_label = req.metrics.empty() ? a.label : std::string(to_string(req.metrics.front()));
    }
    if (!a.meta_metrics.empty()) {
        req.meta_metrics.clear();
        for (const auto& m : a.meta_metrics) {
            auto kind = MetaMetricKind::parse(m);
            if (!kind) throw Error("unknown meta-metric '" + m + "'");
            req.meta_metrics.push_back(*kind);
        }
    }
    req.bootstrap = {a.b, a.level, a.seed, a.threads};
    auto out_format = parse_output_format(a.output_format);
    if (!out_format) throw Error("unknown output format '" + a.output_format + "'");
    req.output_format = *out_format;

    const auto report = run_analysis(req);
    write_output(render_report(report, req.output_format), a.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Between-group performance disparity estimation with bias-corrected variance and bootstrap intervals"};
    app.require_subcommand(1);

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Disparity report for classification records or aggregated counts");
    analyze->add_option("--input", an.input, "Input CSV")->required();
    analyze->add_option("--format", an.format, "records | aggregated")->capture_default_str();
    analyze->add_option("--group-by", an.group_by, "Grouping column(s); comma-join for intersections (repeatable)");
    analyze->add_option("--metric", an.metrics, "accuracy | fpr | tpr | sr (repeatable)");
    analyze->add_option("--meta-metric", an.meta_metrics,
                        "max-min-diff | max-min-ratio | max-abs-diff | mad | variance | gei:<alpha> (repeatable)");
    analyze->add_option("--label", an.label, "Metric label for aggregated input")->capture_default_str();
    analyze->add_option("--bootstrap-b", an.b, "Bootstrap resamples")->capture_default_str();
    analyze->add_option("--level", an.level, "Confidence level")->capture_default_str();
    analyze->add_option("--seed", an.seed, "64-bit seed")->capture_default_str();
    analyze->add_option("--threads", an.threads, "Worker threads (0 = all); output does not depend on it");
    analyze->add_option("--output", an.output, "Output path (default stdout)");
    analyze->add_option("--output-format", an.output_format, "json | csv")->capture_default_str();

    BiasSweepConfig sweep;
    std::string sweep_k, sweep_l, sweep_out, sweep_fmt = "csv";
    auto* bias = app.add_subcommand("simulate-bias", "Monte-Carlo bias of every meta-metric over a (K, l) grid");
    bias->add_option("--total-n", sweep.total_n)->capture_default_str();
    bias->add_option("--k-grid", sweep_k, "Comma-separated group counts");
    bias->add_option("--lower-bounds", sweep_l, "Comma-separated lower bounds of the true-rate grid");
    bias->add_option("--replicates", sweep.replicates)->capture_default_str();
    bias->add_option("--gei-alpha", sweep.gei_alpha)->capture_default_str();
    bias->add_option("--seed", sweep.seed)->capture_default_str();
    bias->add_option("--threads", sweep.threads);
    bias->add_option("--output", sweep_out);
    bias->add_option("--output-format", sweep_fmt)->capture_default_str();

    CoverageConfig cov;
    std::string cov_out, cov_fmt = "csv";
    bool no_truncate = false;
    auto* coverage = app.add_subcommand("simulate-coverage", "Bootstrap interval coverage over the standard scenarios");
    coverage->add_option("--replicates", cov.replicates)->capture_default_str();
    coverage->add_option("--bootstrap-b", cov.bootstrap.b)->capture_default_str();
    coverage->add_option("--level", cov.bootstrap.level)->capture_default_str();
    coverage->add_option("--seed", cov.seed)->capture_default_str();
    coverage->add_option("--threads", cov.threads);
    coverage->add_flag("--no-truncate", no_truncate, "Keep negative corrected values in the bootstrap samples");
    coverage->add_option("--output", cov_out);
    coverage->add_option("--output-format", cov_fmt)->capture_default_str();

    std::string scen_out, scen_fmt = "json";
    auto* scenarios = app.add_subcommand("scenarios", "Print the four standard simulation scenarios");
    scenarios->add_option("--output", scen_out);
    scenarios->add_option("--output-format", scen_fmt)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return run_analyze(an);

        if (bias->parsed()) {
            auto to_sizes = [](const std::string& s) {
                std::vector<std::size_t> v;
                for (const auto& p : split_commas(s)) v.push_back(std::stoull(p));
                return v;
            };
            auto to_doubles = [](const std::string& s) {
                std::vector<double> v;
                for (const auto& p : split_commas(s)) v.push_back(std::stod(p));
                return v;
            };
            if (!sweep_k.empty()) sweep.k_grid = to_sizes(sweep_k);
            if (!sweep_l.empty()) sweep.lower_bounds = to_doubles(sweep_l);
            const auto fmt = parse_output_format(sweep_fmt);
            if (!fmt) throw Error("unknown output format '" + sweep_fmt + "'");
            const auto cells = bias_sweep(sweep);
            write_output(*fmt == OutputFormat::csv ? bias_sweep_to_csv(cells) : bias_sweep_to_json(cells).dump(2) + '\n',
                         sweep_out);
            return 0;
        }

        if (coverage->parsed()) {
            cov.truncate = !no_truncate;
            const auto fmt = parse_output_format(cov_fmt);
            if (!fmt) throw Error("unknown output format '" + cov_fmt + "'");
            const auto scen = standard_scenarios();
            const auto report = coverage_study(scen, cov);
            write_output(*fmt == OutputFormat::csv ? coverage_to_csv(report) : coverage_to_json(report).dump(2) + '\n',
                         cov_out);
            return 0;
        }

        if (scenarios->parsed()) {
            const auto fmt = parse_output_format(scen_fmt);
            if (!fmt) throw Error("unknown output format '" + scen_fmt + "'");
            const auto scen = standard_scenarios();
            write_output(*fmt == OutputFormat::csv ? scenarios_to_csv(scen) : scenarios_to_json(scen).dump(2) + '\n',
                         scen_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "disparity: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
