#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "disparity/error.hpp"
#include "disparity/report.hpp"

using namespace disparity;

namespace {

DisparityReport sample_report() {
    AggregatedInput in{{GroupOutcome({"A"}, 100, 40), GroupOutcome({"B"}, 37, 11), GroupOutcome({"C, d"}, 9, 9)},
                       {{{"E"}, "zero trials"}}};
    const std::vector<MetaMetricKind> metas{MetaMetricKind::variance(), MetaMetricKind::generalized_entropy(0.5)};
    return analyze_aggregated(in, "rate", metas, {50, 0.95, 12345678901234567890ULL, 1});
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::ranges::count(s, '\n')); }

}  // namespace

TEST_CASE("format_double is shortest round-trip") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.1) == "0.1");
    const double x = 0.054960378192701415;
    CHECK(std::stod(format_double(x)) == x);
    CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("json round trip preserves every value") {
    const auto report = sample_report();
    const auto text = report_to_json(report).dump(2);
    const auto back = report_from_json(nlohmann::json::parse(text));
    CHECK(back.seed == report.seed);
    CHECK(back.b == report.b);
    CHECK(back.level == report.level);
    REQUIRE(back.entries.size() == 1);
    const auto& a = report.entries[0];
    const auto& b = back.entries[0];
    CHECK(b.groups.groups == a.groups.groups);
    CHECK(b.groups.excluded == a.groups.excluded);
    REQUIRE(b.meta_metrics.size() == a.meta_metrics.size());
    for (std::size_t i = 0; i < a.meta_metrics.size(); ++i) {
        CHECK(b.meta_metrics[i].kind == a.meta_metrics[i].kind);
        CHECK(b.meta_metrics[i].value == a.meta_metrics[i].value);
    }
    CHECK(b.variance.corrected_raw == a.variance.corrected_raw);
    CHECK(b.uncorrected.samples == a.uncorrected.samples);
    CHECK(b.double_corrected.lower == a.double_corrected.lower);
    CHECK(b.double_corrected.upper == a.double_corrected.upper);
    CHECK(report_to_json(back).dump(2) == text);

    CHECK_THROWS_AS(report_from_json(nlohmann::json::parse("{}")), Error);
}

TEST_CASE("csv has a header and one row per statistic") {
    const auto report = sample_report();
    const auto csv = report_to_csv(report);
    CHECK(csv.starts_with("base_metric,grouping,statistic,value,lower,upper\n"));
    // 3 rates + 1 exclusion + 2 meta-metrics + correction term + corrected + 2 intervals
    CHECK(count_lines(csv) == 1 + 3 + 1 + 2 + 4);
    CHECK(csv.find("rate,group,\"rate[C, d]\",1,,\n") != std::string::npos);
    CHECK(csv.find("rate,group,excluded[E],zero trials,,\n") != std::string::npos);
    CHECK(csv.find(",variance,") != std::string::npos);
    CHECK(csv.find(",gei:0.5,") != std::string::npos);
}

TEST_CASE("emit_report writes files and surfaces I/O errors") {
    const auto report = sample_report();
    const auto dir = std::filesystem::temp_directory_path() / "disparity_report_test";
    std::filesystem::create_directories(dir);
    emit_report(report, dir / "r.json", OutputFormat::json);
    emit_report(report, dir / "r.csv", OutputFormat::csv);
    CHECK(read_text_file(dir / "r.csv") == report_to_csv(report));
    CHECK(report_from_json(nlohmann::json::parse(read_text_file(dir / "r.json"))).entries[0].uncorrected.samples ==
          report.entries[0].uncorrected.samples);
    CHECK_THROWS_AS(emit_report(report, dir / "no_such_dir" / "r.json", OutputFormat::json), Error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("simulation tables render") {
    const auto scen = standard_scenarios();
    CHECK(count_lines(scenarios_to_csv(scen)) == 1 + 400);
    CHECK(scenarios_to_json(scen)[2]["true_variance"].get<double>() == scen[2].true_variance());

    CoverageReport cov{{{"s", VarianceEstimator::double_corrected, 9, 90.0, 0.0, 0.1}}, 10, 50, 0.95};
    CHECK(coverage_to_csv(cov) ==
          "scenario,estimator,covered,replicates,coverage_pct,mean_lower,mean_upper\n"
          "s,double_corrected_var,9,10,90,0,0.1\n");
    CHECK(coverage_to_json(cov)["cells"][0]["coverage_pct"].get<double>() == 90.0);

    BiasCell cell{"mad", 5, 0.1, 1000, 0.2, 0.001, 0.0001, 0.002, 0.0003, std::nan(""), 10, 0};
    const std::vector<BiasCell> cells{cell};
    CHECK(bias_sweep_to_csv(cells).ends_with("mad,5,0.1,1000,0.2,0.001,1e-04,0.002,3e-04,,10,0\n"));
    CHECK(bias_sweep_to_json(cells)[0]["analytic_bias"].is_null());
}
