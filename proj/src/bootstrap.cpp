#include "disparity/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "disparity/error.hpp"
#include "disparity/parallel.hpp"

namespace disparity {

void BootstrapConfig::validate() const {
    if (b < 2) throw Error("bootstrap needs at least 2 resamples, got " + std::to_string(b));
    if (!(level > 0.0 && level < 1.0)) throw Error("confidence level must lie strictly between 0 and 1");
}

GroupOutcome resample_group(const GroupOutcome& outcome, Rng& rng) {
    return outcome.with_successes(draw_binomial(rng, outcome.n(), outcome.y()));
}

void resample_into(const GroupMetricVector& source, GroupMetricVector& target, Rng& rng) {
    if (target.groups.size() != source.groups.size()) target = source;
    for (std::size_t i = 0; i < source.groups.size(); ++i) {
        const auto& g = source.groups[i];
        target.groups[i].set_successes(draw_binomial(rng, g.n(), g.y()));
    }
}

double empirical_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw Error("quantile of an empty sample");
    const double pos = q * static_cast<double>(sorted.size() - 1);  // 0-based
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0) return sorted[lo];
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Interval percentile_interval(std::span<const double> samples, double level) {
    if (samples.empty()) throw Error("percentile interval of an empty sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::ranges::sort(sorted);
    const double tail = (1.0 - level) / 2.0;
    return {empirical_quantile(sorted, tail), empirical_quantile(sorted, 1.0 - tail)};
}

std::vector<BootstrapResult> bootstrap_statistics(const GroupMetricVector& groups,
                                                  std::span<const NamedStatistic> statistics,
                                                  const BootstrapConfig& config) {
    config.validate();
    if (groups.k() < 2) throw Error("bootstrap needs at least 2 groups, got " + std::to_string(groups.k()));

    std::vector<BootstrapResult> results(statistics.size());
    for (std::size_t s = 0; s < statistics.size(); ++s) {
        results[s].statistic_name = statistics[s].name;
        results[s].point_estimate = statistics[s].fn(groups);
        results[s].samples.resize(config.b);
    }

    parallel_chunks(config.b, config.threads, [&](std::size_t begin, std::size_t end) {
        GroupMetricVector scratch = groups;
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng = make_rng(config.seed, {i});
            resample_into(groups, scratch, rng);
            for (std::size_t s = 0; s < statistics.size(); ++s) {
                try {
                    results[s].samples[i] = statistics[s].fn(scratch);
                } catch (const std::exception& e) {
                    throw Error("statistic '" + statistics[s].name + "' failed on bootstrap resample " +
                                std::to_string(i) + ": " + e.what());
                }
            }
        }
    });

    for (auto& r : results) {
        const auto iv = percentile_interval(r.samples, config.level);
        r.lower = iv.lower;
        r.upper = iv.upper;
    }
    return results;
}

BootstrapResult bootstrap_statistic(const GroupMetricVector& groups, const NamedStatistic& statistic,
                                    const BootstrapConfig& config) {
    return std::move(bootstrap_statistics(groups, std::span(&statistic, 1), config).front());
}

}  // namespace disparity
