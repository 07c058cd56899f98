#include "disparity/meta_metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "disparity/error.hpp"

namespace disparity {

MetaMetricKind MetaMetricKind::generalized_entropy(double alpha) {
    if (!std::isfinite(alpha) || alpha == 0.0 || alpha == 1.0)
        throw Error("generalized entropy index requires a finite alpha other than 0 and 1");
    return MetaMetricKind(Tag::generalized_entropy, alpha);
}

std::optional<MetaMetricKind> MetaMetricKind::parse(std::string_view text) {
    if (text == "max-min-diff") return max_min_diff();
    if (text == "max-min-ratio") return max_min_ratio();
    if (text == "max-abs-diff") return max_abs_diff();
    if (text == "mad" || text == "mean-abs-dev") return mean_abs_dev();
    if (text == "variance" || text == "var") return variance();
    constexpr std::string_view prefix = "gei:";
    if (text.starts_with(prefix)) {
        const auto arg = text.substr(prefix.size());
        double alpha = 0.0;
        auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), alpha);
        if (ec != std::errc{} || ptr != arg.data() + arg.size()) return std::nullopt;
        return generalized_entropy(alpha);
    }
    return std::nullopt;
}

std::string MetaMetricKind::name() const {
    switch (tag_) {
        case Tag::max_min_diff: return "max-min-diff";
        case Tag::max_min_ratio: return "max-min-ratio";
        case Tag::max_abs_diff: return "max-abs-diff";
        case Tag::mean_abs_dev: return "mad";
        case Tag::variance: return "variance";
        case Tag::generalized_entropy: {
            char buf[32];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, alpha_);
            return "gei:" + std::string(buf, ptr);
        }
    }
    return "unknown";
}

namespace {

// Shifted by the first element so a constant vector has exactly that constant as its mean.
double mean_of(std::span<const double> y) {
    const double origin = y.front();
    double s = 0.0;
    for (double v : y) s += v - origin;
    return origin + s / static_cast<double>(y.size());
}

void require_positive(std::span<const double> y, const MetaMetricKind& kind) {
    for (double v : y)
        if (!(v > 0.0)) throw Error(kind.name() + " is undefined for zero rate");
}

}  // namespace

double sample_variance(std::span<const double> y) {
    if (y.size() < 2) throw Error("variance needs at least 2 groups");
    const double m = mean_of(y);
    double ss = 0.0;
    for (double v : y) ss += (v - m) * (v - m);
    return ss / static_cast<double>(y.size() - 1);
}

MetaMetricResult meta_metric(std::span<const double> y, MetaMetricKind kind) {
    if (y.size() < 2) throw Error(kind.name() + " needs at least 2 groups, got " + std::to_string(y.size()));
    const auto k = y.size();
    const auto [lo, hi] = std::ranges::minmax(y);

    double value = 0.0;
    switch (kind.tag()) {
        case MetaMetricKind::Tag::max_min_diff:
            value = hi - lo;
            break;
        case MetaMetricKind::Tag::max_min_ratio:
            require_positive(y, kind);
            value = hi / lo;
            break;
        case MetaMetricKind::Tag::max_abs_diff: {
            const double m = mean_of(y);
            for (double v : y) value = std::max(value, std::abs(v - m));
            break;
        }
        case MetaMetricKind::Tag::mean_abs_dev: {
            const double m = mean_of(y);
            for (double v : y) value += std::abs(v - m);
            value /= static_cast<double>(k);
            break;
        }
        case MetaMetricKind::Tag::variance:
            value = sample_variance(y);
            break;
        case MetaMetricKind::Tag::generalized_entropy: {
            require_positive(y, kind);
            const double m = mean_of(y);
            const double a = kind.alpha();
            for (double v : y) value += std::pow(v / m, a) - 1.0;
            value /= static_cast<double>(k) * a * (a - 1.0);
            break;
        }
    }
    return {kind, value, k};
}

}  // namespace disparity
