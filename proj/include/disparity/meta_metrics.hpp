#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace disparity {

/// Summary of between-group variability applied to a vector of per-group rates.
class MetaMetricKind {
public:
    enum class Tag { max_min_diff, max_min_ratio, max_abs_diff, mean_abs_dev, variance, generalized_entropy };

    static MetaMetricKind max_min_diff() { return MetaMetricKind(Tag::max_min_diff, 0.0); }
    static MetaMetricKind max_min_ratio() { return MetaMetricKind(Tag::max_min_ratio, 0.0); }
    static MetaMetricKind max_abs_diff() { return MetaMetricKind(Tag::max_abs_diff, 0.0); }
    static MetaMetricKind mean_abs_dev() { return MetaMetricKind(Tag::mean_abs_dev, 0.0); }
    static MetaMetricKind variance() { return MetaMetricKind(Tag::variance, 0.0); }
    /// Throws Error for alpha 0 or 1, where the index degenerates to a log form.
    static MetaMetricKind generalized_entropy(double alpha);

    /// Parses "max-min-diff", "max-min-ratio", "max-abs-diff", "mad", "variance", "gei:<alpha>".
    static std::optional<MetaMetricKind> parse(std::string_view text);

    [[nodiscard]] Tag tag() const noexcept { return tag_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] std::string name() const;

    friend bool operator==(const MetaMetricKind&, const MetaMetricKind&) = default;

private:
    MetaMetricKind(Tag tag, double alpha) : tag_(tag), alpha_(alpha) {}

    Tag tag_;
    double alpha_;
};

struct MetaMetricResult {
    MetaMetricKind kind;
    double value;
    std::size_t k;
};

/// Evaluates `kind` on the rates `y` (K >= 2). The ratio and entropy forms require strictly positive rates.
[[nodiscard]] MetaMetricResult meta_metric(std::span<const double> y, MetaMetricKind kind);

/// Between-group variance with divisor K-1.
[[nodiscard]] double sample_variance(std::span<const double> y);

}  // namespace disparity
