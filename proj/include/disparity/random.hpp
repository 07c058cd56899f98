#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace disparity {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; a bijective 64-bit mix.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of the substream addressed by `path` under `master`. Distinct paths give
/// statistically independent streams, and the result depends only on the arguments.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t s = mix64(master);
    for (auto p : path) s = mix64(s ^ mix64(p + 0x632be59bd9b4e019ULL));
    return s;
}

[[nodiscard]] inline Rng make_rng(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    return Rng(derive_seed(master, path));
}

/// One Binomial(n, p) draw. Degenerate p returns exactly 0 or n without consuming randomness.
[[nodiscard]] inline std::int64_t draw_binomial(Rng& rng, std::int64_t n, double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    return std::binomial_distribution<std::int64_t>(n, p)(rng);
}

}  // namespace disparity
