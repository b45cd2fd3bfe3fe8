#pragma once

// Power-law slopes, tipping points and the window cost model.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qarith {

struct SweepSeries {
    std::string label;
    std::vector<std::pair<std::uint64_t, double>> points;  // (n, value), n increasing
};

struct WindowSample {
    std::uint64_t n = 0;
    std::uint64_t w = 0;
    double cost = 0;
};

/// round(n_min * 2^(k/4)) for k = 0, 1, ..., deduplicated, up to n_max.
std::vector<std::uint64_t> log_grid(std::uint64_t n_min, std::uint64_t n_max);
/// 2^k for 2^k in [n_min, n_max].
std::vector<std::uint64_t> pow2_grid(std::uint64_t n_min, std::uint64_t n_max);

struct PowerLaw {
    double slope = 0;
    double intercept = 0;  // log2 value at n = 1
};
/// Least squares on (log2 n, log2 value); needs at least 3 points.
PowerLaw fit_power_law(const SweepSeries& s);

/// Smallest n with b < a there and at every later grid point.
std::optional<std::uint64_t> find_tipping_point(const SweepSeries& a, const SweepSeries& b);

struct WindowModel {
    double c1 = 0;
    double c2 = 0;
    double cost(double n, double w) const;
    /// Integer w in [1, w_max] minimizing the model cost.
    std::uint64_t argmin(std::uint64_t n, std::uint64_t w_max) const;
};
/// Least squares for cost = c1 * 2^w n / w + c2 * n^3 / w.
WindowModel fit_window_model(const std::vector<WindowSample>& samples);

}  // namespace qarith
