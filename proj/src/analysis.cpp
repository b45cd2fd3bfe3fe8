#include "qarith/analysis.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace qarith {

std::vector<std::uint64_t> log_grid(std::uint64_t n_min, std::uint64_t n_max) {
    if (n_min < 3 || n_min > n_max) throw std::invalid_argument("log grid needs 3 <= n_min <= n_max");
    std::vector<std::uint64_t> grid;
    for (int k = 0;; ++k) {
        const auto v = std::uint64_t(std::llround(double(n_min) * std::exp2(k / 4.0)));
        if (v > n_max) break;
        if (grid.empty() || grid.back() != v) grid.push_back(v);
    }
    return grid;
}

std::vector<std::uint64_t> pow2_grid(std::uint64_t n_min, std::uint64_t n_max) {
    if (n_min == 0 || n_min > n_max) throw std::invalid_argument("power-of-two grid needs 1 <= n_min <= n_max");
    std::vector<std::uint64_t> grid;
    for (std::uint64_t v = 1; v <= n_max && v != 0; v *= 2) {
        if (v >= n_min) grid.push_back(v);
    }
    return grid;
}

PowerLaw fit_power_law(const SweepSeries& s) {
    if (s.points.size() < 3) throw std::invalid_argument("power-law fit needs at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::uint64_t prev = 0;
    for (const auto& [n, v] : s.points) {
        if (n <= prev) throw std::invalid_argument("series n values must be strictly increasing");
        if (!(v > 0)) throw std::invalid_argument("series values must be positive");
        prev = n;
        const double x = std::log2(double(n)), y = std::log2(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = double(s.points.size());
    const double den = m * sxx - sx * sx;
    PowerLaw fit;
    fit.slope = (m * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / m;
    return fit;
}

std::optional<std::uint64_t> find_tipping_point(const SweepSeries& a, const SweepSeries& b) {
    if (a.points.size() != b.points.size()) throw std::invalid_argument("series are on different grids");
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        if (a.points[i].first != b.points[i].first) throw std::invalid_argument("series are on different grids");
    }
    std::optional<std::uint64_t> tip;
    for (std::size_t i = a.points.size(); i-- > 0;) {
        if (!(b.points[i].second < a.points[i].second)) break;
        tip = a.points[i].first;
    }
    return tip;
}

double WindowModel::cost(double n, double w) const { return (c1 * std::exp2(w) + c2 * n * n) * n / w; }

std::uint64_t WindowModel::argmin(std::uint64_t n, std::uint64_t w_max) const {
    if (w_max == 0) throw std::invalid_argument("w_max must be positive");
    std::uint64_t best = 1;
    for (std::uint64_t w = 2; w <= w_max; ++w) {
        if (cost(double(n), double(w)) < cost(double(n), double(best))) best = w;
    }
    return best;
}

WindowModel fit_window_model(const std::vector<WindowSample>& samples) {
    if (samples.size() < 4) throw std::invalid_argument("window fit needs at least 4 samples");
    std::set<std::uint64_t> ws;
    for (const auto& s : samples) {
        if (s.w == 0 || s.w > s.n) throw std::invalid_argument("window samples need 1 <= w <= n");
        if (!(s.cost > 0)) throw std::invalid_argument("window costs must be positive");
        ws.insert(s.w);
    }
    if (ws.size() < 2) throw std::invalid_argument("window fit needs at least two distinct w");
    // Columns are rescaled before solving the 2x2 normal equations.
    std::vector<std::pair<double, double>> rows;
    double s1 = 0, s2 = 0;
    for (const auto& s : samples) {
        const double n = double(s.n), w = double(s.w);
        rows.emplace_back(std::exp2(w) * n / w, n * n * n / w);
        s1 = std::max(s1, rows.back().first);
        s2 = std::max(s2, rows.back().second);
    }
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double x1 = rows[i].first / s1, x2 = rows[i].second / s2, y = samples[i].cost;
        a11 += x1 * x1;
        a12 += x1 * x2;
        a22 += x2 * x2;
        b1 += x1 * y;
        b2 += x2 * y;
    }
    const double det = a11 * a22 - a12 * a12;
    if (!(std::abs(det) > 1e-12 * a11 * a22)) throw std::invalid_argument("window fit design matrix is degenerate");
    WindowModel m;
    m.c1 = (b1 * a22 - b2 * a12) / det / s1;
    m.c2 = (a11 * b2 - a12 * b1) / det / s2;
    return m;
}

}  // namespace qarith
