#include "qarith/physical.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qarith {

namespace {

constexpr std::size_t kMaxDistance = 51;
// A 15-to-1 block occupies 16 patches for 11 logical cycles.
constexpr double kFactoryPatches = 16;
constexpr double kFactoryCycles = 11;

double logical_error(const PhysicalParams& p, std::size_t d, double volume) {
    return p.prefactor_a * std::pow(p.p_phys / p.p_threshold, double(d + 1) / 2.0) * volume;
}

std::optional<std::size_t> smallest_distance(const PhysicalParams& p, double volume, double target) {
    for (std::size_t d = 1; d <= kMaxDistance; d += 2) {
        if (logical_error(p, d, volume) <= target) return d;
    }
    return std::nullopt;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || v.empty()) throw std::invalid_argument("bad value for " + key + ": '" + v + "'");
    return x;
}

}  // namespace

void PhysicalParams::validate() const {
    if (!(p_phys > 0 && p_phys < p_threshold)) throw std::invalid_argument("need 0 < p_phys < p_threshold");
    if (!(error_budget > 0 && error_budget < 1)) throw std::invalid_argument("error_budget must lie in (0, 1)");
    if (!(prefactor_a > 0)) throw std::invalid_argument("prefactor_a must be positive");
    if (!(t_cycle_factor > 0)) throw std::invalid_argument("t_cycle_factor must be positive");
    if (factory_duration && !(*factory_duration > 0)) throw std::invalid_argument("factory_duration must be positive");
    if (factory_qubits && *factory_qubits == 0) throw std::invalid_argument("factory_qubits must be positive");
}

std::string to_string(Layout l) { return l == Layout::Psspc ? "psspc" : "dense"; }
std::string to_string(Limit l) { return l == Limit::DepthLimited ? "depth-limited" : "t-limited"; }

PhysicalParams parse_params(const std::string& text) {
    PhysicalParams p;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "p_phys") p.p_phys = parse_double(key, value);
        else if (key == "p_threshold") p.p_threshold = parse_double(key, value);
        else if (key == "prefactor_a") p.prefactor_a = parse_double(key, value);
        else if (key == "t_cycle_factor") p.t_cycle_factor = parse_double(key, value);
        else if (key == "error_budget") p.error_budget = parse_double(key, value);
        else if (key == "factory_duration") p.factory_duration = parse_double(key, value);
        else if (key == "factory_qubits") {
            const double q = parse_double(key, value);
            if (q < 1 || q != std::floor(q)) throw std::invalid_argument("factory_qubits must be a positive integer");
            p.factory_qubits = std::uint64_t(q);
        } else if (key == "layout") {
            if (value == "psspc") p.layout = Layout::Psspc;
            else if (value == "dense") p.layout = Layout::Dense;
            else throw std::invalid_argument("layout must be psspc or dense");
        } else {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    p.validate();
    return p;
}

PhysicalParams load_params(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read parameter file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_params(ss.str());
}

FactorySpec design_factory(const PhysicalParams& p, double per_t_error) {
    p.validate();
    if (!(per_t_error > 0)) throw std::invalid_argument("per-T error target must be positive");
    const double volume = kFactoryPatches * kFactoryCycles;
    FactorySpec f;
    double input = p.p_phys;
    for (std::size_t level = 1; level <= 2; ++level) {
        const double distilled = 35.0 * input * input * input;
        if (distilled < per_t_error) {
            // Final level: its Clifford noise gets whatever the distillation leaves.
            if (auto d = smallest_distance(p, volume, per_t_error - distilled)) {
                f.levels = level;
                f.distances.push_back(*d);
                f.output_error = distilled + logical_error(p, *d, volume);
                break;
            }
        }
        if (level == 2) throw std::domain_error("no two-level 15-to-1 factory reaches the per-T error target");
        // Inner level: Clifford noise at most its own distillation output.
        auto d = smallest_distance(p, volume, distilled);
        if (!d) throw std::domain_error("inner factory level needs a distance above 51");
        f.distances.push_back(*d);
        input = distilled + logical_error(p, *d, volume);
    }
    const auto patch = [](std::size_t d) { return std::uint64_t(2 * d * d * std::uint64_t(kFactoryPatches)); };
    f.qubits = patch(f.distances[0]);
    f.duration = kFactoryCycles * double(f.distances[0]) * p.t_cycle_factor;
    if (f.levels == 2) {
        f.qubits = 15 * f.qubits + patch(f.distances[1]);
        f.duration += kFactoryCycles * double(f.distances[1]) * p.t_cycle_factor;
    }
    if (p.factory_qubits) f.qubits = *p.factory_qubits;
    if (p.factory_duration) f.duration = *p.factory_duration;
    return f;
}

std::size_t required_code_distance(const PhysicalParams& p, std::uint64_t logical_qubits, std::uint64_t logical_depth) {
    p.validate();
    if (logical_qubits == 0 || logical_depth == 0) throw std::invalid_argument("qubits and depth must be positive");
    auto d = smallest_distance(p, double(logical_qubits) * double(logical_depth), p.budget_share());
    if (!d) throw std::domain_error("no code distance up to 51 meets the logical error budget");
    return *d;
}

std::uint64_t packed_logical_qubits(const PhysicalParams& p, std::uint64_t q) {
    if (p.layout == Layout::Dense) return std::max<std::uint64_t>(q, 1);
    return 2 * q + std::uint64_t(std::ceil(std::sqrt(8.0 * double(q)))) + 1;
}

PhysicalEstimate estimate(const LogicalCounts& counts, const PhysicalParams& p, std::uint64_t num_factories) {
    p.validate();
    if (counts.t_count > 0 && num_factories == 0) throw std::invalid_argument("T gates need at least one factory");
    PhysicalEstimate e;
    e.num_factories = num_factories;
    e.logical_qubits = packed_logical_qubits(p, counts.qubits);
    if (num_factories > 0) {
        const double per_t = counts.t_count > 0 ? p.budget_share() / double(counts.t_count) : p.budget_share();
        e.factory = design_factory(p, per_t);
    }
    const double depth = double(std::max<std::uint64_t>(counts.depth, 1));
    const double t_wait =
        counts.t_count > 0 ? double(counts.t_count) / double(num_factories) * e.factory.duration : 0.0;
    // The distance has to protect every logical cycle the run actually lasts,
    // including cycles spent waiting for T states.
    bool found = false;
    for (std::size_t d = 1; d <= kMaxDistance && !found; d += 2) {
        const double depth_time = depth * double(d) * p.t_cycle_factor;
        const double runtime = std::max(depth_time, t_wait);
        const double cycles = runtime / (double(d) * p.t_cycle_factor);
        if (logical_error(p, d, double(e.logical_qubits) * cycles) <= p.budget_share()) {
            found = true;
            e.code_distance = d;
            e.runtime_seconds = runtime;
            e.limiting_factor = t_wait > depth_time ? Limit::TLimited : Limit::DepthLimited;
        }
    }
    if (!found) throw std::domain_error("no code distance up to 51 meets the logical error budget");
    const std::uint64_t d = e.code_distance;
    e.physical_qubits = e.logical_qubits * 2 * d * d + num_factories * e.factory.qubits;
    return e;
}

std::uint64_t saturating_factory_count(const LogicalCounts& counts, const PhysicalParams& p) {
    if (counts.t_count == 0) return 0;
    auto limited = [&](std::uint64_t f) {
        try {
            return estimate(counts, p, f).limiting_factor == Limit::DepthLimited;
        } catch (const std::domain_error&) {
            return false;
        }
    };
    // With unlimited factories the run is depth-limited if it is feasible at all.
    const std::uint64_t unlimited = std::uint64_t{1} << 62;
    estimate(counts, p, unlimited);
    std::uint64_t hi = 1;
    while (!limited(hi)) hi *= 2;
    std::uint64_t lo = hi / 2;
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (limited(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

std::vector<PhysicalEstimate> pareto_frontier(const LogicalCounts& counts, const PhysicalParams& p) {
    std::vector<PhysicalEstimate> all;
    auto add = [&](std::uint64_t f) {
        try {
            all.push_back(estimate(counts, p, f));
        } catch (const std::domain_error&) {
            // Too slow for any distance up to 51; more factories may still fit.
        }
    };
    std::uint64_t sat = 0;
    try {
        sat = saturating_factory_count(counts, p);
    } catch (const std::domain_error&) {
        return {};
    }
    if (sat == 0) {
        add(0);
        return all;
    }
    for (std::uint64_t f = 1; f < sat; f *= 2) add(f);
    add(sat);

    std::vector<PhysicalEstimate> out;
    for (const auto& x : all) {
        const bool dominated = std::any_of(all.begin(), all.end(), [&](const PhysicalEstimate& y) {
            return y.runtime_seconds <= x.runtime_seconds && y.physical_qubits <= x.physical_qubits &&
                   (y.runtime_seconds < x.runtime_seconds || y.physical_qubits < x.physical_qubits);
        });
        if (!dominated) out.push_back(x);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.runtime_seconds != b.runtime_seconds) return a.runtime_seconds < b.runtime_seconds;
        return a.physical_qubits < b.physical_qubits;
    });
    // Equal (runtime, qubits) pairs would not be strictly ordered.
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) {
                              return a.runtime_seconds == b.runtime_seconds && a.physical_qubits == b.physical_qubits;
                          }),
              out.end());
    return out;
}

}  // namespace qarith
