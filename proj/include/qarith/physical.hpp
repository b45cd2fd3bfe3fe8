#pragma once

// Surface-code physical estimate: code distance, 15-to-1 T factories and the
// factory-count Pareto frontier.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qarith/resources.hpp"

namespace qarith {

enum class Layout {
    Psspc,  // 2Q + ceil(sqrt(8Q)) + 1 logical patches
    Dense,  // Q patches
};

struct PhysicalParams {
    double p_phys = 1e-3;
    double p_threshold = 1e-2;
    double prefactor_a = 0.03;
    double t_cycle_factor = 6 * 100e-9;  // seconds per code cycle; a logical cycle is d of them
    double error_budget = 1e-3;          // split evenly: logical, T states, synthesis
    Layout layout = Layout::Psspc;
    // Overrides for the derived factory footprint.
    std::optional<std::uint64_t> factory_qubits;
    std::optional<double> factory_duration;

    /// Throws std::invalid_argument when the parameters are out of range.
    void validate() const;
    double budget_share() const { return error_budget / 3.0; }
};

/// Flat "key = value" text; '#' starts a comment. Unknown keys are errors.
PhysicalParams parse_params(const std::string& text);
PhysicalParams load_params(const std::string& path);
std::string to_string(Layout l);

struct FactorySpec {
    std::size_t levels = 1;
    std::vector<std::size_t> distances;  // per level, innermost first
    std::uint64_t qubits = 0;
    double duration = 0;                 // seconds per output T state
    double output_error = 0;             // distillation plus Clifford error of one output
};

/// Cheapest 15-to-1 cascade (one or two levels) whose output meets `per_t_error`.
FactorySpec design_factory(const PhysicalParams& p, double per_t_error);

/// Smallest odd d <= 51 with a (p/p_th)^((d+1)/2) * qubits * cycles <= budget / 3.
std::size_t required_code_distance(const PhysicalParams& p, std::uint64_t logical_qubits, std::uint64_t logical_depth);
std::uint64_t packed_logical_qubits(const PhysicalParams& p, std::uint64_t qubits);

enum class Limit { DepthLimited, TLimited };
std::string to_string(Limit l);

struct PhysicalEstimate {
    std::size_t code_distance = 0;
    std::uint64_t logical_qubits = 0;  // after layout packing
    std::uint64_t physical_qubits = 0;
    double runtime_seconds = 0;
    std::uint64_t num_factories = 0;
    Limit limiting_factor = Limit::DepthLimited;
    FactorySpec factory;
};

/// Estimate for lowered counts with a fixed number of factories.
PhysicalEstimate estimate(const LogicalCounts& counts, const PhysicalParams& p, std::uint64_t num_factories);
/// Factory counts 1, 2, 4, ... up to the first depth-limited count, reduced to
/// non-dominated points and sorted by runtime. Counts whose run needs a
/// distance above 51 are left out; the result is empty if none fits.
std::vector<PhysicalEstimate> pareto_frontier(const LogicalCounts& counts, const PhysicalParams& p);
/// Smallest factory count at which the run is depth-limited (0 without T
/// gates). Throws std::domain_error if even the depth-limited run is infeasible.
std::uint64_t saturating_factory_count(const LogicalCounts& counts, const PhysicalParams& p);

}  // namespace qarith
