#pragma once

// Sweep records (one row per workload, width and factory count), their CSV and
// JSON forms, and the text reports behind `fit`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qarith/catalog.hpp"
#include "qarith/physical.hpp"
#include "qarith/resources.hpp"

namespace qarith {

struct SweepRecord {
    std::string op_class;
    std::string algorithm;
    std::uint64_t n = 0;
    std::uint64_t logical_qubits = 0;
    std::uint64_t t_count = 0;
    std::uint64_t toffoli_count = 0;
    std::uint64_t cnot_count = 0;
    std::uint64_t rotation_count = 0;
    std::uint64_t depth = 0;
    std::uint64_t t_depth = 0;
    std::uint64_t code_distance = 0;  // 0: no distance up to 51 fits
    std::uint64_t physical_qubits = 0;
    double runtime_seconds = 0;
    std::uint64_t num_factories = 0;
    bool operator==(const SweepRecord&) const = default;
};

/// Lowered Clifford+T counts, with the synthesis share of the error budget.
LogicalCounts workload_counts(OpClass op, std::string_view algorithm, std::size_t n, const PhysicalParams& p);

SweepRecord make_record(OpClass op, std::string_view algorithm, std::size_t n, const LogicalCounts& counts,
                        const std::optional<PhysicalEstimate>& est);

/// One record per grid point with one factory (none for T-free circuits).
/// Rows come out algorithm-major in the order given, then by n.
std::vector<SweepRecord> sweep(OpClass op, const std::vector<std::string>& algorithms,
                               const std::vector<std::uint64_t>& grid, const PhysicalParams& p);

/// The Pareto frontier at width n, sorted by runtime.
std::vector<SweepRecord> pareto_records(OpClass op, std::string_view algorithm, std::size_t n,
                                        const PhysicalParams& p);

const std::string& sweep_csv_header();
void write_csv(std::ostream& out, const std::vector<SweepRecord>& rows);
void write_json(std::ostream& out, const std::vector<SweepRecord>& rows);
/// Accepts either format as produced by the writers above. Throws
/// std::invalid_argument on malformed input.
std::vector<SweepRecord> parse_records(std::string_view text);

enum class FitMode { Slope, Tipping, Window };
FitMode parse_fit_mode(std::string_view s);

/// Column used as the cost; one of the integer count columns,
/// physical_qubits or runtime_seconds.
double record_metric(const SweepRecord& r, std::string_view metric);
/// Default metric per mode: toffoli_count for tipping, t_count otherwise.
std::string default_metric(FitMode mode);

/// slope: "<op_class>,<algorithm>,<slope>,<intercept>" per algorithm (6 decimals).
/// tipping: over exactly two algorithms, "tipping n=<n*> (<low> below <high>)" or "none".
/// window: the fitted c1, c2 and one line per n with the model's w, the
/// closed-form optimal_window and the observed argmin.
/// Throws std::invalid_argument when the rows do not support the mode.
std::string fit_report(const std::vector<SweepRecord>& rows, FitMode mode, const std::string& metric);

}  // namespace qarith
