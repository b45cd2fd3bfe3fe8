#pragma once

// Named workloads: every (op_class, algorithm) pair the tools know about, how
// to build one at width n, and oracle verification against classical
// arithmetic.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qarith/circuit.hpp"
#include "qarith/resources.hpp"

namespace qarith {

enum class OpClass { InplaceAdder, OutofplaceAdder, ConstAdder, Subtractor, Multiplier, Divider, ModExp };

const std::vector<OpClass>& all_op_classes();
std::string to_string(OpClass op);
OpClass parse_op_class(std::string_view s);

struct CatalogEntry {
    OpClass op_class;
    std::string algorithm;   // name accepted by workload_builder; <x> marks a slot
    std::string parameters;  // free-form description of the parameter slots
};

/// Fixed order: op classes as declared, algorithms in library order.
std::vector<CatalogEntry> catalog();

/// Smallest width the workload accepts (2 for ModExp, else 1).
std::size_t min_width(OpClass op);
/// Throws std::invalid_argument for an unknown algorithm or a width the
/// construction rejects. Constant adders use sweep_adder_constant(n); ModExp
/// uses N = 2^n - 1 and sweep_modexp_base(N).
BuildFn workload_builder(OpClass op, std::string_view algorithm, std::size_t n);
Circuit build_workload(OpClass op, std::string_view algorithm, std::size_t n);

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct VerifyOptions {
    std::uint64_t seed = kDefaultSeed;
    // Inputs with more bits than this are sampled instead of enumerated.
    std::size_t exhaustive_bits = 14;
    std::size_t random_cases = 1000;
};

struct VerifyResult {
    OpClass op_class = OpClass::InplaceAdder;
    std::string algorithm;
    std::size_t n = 0;
    std::string method;  // "exhaustive" or "random", with "/statevector" for phase circuits
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::string counterexample;  // first mismatch, empty when none
    bool passed() const { return failures == 0; }
};

/// Runs the workload on every basis input of its input registers (output
/// registers start at zero) and compares all data registers with the
/// classical result; ancillas must come back to zero. Throws SimulationError
/// when a phase circuit exceeds the statevector limit, std::out_of_range
/// when a register no longer fits in 64 bits.
VerifyResult verify_workload(OpClass op, std::string_view algorithm, std::size_t n, const VerifyOptions& opt = {});

/// c followed by its adjoint must act as the identity on every tested input.
/// Exhaustive over all qubits up to 16, otherwise over the data-register
/// inputs with ancillas at zero.
VerifyResult verify_adjoint_identity(OpClass op, std::string_view algorithm, std::size_t n,
                                     const VerifyOptions& opt = {});

}  // namespace qarith
