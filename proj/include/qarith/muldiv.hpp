#pragma once

// Multipliers (schoolbook, Karatsuba) and dividers (restoring, non-restoring)
// over the adders of adders.hpp.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qarith/adders.hpp"
#include "qarith/circuit.hpp"
#include "qarith/resources.hpp"

namespace qarith {

struct MultiplierAlgo {
    enum class Kind { Schoolbook, Karatsuba };
    Kind kind = Kind::Schoolbook;
    std::size_t piece_size = 32;

    static MultiplierAlgo schoolbook() { return {Kind::Schoolbook, 0}; }
    static MultiplierAlgo karatsuba(std::size_t piece = 32);
    bool operator==(const MultiplierAlgo&) const = default;
};

std::string to_string(const MultiplierAlgo& a);
/// "Schoolbook", "Karatsuba" (piece 32) or "Karatsuba(<piece>)".
MultiplierAlgo parse_multiplier(std::string_view s);

struct DividerSpec {
    enum class Kind { Restoring, NonRestoring };
    Kind kind = Kind::Restoring;
    InPlaceAdderAlgo adder = InPlaceAdderAlgo::Gidney;
    bool operator==(const DividerSpec&) const = default;
};

std::string to_string(const DividerSpec& s);
/// "<Restoring|NonRestoring>+<adder>".
DividerSpec parse_divider(std::string_view s);
/// Both kinds over the permutation adders Gidney, TTK, CDKM.
std::vector<DividerSpec> all_dividers();

/// out ^= a * b for an `out` register of |a| + |b| qubits that is clean on entry.
void schoolbook_multiply(Builder& b, const Register& a, const Register& bb, const Register& out);
/// out ^= a * b with |a| = |b| = n and |out| = 2n, out clean on entry.
void multiply(Builder& b, const MultiplierAlgo& algo, const Register& a, const Register& bb, const Register& out);

/// Z = (a, q) with q clean: a becomes a mod d and q becomes floor(a / d) for d > 0.
void divide(Builder& b, const DividerSpec& spec, const Register& a, const Register& d, const Register& q);

/// Data registers: a (n), b (n), product (2n).
Circuit build_multiplier(const MultiplierAlgo& algo, std::size_t n);
/// Data registers: a (n) -> remainder, b (n), quotient (n).
Circuit build_divider(const DividerSpec& spec, std::size_t n);

BuildFn multiplier_builder(const MultiplierAlgo& algo, std::size_t n);
BuildFn divider_builder(const DividerSpec& spec, std::size_t n);

/// All six divider configurations with lowered logical counts, sorted by qubit
/// count and then T-count.
std::vector<std::pair<DividerSpec, LogicalCounts>> divider_design_space(std::size_t n);

}  // namespace qarith
