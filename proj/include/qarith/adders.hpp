#pragma once

// In-place, out-of-place and constant adders plus the complement-trick
// subtractor. All arithmetic is modulo 2^n for n-qubit registers.
//
// The register-level functions append into an existing Builder so larger
// constructions can reuse them; build_* wrap them into standalone circuits
// whose data registers are laid out in argument order.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qarith/bigint.hpp"
#include "qarith/circuit.hpp"

namespace qarith {

enum class InPlaceAdderAlgo { Gidney, TTK, CDKM, DKRS, QFT };
enum class OutOfPlaceAdderAlgo { Gidney, DKRS };

struct ConstAdderAlgo {
    enum class Kind { ViaInPlace, QFT };
    Kind kind = Kind::ViaInPlace;
    InPlaceAdderAlgo inner = InPlaceAdderAlgo::Gidney;

    static ConstAdderAlgo via(InPlaceAdderAlgo a) { return {Kind::ViaInPlace, a}; }
    static ConstAdderAlgo qft() { return {Kind::QFT, InPlaceAdderAlgo::QFT}; }
    bool operator==(const ConstAdderAlgo&) const = default;
};

const std::vector<InPlaceAdderAlgo>& all_inplace_adders();
const std::vector<OutOfPlaceAdderAlgo>& all_outofplace_adders();
const std::vector<ConstAdderAlgo>& all_const_adders();

std::string to_string(InPlaceAdderAlgo a);
std::string to_string(OutOfPlaceAdderAlgo a);
std::string to_string(const ConstAdderAlgo& a);
InPlaceAdderAlgo parse_inplace_adder(std::string_view s);
OutOfPlaceAdderAlgo parse_outofplace_adder(std::string_view s);
ConstAdderAlgo parse_const_adder(std::string_view s);

/// True when the construction only uses permutation gates.
bool is_permutation_algo(InPlaceAdderAlgo a);

// ---- register-level building blocks (equal widths required) ----

/// b += a.
void add_inplace(Builder& b, InPlaceAdderAlgo algo, const Register& a, const Register& target);
/// b -= a, as complement(complement(b) + a).
void sub_inplace(Builder& b, InPlaceAdderAlgo algo, const Register& a, const Register& target);
/// b += ctrl·a (one AND ancilla register of width n).
void add_inplace_controlled(Builder& b, InPlaceAdderAlgo algo, QubitId ctrl, const Register& a,
                            const Register& target);
void sub_inplace_controlled(Builder& b, InPlaceAdderAlgo algo, QubitId ctrl, const Register& a,
                            const Register& target);
/// z ^= a + b with z clean on entry.
void add_outofplace(Builder& b, OutOfPlaceAdderAlgo algo, const Register& a, const Register& bb, const Register& z);
/// target += constant (mod 2^n), optionally controlled.
void add_const(Builder& b, const ConstAdderAlgo& algo, const BigInt& constant, const Register& target,
               std::optional<QubitId> ctrl = std::nullopt);
void sub_const(Builder& b, const ConstAdderAlgo& algo, const BigInt& constant, const Register& target,
               std::optional<QubitId> ctrl = std::nullopt);

// Fourier-basis helpers, shared with the constant adder.
void qft_noswap(Builder& b, const Register& r);
void iqft_noswap(Builder& b, const Register& r);

// ---- standalone circuits ----

/// Data registers: a (n), b (n).
Circuit build_inplace_adder(InPlaceAdderAlgo algo, std::size_t n);
/// Data registers: a (n), b (n), sum (n).
Circuit build_outofplace_adder(OutOfPlaceAdderAlgo algo, std::size_t n);
/// Data register: b (n).
Circuit build_const_adder(const ConstAdderAlgo& algo, std::size_t n, const BigInt& constant);
/// Data registers: a (n), b (n); b becomes (b - a) mod 2^n.
Circuit build_subtractor(InPlaceAdderAlgo algo, std::size_t n);

/// The sweep constant sum_{i=0}^{ceil(n/2)} 4^i reduced mod 2^n.
BigInt sweep_adder_constant(std::size_t n);

}  // namespace qarith
