#pragma once

// Table lookup, modular arithmetic on registers holding values below N, and
// LYY modular exponentiation (plain and windowed).

#include <string>
#include <string_view>
#include <vector>

#include "qarith/bigint.hpp"
#include "qarith/circuit.hpp"
#include "qarith/resources.hpp"

namespace qarith {

struct LookupTable {
    std::size_t address_bits = 0;
    std::vector<BigInt> entries;  // exactly 2^address_bits values
};

/// target ^= entries[addr] via unary iteration. Entries must fit in |target|.
void table_lookup(Builder& b, const Register& addr, const std::vector<BigInt>& entries, const Register& target);
/// Data registers: addr, y (m qubits).
Circuit build_table_lookup(const LookupTable& t, std::size_t m);

// The modular helpers below assume 1 < N < 2^|z| and operands already reduced
// below N; other inputs are permuted deterministically but meaninglessly.

/// z = (z + c) mod N, optionally controlled.
void modadd_const(Builder& b, const BigInt& c, const BigInt& N, const Register& z,
                  std::optional<QubitId> ctrl = std::nullopt);
/// z = (z + c) mod N for a quantum c < N, optionally controlled.
void modadd_quantum(Builder& b, const Register& c, const BigInt& N, const Register& z,
                    std::optional<QubitId> ctrl = std::nullopt);
/// Doubles z modulo an odd N. z is extended by `top`, a clean qubit; the
/// returned view holds the result and its last qubit is the clean one.
Register moddouble(Builder& b, const BigInt& N, const Register& z_with_top);
/// z = y * c mod N for z clean on entry; Horner over the bits of y (odd N).
void modmul_quantum_out(Builder& b, const Register& y, const Register& c, const BigInt& N, const Register& z);
/// z += y * c mod N, optionally controlled.
void modmul_const_out(Builder& b, const BigInt& c, const BigInt& N, const Register& y, const Register& z,
                      std::optional<QubitId> ctrl = std::nullopt);
/// y = y * c mod N in place; requires gcd(c, N) = 1.
void modmul_const_inplace(Builder& b, const BigInt& c, const BigInt& N, const Register& y,
                          std::optional<QubitId> ctrl = std::nullopt);

/// Data register: x (n qubits).
Circuit build_modmul_const(const BigInt& c, const BigInt& N, std::size_t n);

struct ModExpAlgo {
    enum class Kind { LYY, LYYWindowed, LYYWindowedOpt };
    Kind kind = Kind::LYY;
    std::size_t window = 0;

    static ModExpAlgo lyy() { return {Kind::LYY, 0}; }
    static ModExpAlgo windowed(std::size_t w);
    static ModExpAlgo windowed_opt() { return {Kind::LYYWindowedOpt, 0}; }
    /// Window actually used at width n (0 for plain LYY).
    std::size_t window_for(std::size_t n) const;
    bool operator==(const ModExpAlgo&) const = default;
};

std::string to_string(const ModExpAlgo& a);
/// "LYY", "LYYWindowed(<w>)" or "LYYWindowedOpt".
ModExpAlgo parse_modexp(std::string_view s);

/// floor(2 log2 n + 0.5) clamped to [1, n].
std::size_t optimal_window(std::size_t n);

/// |x>|0> -> |x>|a^x mod N>; windowed variants need odd N.
void modexp(Builder& b, const ModExpAlgo& algo, const BigInt& a, const BigInt& N, const Register& x,
            const Register& y);
/// Data registers: x (n), y (n).
Circuit build_modexp(const ModExpAlgo& algo, const BigInt& a, const BigInt& N, std::size_t n);
BuildFn modexp_builder(const ModExpAlgo& algo, const BigInt& a, const BigInt& N, std::size_t n);

/// Base used by sweeps: (5^24 + 24^5) mod N, stepped up until coprime to N.
BigInt sweep_modexp_base(const BigInt& N);
/// 2^n - 1.
BigInt sweep_modexp_modulus(std::size_t n);

}  // namespace qarith
