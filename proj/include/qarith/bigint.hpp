#pragma once

// Classical big-integer helpers for build-time constants (moduli, tables,
// modular inverses). Backed by boost::multiprecision::cpp_int.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qarith {

using BigInt = boost::multiprecision::cpp_int;

inline bool bit_of(const BigInt& v, std::size_t i) { return boost::multiprecision::bit_test(v, unsigned(i)); }

inline BigInt pow2(std::size_t k) {
    BigInt r = 1;
    return r << unsigned(k);
}

inline std::size_t bit_length(const BigInt& v) {
    return v <= 0 ? 0 : std::size_t(boost::multiprecision::msb(v)) + 1;
}

/// Non-negative residue of v mod m.
inline BigInt mod_floor(const BigInt& v, const BigInt& m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return r;
}

inline BigInt mod_pow(BigInt base, BigInt exp, const BigInt& m) {
    if (m <= 0) throw std::invalid_argument("modulus must be positive");
    return boost::multiprecision::powm(mod_floor(base, m), exp, m);
}

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

/// Inverse of a mod m; throws when gcd(a, m) != 1.
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt old_r = mod_floor(a, m), r = m;
    BigInt old_s = 1, s = 0;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw std::invalid_argument("value is not invertible modulo " + m.str());
    return mod_floor(old_s, m);
}

inline std::uint64_t to_u64(const BigInt& v) {
    if (v < 0 || bit_length(v) > 64) throw std::out_of_range("value does not fit in 64 bits");
    return v.convert_to<std::uint64_t>();
}

}  // namespace qarith
