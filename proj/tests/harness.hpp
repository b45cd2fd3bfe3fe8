#pragma once

// Exhaustive oracle drivers shared by the unit tests. The oracle callback
// receives the input register values and returns the expected value of every
// data register (or nullopt to skip the case); ancillas must end at zero.

#include <gtest/gtest.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <vector>

#include "qarith/circuit.hpp"
#include "qarith/simulate.hpp"

namespace qarith::testing {

using Values = std::vector<std::uint64_t>;
using Oracle = std::function<std::optional<Values>(const Values&)>;

inline std::string describe(const Values& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

inline Values decode(std::uint64_t index, const std::vector<Register>& inputs) {
    Values v;
    for (const Register& r : inputs) {
        v.push_back(index & ((std::uint64_t{1} << r.size()) - 1));
        index >>= r.size();
    }
    return v;
}

/// Returns the number of checked cases; records gtest failures for mismatches.
inline std::uint64_t check_permutation(const Circuit& c, const std::vector<Register>& inputs, const Oracle& oracle) {
    std::size_t bits = 0;
    for (const Register& r : inputs) bits += r.size();
    const std::uint64_t total = std::uint64_t{1} << bits;
    const auto ancillas = c.ancilla_qubits();
    std::uint64_t checked = 0;
    int failures = 0;
    for (std::uint64_t base = 0; base < total; base += 64) {
        const std::uint64_t lanes = std::min<std::uint64_t>(64, total - base);
        BatchState s(c.num_qubits());
        for (std::uint64_t l = 0; l < lanes; ++l) {
            Values in = decode(base + l, inputs);
            for (std::size_t k = 0; k < inputs.size(); ++k) s.write(inputs[k], l, in[k]);
        }
        simulate_batch(c, s);
        for (std::uint64_t l = 0; l < lanes; ++l) {
            Values in = decode(base + l, inputs);
            auto expected = oracle(in);
            if (!expected) continue;
            ++checked;
            Values got;
            for (const Register& r : c.data_registers()) got.push_back(s.read(r, l));
            bool clean = true;
            for (QubitId q : ancillas) clean = clean && ((s.qubit(q) >> l) & 1U) == 0;
            if ((got != *expected || !clean) && failures++ < 5) {
                ADD_FAILURE() << "input (" << describe(in) << ") expected (" << describe(*expected) << ") got ("
                              << describe(got) << ")" << (clean ? "" : " with dirty ancilla");
            }
        }
    }
    return checked;
}

inline std::uint64_t check_statevector(const Circuit& c, const std::vector<Register>& inputs, const Oracle& oracle) {
    std::size_t bits = 0;
    for (const Register& r : inputs) bits += r.size();
    const std::uint64_t total = std::uint64_t{1} << bits;
    const auto ancillas = c.ancilla_qubits();
    std::uint64_t checked = 0;
    int failures = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Values in = decode(idx, inputs);
        auto expected = oracle(in);
        if (!expected) continue;
        BasisState st(c.num_qubits());
        for (std::size_t k = 0; k < inputs.size(); ++k) st.write(inputs[k], in[k]);
        auto v = simulate_statevector(c, st);
        ++checked;
        Values got;
        bool clean = true;
        try {
            BasisState out = extract_basis(v, 1e-9);
            for (const Register& r : c.data_registers()) got.push_back(out.read(r));
            for (QubitId q : ancillas) clean = clean && !out.get(q);
        } catch (const SimulationError&) {
            clean = false;
        }
        if ((got != *expected || !clean) && failures++ < 5) {
            ADD_FAILURE() << "input (" << describe(in) << ") expected (" << describe(*expected) << ") got ("
                          << describe(got) << ")" << (clean ? "" : " not a clean basis state");
        }
    }
    return checked;
}

inline std::uint64_t mask(std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

/// Like check_permutation but over an explicit list of input tuples.
inline std::uint64_t check_samples(const Circuit& c, const std::vector<Register>& inputs,
                                   const std::vector<Values>& samples, const Oracle& oracle) {
    const auto ancillas = c.ancilla_qubits();
    std::uint64_t checked = 0;
    int failures = 0;
    for (std::size_t base = 0; base < samples.size(); base += 64) {
        const std::size_t lanes = std::min<std::size_t>(64, samples.size() - base);
        BatchState s(c.num_qubits());
        for (std::size_t l = 0; l < lanes; ++l) {
            for (std::size_t k = 0; k < inputs.size(); ++k) s.write(inputs[k], l, samples[base + l][k]);
        }
        simulate_batch(c, s);
        for (std::size_t l = 0; l < lanes; ++l) {
            const Values& in = samples[base + l];
            auto expected = oracle(in);
            if (!expected) continue;
            ++checked;
            Values got;
            for (const Register& r : c.data_registers()) got.push_back(s.read(r, l));
            bool clean = true;
            for (QubitId q : ancillas) clean = clean && ((s.qubit(q) >> l) & 1U) == 0;
            if ((got != *expected || !clean) && failures++ < 5) {
                ADD_FAILURE() << "input (" << describe(in) << ") expected (" << describe(*expected) << ") got ("
                              << describe(got) << ")" << (clean ? "" : " with dirty ancilla");
            }
        }
    }
    return checked;
}

}  // namespace qarith::testing
