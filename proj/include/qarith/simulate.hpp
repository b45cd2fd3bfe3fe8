#pragma once

// Verification substrate: computational-basis (permutation) simulation for
// Toffoli-class circuits, 64 inputs at a time, and dense statevector
// simulation for circuits that carry phases.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qarith/circuit.hpp"

namespace qarith {

/// Raised when a circuit cannot be simulated by the requested method or a
/// simulation result contradicts its expected shape.
class SimulationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SimulatorLimits {
    std::size_t permutation_table_qubits = 16;
    std::size_t statevector_qubits = 22;
};

/// Computational basis state over n qubits, little-endian in the qubit array.
class BasisState {
  public:
    BasisState() = default;
    explicit BasisState(std::size_t num_qubits, std::uint64_t bits = 0);

    std::size_t num_qubits() const { return num_qubits_; }
    bool get(QubitId q) const { return (words_[q.index / 64] >> (q.index % 64)) & 1U; }
    void set(QubitId q, bool v);
    void flip(QubitId q) { words_[q.index / 64] ^= std::uint64_t{1} << (q.index % 64); }

    /// Value held by `r` (at most 64 qubits).
    std::uint64_t read(const Register& r) const;
    void write(const Register& r, std::uint64_t value);
    /// Low 64 qubits as an integer.
    std::uint64_t low_bits() const { return words_.empty() ? 0 : words_[0]; }

    bool operator==(const BasisState&) const = default;

  private:
    std::size_t num_qubits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Up to 64 basis states packed bit-sliced: lane j of qubit q is bit j of word q.
class BatchState {
  public:
    explicit BatchState(std::size_t num_qubits) : lanes_(num_qubits, 0) {}

    std::size_t num_qubits() const { return lanes_.size(); }
    std::uint64_t& qubit(QubitId q) { return lanes_[q.index]; }
    std::uint64_t qubit(QubitId q) const { return lanes_[q.index]; }

    void write(const Register& r, std::size_t lane, std::uint64_t value);
    std::uint64_t read(const Register& r, std::size_t lane) const;

  private:
    std::vector<std::uint64_t> lanes_;
};

/// Applies the permutation gates of `c` to every lane. Throws SimulationError
/// naming the first non-permutation gate.
void simulate_batch(const Circuit& c, BatchState& state);

BasisState simulate_permutation(const Circuit& c, const BasisState& in);

/// Output index for every input index. Bijection for any valid circuit.
std::vector<std::uint64_t> permutation_table(const Circuit& c, const SimulatorLimits& limits = {});

using Amplitude = std::complex<double>;

class StateVector {
  public:
    StateVector(std::size_t num_qubits, std::uint64_t basis_index);

    std::size_t num_qubits() const { return num_qubits_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::span<Amplitude> amplitudes() { return amps_; }
    double norm() const;

    void apply(const Gate& g);

  private:
    std::size_t num_qubits_;
    std::vector<Amplitude> amps_;
};

StateVector simulate_statevector(const Circuit& c, const BasisState& in, const SimulatorLimits& limits = {});

/// The basis state carrying probability >= 1 - tol; throws SimulationError otherwise.
BasisState extract_basis(const StateVector& v, double tol = 1e-9);

}  // namespace qarith
