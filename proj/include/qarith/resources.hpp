#pragma once

// Logical resource accounting. Counters are GateSinks so a circuit can be
// tallied while it is being built, without storing its gates.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "qarith/circuit.hpp"

namespace qarith {

struct LogicalCounts {
    std::uint64_t qubits = 0;
    std::uint64_t t_count = 0;
    std::uint64_t toffoli_count = 0;
    std::uint64_t cnot_count = 0;
    std::uint64_t single_qubit_clifford = 0;
    std::uint64_t rotation_count = 0;
    std::uint64_t depth = 0;
    std::uint64_t t_depth = 0;

    bool operator==(const LogicalCounts&) const = default;
};

struct SynthesisParams {
    double epsilon_syn = 1e-10;
    double t_per_rotation_slope = 0.53;
    double t_per_rotation_offset = 5.3;
};

/// ceil(slope * log2(1/eps) + offset).
std::uint64_t t_per_rotation(const SynthesisParams& p);

/// Greedy as-soon-as-possible layering. T-depth is tracked on its own level
/// array: only T-bearing layers advance it, every gate orders its qubits.
class DepthTracker {
  public:
    /// Qubit ids at or above this value address the lowering's MCX ladder ancillas.
    static constexpr std::uint32_t kLadderBase = 0x80000000U;

    void resize(std::size_t n);
    void resize_ladder(std::size_t n);
    /// A block occupying `layers` consecutive layers on all of `ops`, of which
    /// `t_layers` carry T gates.
    void apply(std::span<const QubitId> ops, std::uint64_t layers, std::uint64_t t_layers);
    void apply(std::initializer_list<QubitId> ops, std::uint64_t layers, std::uint64_t t_layers) {
        apply(std::span<const QubitId>(ops.begin(), ops.size()), layers, t_layers);
    }
    std::uint64_t depth() const { return depth_; }
    std::uint64_t t_depth() const { return t_depth_; }

  private:
    std::vector<std::uint64_t> level_;
    std::vector<std::uint64_t> t_level_;
    std::vector<std::uint64_t> ladder_level_;
    std::vector<std::uint64_t> ladder_t_level_;
    std::uint64_t depth_ = 0;
    std::uint64_t t_depth_ = 0;
};

/// Gate-class tallies without decomposition. SWAP counts as three CNOTs; CCX
/// and MCX both count as Toffolis; every gate is one layer.
class RawCounter : public GateSink {
  public:
    void on_gate(const Gate& g) override;
    void on_qubit_count(std::size_t count) override;
    LogicalCounts counts() const;

  private:
    LogicalCounts c_;
    DepthTracker depth_;
};

/// Counts only Toffoli-class gates; the cheapest sink for very large circuits.
class ToffoliCounter : public GateSink {
  public:
    void on_gate(const Gate& g) override;
    void on_qubit_count(std::size_t count) override { qubits_ = count; }
    std::uint64_t toffolis() const { return toffolis_; }
    std::uint64_t qubits() const { return qubits_; }

  private:
    std::uint64_t toffolis_ = 0;
    std::uint64_t qubits_ = 0;
};

/// Clifford+T lowering: CCX becomes the 15-gate, 7-T network; MCX with k
/// controls becomes a ladder of 2(k-1) CCX and one CNOT over k-1 clean
/// ancillas; each Rz or CPhase becomes a synthesized rotation block.
class CliffordTCounter : public GateSink {
  public:
    explicit CliffordTCounter(SynthesisParams p);
    void on_gate(const Gate& g) override;
    void on_qubit_count(std::size_t count) override;
    LogicalCounts counts() const;

  private:
    void lower_ccx(QubitId a, QubitId b, QubitId c);
    void rotation_block(std::span<const QubitId> ops);

    SynthesisParams params_;
    std::uint64_t t_per_rot_;
    std::size_t base_qubits_ = 0;
    std::size_t ladder_peak_ = 0;
    LogicalCounts c_;
    DepthTracker depth_;
};

class TeeSink : public GateSink {
  public:
    TeeSink(GateSink& a, GateSink& b) : a_(a), b_(b) {}
    void on_gate(const Gate& g) override {
        a_.on_gate(g);
        b_.on_gate(g);
    }
    void on_qubit_count(std::size_t n) override {
        a_.on_qubit_count(n);
        b_.on_qubit_count(n);
    }

  private:
    GateSink& a_;
    GateSink& b_;
};

LogicalCounts count_raw(const Circuit& c);
LogicalCounts lower_to_clifford_t(const Circuit& c, const SynthesisParams& p);

/// The 15-gate Toffoli network used by the lowering, as a 3-qubit circuit.
Circuit toffoli_clifford_t();

/// Constructs a circuit into the given builder.
using BuildFn = std::function<void(Builder&)>;

struct CountedCircuit {
    LogicalCounts raw;
    LogicalCounts lowered;
    SynthesisParams synthesis;
};

/// Streams `build` through a raw counter, picks epsilon_syn as the synthesis
/// share of `error_budget` (one third) split across all rotations, then
/// streams it again through the lowering counter. Circuits without rotations
/// take a single pass.
CountedCircuit count_streaming(const BuildFn& build, double error_budget, SynthesisParams base = {});

/// Toffoli count and width of `build` without any other accounting.
std::pair<std::uint64_t, std::uint64_t> count_toffolis_streaming(const BuildFn& build);

}  // namespace qarith
