#pragma once

// Gate-level circuit IR: qubit ids, little-endian registers, the fixed gate
// alphabet, an append-only builder with an ancilla ledger, and the adjoint /
// controlled functors.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qarith {

struct QubitId {
    std::uint32_t index = 0;

    constexpr QubitId() = default;
    constexpr explicit QubitId(std::uint32_t i) : index(i) {}
    constexpr auto operator<=>(const QubitId&) const = default;
};

/// Ordered, duplicate-free list of qubits. Position 0 holds the least
/// significant bit of the encoded integer.
class Register {
  public:
    Register() = default;
    explicit Register(std::vector<QubitId> qubits);

    std::size_t size() const { return qubits_.size(); }
    bool empty() const { return qubits_.empty(); }
    QubitId operator[](std::size_t i) const { return qubits_[i]; }
    QubitId at(std::size_t i) const { return qubits_.at(i); }
    QubitId back() const { return qubits_.back(); }
    std::span<const QubitId> qubits() const { return qubits_; }
    auto begin() const { return qubits_.begin(); }
    auto end() const { return qubits_.end(); }

    /// Sub-register [begin, end); end is clamped to size().
    Register slice(std::size_t begin, std::size_t end) const;
    Register slice_from(std::size_t begin) const { return slice(begin, size()); }
    /// This register followed by `high` (which becomes the more significant part).
    Register concat(const Register& high) const;
    Register append(QubitId high) const;

    bool operator==(const Register&) const = default;

  private:
    std::vector<QubitId> qubits_;
};

enum class GateKind : std::uint8_t {
    X,
    CNOT,
    CCX,
    MCX,
    SWAP,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rz,
    CPhase,
};

std::string_view gate_name(GateKind kind);

inline constexpr std::size_t kMaxGateOperands = 8;

/// One gate of the alphabet. Operands are stored controls-first with the
/// target last; SWAP stores its two qubits in order.
class Gate {
  public:
    static Gate x(QubitId t);
    static Gate cnot(QubitId c, QubitId t);
    static Gate ccx(QubitId c1, QubitId c2, QubitId t);
    static Gate mcx(std::span<const QubitId> controls, QubitId t);
    static Gate swap(QubitId a, QubitId b);
    static Gate h(QubitId t);
    static Gate s(QubitId t);
    static Gate sdg(QubitId t);
    static Gate t(QubitId t);
    static Gate tdg(QubitId t);
    static Gate rz(QubitId t, double angle);
    static Gate cphase(QubitId c, QubitId t, double angle);

    GateKind kind() const { return kind_; }
    double angle() const { return angle_; }
    std::span<const QubitId> operands() const { return {ops_.data(), arity_}; }
    std::size_t arity() const { return arity_; }
    QubitId target() const { return ops_[arity_ - 1]; }
    std::span<const QubitId> controls() const { return {ops_.data(), std::size_t(arity_ - 1)}; }

    /// True for the classical-reversible subset {X, CNOT, CCX, MCX, SWAP}.
    bool is_permutation() const;
    Gate adjoint() const;

    bool operator==(const Gate&) const = default;

  private:
    Gate(GateKind kind, std::initializer_list<QubitId> ops, double angle = 0.0);
    Gate(GateKind kind, std::span<const QubitId> ops, double angle);

    GateKind kind_ = GateKind::X;
    std::uint8_t arity_ = 0;
    std::array<QubitId, kMaxGateOperands> ops_{};
    double angle_ = 0.0;
};

/// Finalized, immutable circuit.
class Circuit {
  public:
    Circuit() = default;
    /// Validates operands against num_qubits and register disjointness.
    Circuit(std::size_t num_qubits, std::vector<Gate> gates, std::vector<Register> data_registers,
            std::vector<Register> ancilla_registers);

    std::size_t num_qubits() const { return num_qubits_; }
    std::span<const Gate> gates() const { return gates_; }
    const std::vector<Register>& data_registers() const { return data_registers_; }
    const std::vector<Register>& ancilla_registers() const { return ancilla_registers_; }
    std::vector<QubitId> ancilla_qubits() const;
    bool is_permutation() const;

  private:
    std::size_t num_qubits_ = 0;
    std::vector<Gate> gates_;
    std::vector<Register> data_registers_;
    std::vector<Register> ancilla_registers_;
};

Circuit adjoint(const Circuit& c);

/// Control lifting. `control` may be an unused existing qubit or the next
/// fresh index (num_qubits()); in the latter case it becomes a new data register.
Circuit controlled(const Circuit& c, QubitId control);

/// Appends the controlled version of `g` to `out`.
void append_controlled(const Gate& g, QubitId control, std::vector<Gate>& out);

/// Text dump: `qubits=<N>` header then one `NAME q0[,q1..][;angle=<rad>]` per line.
std::string dump(const Circuit& c);
/// Inverse of dump(); registers are not part of the format, so the result has
/// a single data register spanning all qubits.
Circuit parse_dump(std::string_view text);

/// Receives gates streamed out of a Builder.
class GateSink {
  public:
    virtual ~GateSink() = default;
    virtual void on_gate(const Gate& g) = 0;
    /// Called whenever the builder's qubit count grows.
    virtual void on_qubit_count(std::size_t /*count*/) {}
};

class Builder;

/// Clean-ancilla register that is handed back to the builder's pool on scope exit.
class ScopedAncilla {
  public:
    ScopedAncilla(Builder& b, std::size_t size);
    ~ScopedAncilla();
    ScopedAncilla(const ScopedAncilla&) = delete;
    ScopedAncilla& operator=(const ScopedAncilla&) = delete;

    const Register& reg() const { return reg_; }
    QubitId operator[](std::size_t i) const { return reg_[i]; }
    std::size_t size() const { return reg_.size(); }

  private:
    Builder& builder_;
    Register reg_;
};

/// Single-owner circuit builder.
///
/// Qubits are never removed: the qubit count only grows and is the peak
/// width. Ancillas handed back through release_ancilla() must be |0> again
/// and are recycled by later alloc_ancilla() calls; every qubit that was ever
/// an ancilla is reported in the finalized circuit's ancilla registers and is
/// checked for cleanliness by simulation.
class Builder {
  public:
    /// Recording builder: finalize() returns the circuit.
    Builder();
    /// Streaming builder: gates go to `sink` and are not retained.
    explicit Builder(GateSink& sink);

    Builder(const Builder&) = delete;
    Builder& operator=(const Builder&) = delete;

    Register alloc_register(std::size_t size);
    Register alloc_ancilla(std::size_t size);
    void release_ancilla(const Register& reg);
    ScopedAncilla scoped_ancilla(std::size_t size) { return ScopedAncilla(*this, size); }

    void append(const Gate& g);

    void x(QubitId t) { append(Gate::x(t)); }
    void cx(QubitId c, QubitId t) { append(Gate::cnot(c, t)); }
    void ccx(QubitId c1, QubitId c2, QubitId t) { append(Gate::ccx(c1, c2, t)); }
    void swap(QubitId a, QubitId b) { append(Gate::swap(a, b)); }
    void h(QubitId t) { append(Gate::h(t)); }
    void s(QubitId t) { append(Gate::s(t)); }
    void sdg(QubitId t) { append(Gate::sdg(t)); }
    void t(QubitId q) { append(Gate::t(q)); }
    void tdg(QubitId q) { append(Gate::tdg(q)); }
    void rz(QubitId t, double angle) { append(Gate::rz(t, angle)); }
    void cphase(QubitId c, QubitId t, double angle) { append(Gate::cphase(c, t, angle)); }

    /// Emits the adjoint of whatever `body` emits. Allocations made inside
    /// `body` happen immediately; only the gates are reversed.
    template <class Body>
    void adjoint(Body&& body);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t ancilla_ledger_size() const { return ledger_.size(); }
    std::uint64_t emitted_gates() const { return emitted_; }

    /// Recording builders only.
    Circuit finalize() &&;

  private:
    void validate(const Gate& g) const;
    void emit(const Gate& g);
    void grow(std::size_t count);

    GateSink* sink_ = nullptr;
    std::size_t num_qubits_ = 0;
    std::uint64_t emitted_ = 0;
    std::vector<Gate> gates_;
    std::vector<std::vector<Gate>> captures_;
    std::vector<Register> data_registers_;
    std::vector<Register> ledger_;
    std::vector<bool> is_ancilla_;
    std::vector<QubitId> free_pool_;  // min-heap: lowest id is reused first
};

template <class Body>
void Builder::adjoint(Body&& body) {
    captures_.emplace_back();
    struct Pop {
        Builder& b;
        std::vector<Gate> take() {
            std::vector<Gate> v = std::move(b.captures_.back());
            b.captures_.pop_back();
            done = true;
            return v;
        }
        bool done = false;
        ~Pop() {
            if (!done) b.captures_.pop_back();
        }
    } pop{*this};
    body();
    std::vector<Gate> captured = pop.take();
    for (auto it = captured.rbegin(); it != captured.rend(); ++it) emit(it->adjoint());
}

}  // namespace qarith
