#include "qarith/simulate.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qarith {

BasisState::BasisState(std::size_t num_qubits, std::uint64_t bits)
    : num_qubits_(num_qubits), words_((num_qubits + 63) / 64, 0) {
    if (!words_.empty()) {
        words_[0] = num_qubits >= 64 ? bits : bits & ((std::uint64_t{1} << num_qubits) - 1);
    } else if (bits != 0) {
        throw std::invalid_argument("non-zero bits for a zero-qubit state");
    }
}

void BasisState::set(QubitId q, bool v) {
    std::uint64_t mask = std::uint64_t{1} << (q.index % 64);
    if (v) {
        words_[q.index / 64] |= mask;
    } else {
        words_[q.index / 64] &= ~mask;
    }
}

std::uint64_t BasisState::read(const Register& r) const {
    if (r.size() > 64) throw std::invalid_argument("register wider than 64 qubits");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < r.size(); ++i) v |= std::uint64_t(get(r[i])) << i;
    return v;
}

void BasisState::write(const Register& r, std::uint64_t value) {
    if (r.size() > 64) throw std::invalid_argument("register wider than 64 qubits");
    for (std::size_t i = 0; i < r.size(); ++i) set(r[i], (value >> i) & 1U);
}

void BatchState::write(const Register& r, std::size_t lane, std::uint64_t value) {
    const std::uint64_t bit = std::uint64_t{1} << lane;
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t& w = lanes_[r[i].index];
        w = ((value >> i) & 1U) ? (w | bit) : (w & ~bit);
    }
}

std::uint64_t BatchState::read(const Register& r, std::size_t lane) const {
    if (r.size() > 64) throw std::invalid_argument("register wider than 64 qubits");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < r.size(); ++i) v |= ((lanes_[r[i].index] >> lane) & 1U) << i;
    return v;
}

void simulate_batch(const Circuit& c, BatchState& s) {
    if (s.num_qubits() != c.num_qubits()) throw std::invalid_argument("batch width does not match circuit");
    const auto gates = c.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        const auto ops = g.operands();
        switch (g.kind()) {
            case GateKind::X: s.qubit(ops[0]) = ~s.qubit(ops[0]); break;
            case GateKind::CNOT: s.qubit(ops[1]) ^= s.qubit(ops[0]); break;
            case GateKind::CCX: s.qubit(ops[2]) ^= s.qubit(ops[0]) & s.qubit(ops[1]); break;
            case GateKind::MCX: {
                std::uint64_t m = ~std::uint64_t{0};
                for (QubitId q : g.controls()) m &= s.qubit(q);
                s.qubit(g.target()) ^= m;
                break;
            }
            case GateKind::SWAP: std::swap(s.qubit(ops[0]), s.qubit(ops[1])); break;
            default:
                throw SimulationError("gate " + std::to_string(i) + " (" + std::string(gate_name(g.kind())) +
                                      ") is not a permutation gate");
        }
    }
}

BasisState simulate_permutation(const Circuit& c, const BasisState& in) {
    if (in.num_qubits() != c.num_qubits()) throw std::invalid_argument("state width does not match circuit");
    BatchState batch(c.num_qubits());
    for (std::size_t q = 0; q < c.num_qubits(); ++q) {
        batch.qubit(QubitId(std::uint32_t(q))) = in.get(QubitId(std::uint32_t(q))) ? 1U : 0U;
    }
    simulate_batch(c, batch);
    BasisState out(c.num_qubits());
    for (std::size_t q = 0; q < c.num_qubits(); ++q) {
        out.set(QubitId(std::uint32_t(q)), batch.qubit(QubitId(std::uint32_t(q))) & 1U);
    }
    return out;
}

std::vector<std::uint64_t> permutation_table(const Circuit& c, const SimulatorLimits& limits) {
    const std::size_t n = c.num_qubits();
    if (n > limits.permutation_table_qubits) {
        throw SimulationError("permutation table of " + std::to_string(n) + " qubits exceeds the limit of " +
                              std::to_string(limits.permutation_table_qubits));
    }
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<std::uint64_t> table(size);
    for (std::uint64_t base = 0; base < size; base += 64) {
        const std::uint64_t lanes = std::min<std::uint64_t>(64, size - base);
        BatchState batch(n);
        for (std::size_t q = 0; q < n; ++q) {
            std::uint64_t w = 0;
            for (std::uint64_t l = 0; l < lanes; ++l) w |= (((base + l) >> q) & 1U) << l;
            batch.qubit(QubitId(std::uint32_t(q))) = w;
        }
        simulate_batch(c, batch);
        for (std::uint64_t l = 0; l < lanes; ++l) {
            std::uint64_t out = 0;
            for (std::size_t q = 0; q < n; ++q) out |= ((batch.qubit(QubitId(std::uint32_t(q))) >> l) & 1U) << q;
            table[base + l] = out;
        }
    }
    return table;
}

// ---------------------------------------------------------------------------

StateVector::StateVector(std::size_t num_qubits, std::uint64_t basis_index)
    : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0}) {
    if (basis_index >= amps_.size()) throw std::invalid_argument("basis index out of range");
    amps_[basis_index] = 1.0;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::apply(const Gate& g) {
    const auto ops = g.operands();
    const std::size_t dim = amps_.size();
    auto bit = [](QubitId q) { return std::size_t{1} << q.index; };

    switch (g.kind()) {
        case GateKind::X:
        case GateKind::CNOT:
        case GateKind::CCX:
        case GateKind::MCX: {
            std::size_t cmask = 0;
            for (QubitId q : g.controls()) cmask |= bit(q);
            const std::size_t t = bit(g.target());
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & t) == 0 && (i & cmask) == cmask) std::swap(amps_[i], amps_[i | t]);
            }
            break;
        }
        case GateKind::SWAP: {
            const std::size_t a = bit(ops[0]);
            const std::size_t b = bit(ops[1]);
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & a) != 0 && (i & b) == 0) std::swap(amps_[i], amps_[(i & ~a) | b]);
            }
            break;
        }
        case GateKind::H: {
            const std::size_t t = bit(ops[0]);
            const double r = std::numbers::sqrt2 / 2;
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & t) == 0) {
                    Amplitude a0 = amps_[i];
                    Amplitude a1 = amps_[i | t];
                    amps_[i] = r * (a0 + a1);
                    amps_[i | t] = r * (a0 - a1);
                }
            }
            break;
        }
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::T:
        case GateKind::Tdg: {
            double angle = 0;
            switch (g.kind()) {
                case GateKind::S: angle = std::numbers::pi / 2; break;
                case GateKind::Sdg: angle = -std::numbers::pi / 2; break;
                case GateKind::T: angle = std::numbers::pi / 4; break;
                default: angle = -std::numbers::pi / 4; break;
            }
            const Amplitude phase = std::polar(1.0, angle);
            const std::size_t t = bit(ops[0]);
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & t) != 0) amps_[i] *= phase;
            }
            break;
        }
        case GateKind::Rz: {
            const Amplitude p0 = std::polar(1.0, -g.angle() / 2);
            const Amplitude p1 = std::polar(1.0, g.angle() / 2);
            const std::size_t t = bit(ops[0]);
            for (std::size_t i = 0; i < dim; ++i) amps_[i] *= (i & t) ? p1 : p0;
            break;
        }
        case GateKind::CPhase: {
            const Amplitude phase = std::polar(1.0, g.angle());
            const std::size_t m = bit(ops[0]) | bit(ops[1]);
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & m) == m) amps_[i] *= phase;
            }
            break;
        }
    }
}

StateVector simulate_statevector(const Circuit& c, const BasisState& in, const SimulatorLimits& limits) {
    const std::size_t n = c.num_qubits();
    if (n > limits.statevector_qubits) {
        throw SimulationError("statevector of " + std::to_string(n) + " qubits exceeds the limit of " +
                              std::to_string(limits.statevector_qubits));
    }
    if (in.num_qubits() != n) throw std::invalid_argument("state width does not match circuit");
    StateVector v(n, in.low_bits());
    for (const Gate& g : c.gates()) v.apply(g);
    return v;
}

BasisState extract_basis(const StateVector& v, double tol) {
    const auto amps = v.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (std::norm(amps[i]) >= 1.0 - tol) return BasisState(v.num_qubits(), i);
    }
    throw SimulationError("state is not within tolerance of a computational basis state");
}

}  // namespace qarith
