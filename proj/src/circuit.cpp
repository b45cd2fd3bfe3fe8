#include "qarith/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace qarith {

Register::Register(std::vector<QubitId> qubits) : qubits_(std::move(qubits)) {
    std::vector<QubitId> sorted = qubits_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("register contains a repeated qubit");
    }
}

Register Register::slice(std::size_t begin, std::size_t end) const {
    end = std::min(end, size());
    if (begin > end) throw std::out_of_range("register slice begins past its end");
    return Register(std::vector<QubitId>(qubits_.begin() + long(begin), qubits_.begin() + long(end)));
}

Register Register::concat(const Register& high) const {
    std::vector<QubitId> q = qubits_;
    q.insert(q.end(), high.qubits_.begin(), high.qubits_.end());
    return Register(std::move(q));
}

Register Register::append(QubitId high) const {
    std::vector<QubitId> q = qubits_;
    q.push_back(high);
    return Register(std::move(q));
}

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "X";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CCX: return "CCX";
        case GateKind::MCX: return "MCX";
        case GateKind::SWAP: return "SWAP";
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "SDG";
        case GateKind::T: return "T";
        case GateKind::Tdg: return "TDG";
        case GateKind::Rz: return "RZ";
        case GateKind::CPhase: return "CPHASE";
    }
    return "?";
}

Gate::Gate(GateKind kind, std::initializer_list<QubitId> ops, double angle)
    : Gate(kind, std::span<const QubitId>(ops.begin(), ops.size()), angle) {}

Gate::Gate(GateKind kind, std::span<const QubitId> ops, double angle) : kind_(kind), angle_(angle) {
    if (ops.empty() || ops.size() > kMaxGateOperands) {
        throw std::invalid_argument("gate operand count out of range");
    }
    if (!std::isfinite(angle)) throw std::invalid_argument("gate angle is not finite");
    arity_ = std::uint8_t(ops.size());
    std::copy(ops.begin(), ops.end(), ops_.begin());
    for (std::size_t i = 0; i < ops.size(); ++i) {
        for (std::size_t j = i + 1; j < ops.size(); ++j) {
            if (ops[i] == ops[j]) {
                throw std::invalid_argument("gate " + std::string(gate_name(kind)) +
                                            " uses qubit " + std::to_string(ops[i].index) + " twice");
            }
        }
    }
}

Gate Gate::x(QubitId t) { return Gate(GateKind::X, {t}); }
Gate Gate::cnot(QubitId c, QubitId t) { return Gate(GateKind::CNOT, {c, t}); }
Gate Gate::ccx(QubitId c1, QubitId c2, QubitId t) { return Gate(GateKind::CCX, {c1, c2, t}); }
Gate Gate::swap(QubitId a, QubitId b) { return Gate(GateKind::SWAP, {a, b}); }
Gate Gate::h(QubitId t) { return Gate(GateKind::H, {t}); }
Gate Gate::s(QubitId t) { return Gate(GateKind::S, {t}); }
Gate Gate::sdg(QubitId t) { return Gate(GateKind::Sdg, {t}); }
Gate Gate::t(QubitId t) { return Gate(GateKind::T, {t}); }
Gate Gate::tdg(QubitId t) { return Gate(GateKind::Tdg, {t}); }
Gate Gate::rz(QubitId t, double angle) { return Gate(GateKind::Rz, {t}, angle); }
Gate Gate::cphase(QubitId c, QubitId t, double angle) { return Gate(GateKind::CPhase, {c, t}, angle); }

Gate Gate::mcx(std::span<const QubitId> controls, QubitId t) {
    if (controls.empty() || controls.size() + 1 > kMaxGateOperands) {
        throw std::invalid_argument("MCX control count out of range");
    }
    std::array<QubitId, kMaxGateOperands> ops{};
    std::copy(controls.begin(), controls.end(), ops.begin());
    ops[controls.size()] = t;
    std::span<const QubitId> all(ops.data(), controls.size() + 1);
    // Fewer than three controls collapse to the dedicated gates.
    if (controls.size() == 1) return Gate(GateKind::CNOT, all, 0.0);
    if (controls.size() == 2) return Gate(GateKind::CCX, all, 0.0);
    return Gate(GateKind::MCX, all, 0.0);
}

bool Gate::is_permutation() const {
    switch (kind_) {
        case GateKind::X:
        case GateKind::CNOT:
        case GateKind::CCX:
        case GateKind::MCX:
        case GateKind::SWAP: return true;
        default: return false;
    }
}

Gate Gate::adjoint() const {
    Gate g = *this;
    switch (kind_) {
        case GateKind::S: g.kind_ = GateKind::Sdg; break;
        case GateKind::Sdg: g.kind_ = GateKind::S; break;
        case GateKind::T: g.kind_ = GateKind::Tdg; break;
        case GateKind::Tdg: g.kind_ = GateKind::T; break;
        case GateKind::Rz:
        case GateKind::CPhase: g.angle_ = -angle_; break;
        default: break;
    }
    return g;
}

Circuit::Circuit(std::size_t num_qubits, std::vector<Gate> gates, std::vector<Register> data_registers,
                 std::vector<Register> ancilla_registers)
    : num_qubits_(num_qubits),
      gates_(std::move(gates)),
      data_registers_(std::move(data_registers)),
      ancilla_registers_(std::move(ancilla_registers)) {
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        for (QubitId q : gates_[i].operands()) {
            if (q.index >= num_qubits_) {
                throw std::out_of_range("gate " + std::to_string(i) + " addresses qubit " +
                                            std::to_string(q.index) + " of a " +
                                            std::to_string(num_qubits_) + "-qubit circuit");
            }
        }
    }
    std::vector<bool> owned(num_qubits_, false);
    auto claim = [&](const Register& r) {
        for (QubitId q : r) {
            if (q.index >= num_qubits_) throw std::out_of_range("register qubit out of range");
            if (owned[q.index]) throw std::invalid_argument("registers overlap");
            owned[q.index] = true;
        }
    };
    for (const auto& r : data_registers_) claim(r);
    for (const auto& r : ancilla_registers_) claim(r);
}

std::vector<QubitId> Circuit::ancilla_qubits() const {
    std::vector<QubitId> out;
    for (const auto& r : ancilla_registers_) out.insert(out.end(), r.begin(), r.end());
    return out;
}

bool Circuit::is_permutation() const {
    return std::all_of(gates_.begin(), gates_.end(), [](const Gate& g) { return g.is_permutation(); });
}

Circuit adjoint(const Circuit& c) {
    std::vector<Gate> gates;
    gates.reserve(c.gates().size());
    for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) gates.push_back(it->adjoint());
    return Circuit(c.num_qubits(), std::move(gates), c.data_registers(), c.ancilla_registers());
}

void append_controlled(const Gate& g, QubitId control, std::vector<Gate>& out) {
    constexpr double kPi = std::numbers::pi;
    const QubitId t = g.target();
    switch (g.kind()) {
        case GateKind::X: out.push_back(Gate::cnot(control, t)); break;
        case GateKind::CNOT:
        case GateKind::CCX:
        case GateKind::MCX: {
            std::vector<QubitId> controls(g.controls().begin(), g.controls().end());
            controls.insert(controls.begin(), control);
            out.push_back(Gate::mcx(controls, t));
            break;
        }
        case GateKind::SWAP: {
            QubitId a = g.operands()[0];
            QubitId b = g.operands()[1];
            out.push_back(Gate::cnot(b, a));
            out.push_back(Gate::ccx(control, a, b));
            out.push_back(Gate::cnot(b, a));
            break;
        }
        case GateKind::H:
            // H = S H T X T^dag H S^dag, so only the X needs the control.
            out.push_back(Gate::s(t));
            out.push_back(Gate::h(t));
            out.push_back(Gate::t(t));
            out.push_back(Gate::cnot(control, t));
            out.push_back(Gate::tdg(t));
            out.push_back(Gate::h(t));
            out.push_back(Gate::sdg(t));
            break;
        case GateKind::S: out.push_back(Gate::cphase(control, t, kPi / 2)); break;
        case GateKind::Sdg: out.push_back(Gate::cphase(control, t, -kPi / 2)); break;
        case GateKind::T: out.push_back(Gate::cphase(control, t, kPi / 4)); break;
        case GateKind::Tdg: out.push_back(Gate::cphase(control, t, -kPi / 4)); break;
        case GateKind::Rz:
            // CPhase supplies diag(1, e^{i angle}); the control-side Rz restores
            // the e^{-i angle/2} that Rz carries relative to a phase gate.
            out.push_back(Gate::cphase(control, t, g.angle()));
            out.push_back(Gate::rz(control, -g.angle() / 2));
            break;
        case GateKind::CPhase: {
            QubitId c = g.operands()[0];
            double half = g.angle() / 2;
            out.push_back(Gate::cphase(c, t, half));
            out.push_back(Gate::cnot(control, c));
            out.push_back(Gate::cphase(c, t, -half));
            out.push_back(Gate::cnot(control, c));
            out.push_back(Gate::cphase(control, t, half));
            break;
        }
    }
}

Circuit controlled(const Circuit& c, QubitId control) {
    std::size_t num_qubits = c.num_qubits();
    std::vector<Register> data = c.data_registers();
    if (control.index == num_qubits) {
        ++num_qubits;
        data.push_back(Register({control}));
    } else if (control.index > num_qubits) {
        throw std::invalid_argument("control qubit must be an existing qubit or the next fresh one");
    } else {
        for (const Gate& g : c.gates()) {
            for (QubitId q : g.operands()) {
                if (q == control) throw std::invalid_argument("control qubit is used by the circuit");
            }
        }
    }
    std::vector<Gate> gates;
    gates.reserve(c.gates().size());
    for (const Gate& g : c.gates()) append_controlled(g, control, gates);
    return Circuit(num_qubits, std::move(gates), std::move(data), c.ancilla_registers());
}

std::string dump(const Circuit& c) {
    std::string out = "qubits=" + std::to_string(c.num_qubits()) + "\n";
    char buf[64];
    for (const Gate& g : c.gates()) {
        out += gate_name(g.kind());
        out += ' ';
        bool first = true;
        for (QubitId q : g.operands()) {
            if (!first) out += ',';
            out += std::to_string(q.index);
            first = false;
        }
        if (g.kind() == GateKind::Rz || g.kind() == GateKind::CPhase) {
            std::snprintf(buf, sizeof buf, ";angle=%.17g", g.angle());
            out += buf;
        }
        out += '\n';
    }
    return out;
}

namespace {

GateKind parse_kind(std::string_view name) {
    for (int k = 0; k <= int(GateKind::CPhase); ++k) {
        if (gate_name(GateKind(k)) == name) return GateKind(k);
    }
    throw std::invalid_argument("unknown gate name '" + std::string(name) + "'");
}

}  // namespace

Circuit parse_dump(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line.rfind("qubits=", 0) != 0) {
        throw std::invalid_argument("circuit dump must start with qubits=<N>");
    }
    std::size_t num_qubits = std::stoul(line.substr(7));
    std::vector<Gate> gates;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto space = line.find(' ');
        if (space == std::string::npos) throw std::invalid_argument("malformed gate line: " + line);
        GateKind kind = parse_kind(std::string_view(line).substr(0, space));
        std::string rest = line.substr(space + 1);
        double angle = 0.0;
        if (auto semi = rest.find(";angle="); semi != std::string::npos) {
            angle = std::stod(rest.substr(semi + 7));
            rest = rest.substr(0, semi);
        }
        std::vector<QubitId> ops;
        std::istringstream qs(rest);
        std::string tok;
        while (std::getline(qs, tok, ',')) ops.emplace_back(std::uint32_t(std::stoul(tok)));
        if (ops.empty()) throw std::invalid_argument("gate without operands: " + line);
        std::span<const QubitId> controls(ops.data(), ops.size() - 1);
        switch (kind) {
            case GateKind::X: gates.push_back(Gate::x(ops.at(0))); break;
            case GateKind::CNOT: gates.push_back(Gate::cnot(ops.at(0), ops.at(1))); break;
            case GateKind::CCX: gates.push_back(Gate::ccx(ops.at(0), ops.at(1), ops.at(2))); break;
            case GateKind::MCX: gates.push_back(Gate::mcx(controls, ops.back())); break;
            case GateKind::SWAP: gates.push_back(Gate::swap(ops.at(0), ops.at(1))); break;
            case GateKind::H: gates.push_back(Gate::h(ops.at(0))); break;
            case GateKind::S: gates.push_back(Gate::s(ops.at(0))); break;
            case GateKind::Sdg: gates.push_back(Gate::sdg(ops.at(0))); break;
            case GateKind::T: gates.push_back(Gate::t(ops.at(0))); break;
            case GateKind::Tdg: gates.push_back(Gate::tdg(ops.at(0))); break;
            case GateKind::Rz: gates.push_back(Gate::rz(ops.at(0), angle)); break;
            case GateKind::CPhase: gates.push_back(Gate::cphase(ops.at(0), ops.at(1), angle)); break;
        }
    }
    std::vector<QubitId> all;
    for (std::size_t i = 0; i < num_qubits; ++i) all.emplace_back(std::uint32_t(i));
    std::vector<Register> data;
    if (num_qubits > 0) data.emplace_back(std::move(all));
    return Circuit(num_qubits, std::move(gates), std::move(data), {});
}

// ---------------------------------------------------------------------------

ScopedAncilla::ScopedAncilla(Builder& b, std::size_t size) : builder_(b), reg_(b.alloc_ancilla(size)) {}

ScopedAncilla::~ScopedAncilla() { builder_.release_ancilla(reg_); }

Builder::Builder() = default;

Builder::Builder(GateSink& sink) : sink_(&sink) {}

void Builder::grow(std::size_t count) {
    num_qubits_ += count;
    if (num_qubits_ > std::size_t(UINT32_MAX)) throw std::length_error("qubit index space exhausted");
    is_ancilla_.resize(num_qubits_, false);
    if (sink_ != nullptr) sink_->on_qubit_count(num_qubits_);
}

Register Builder::alloc_register(std::size_t size) {
    if (size == 0) throw std::invalid_argument("register size must be positive");
    std::vector<QubitId> q;
    q.reserve(size);
    for (std::size_t i = 0; i < size; ++i) q.emplace_back(std::uint32_t(num_qubits_ + i));
    grow(size);
    Register r(std::move(q));
    data_registers_.push_back(r);
    return r;
}

Register Builder::alloc_ancilla(std::size_t size) {
    if (size == 0) throw std::invalid_argument("ancilla size must be positive");
    std::vector<QubitId> q;
    q.reserve(size);
    while (q.size() < size && !free_pool_.empty()) {
        std::pop_heap(free_pool_.begin(), free_pool_.end(), std::greater<>());
        q.push_back(free_pool_.back());
        free_pool_.pop_back();
    }
    std::vector<QubitId> fresh;
    const std::size_t missing = size - q.size();
    for (std::size_t i = 0; i < missing; ++i) fresh.emplace_back(std::uint32_t(num_qubits_ + i));
    if (missing > 0) {
        grow(missing);
        for (QubitId f : fresh) is_ancilla_[f.index] = true;
        ledger_.emplace_back(fresh);
    }
    q.insert(q.end(), fresh.begin(), fresh.end());
    return Register(std::move(q));
}

void Builder::release_ancilla(const Register& reg) {
    for (QubitId q : reg) {
        if (q.index >= num_qubits_ || !is_ancilla_[q.index]) {
            throw std::invalid_argument("released qubit " + std::to_string(q.index) + " is not an ancilla");
        }
        free_pool_.push_back(q);
        std::push_heap(free_pool_.begin(), free_pool_.end(), std::greater<>());
    }
}

void Builder::validate(const Gate& g) const {
    for (QubitId q : g.operands()) {
        if (q.index >= num_qubits_) {
            throw std::out_of_range("gate " + std::string(gate_name(g.kind())) + " addresses qubit " +
                                    std::to_string(q.index) + " but only " + std::to_string(num_qubits_) +
                                    " are allocated");
        }
    }
}

void Builder::append(const Gate& g) {
    validate(g);
    emit(g);
}

void Builder::emit(const Gate& g) {
    if (!captures_.empty()) {
        captures_.back().push_back(g);
        return;
    }
    ++emitted_;
    if (sink_ != nullptr) {
        sink_->on_gate(g);
    } else {
        gates_.push_back(g);
    }
}

Circuit Builder::finalize() && {
    if (sink_ != nullptr) throw std::logic_error("streaming builders do not produce a circuit");
    if (!captures_.empty()) throw std::logic_error("finalize inside an adjoint block");
    return Circuit(num_qubits_, std::move(gates_), std::move(data_registers_), std::move(ledger_));
}

}  // namespace qarith
