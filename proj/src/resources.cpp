#include "qarith/resources.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace qarith {

std::uint64_t t_per_rotation(const SynthesisParams& p) {
    if (!(p.epsilon_syn > 0.0 && p.epsilon_syn < 1.0)) throw std::invalid_argument("epsilon_syn must lie in (0,1)");
    const double v = p.t_per_rotation_slope * std::log2(1.0 / p.epsilon_syn) + p.t_per_rotation_offset;
    return v <= 0.0 ? 0 : std::uint64_t(std::ceil(v));
}

void DepthTracker::resize(std::size_t n) {
    if (n > level_.size()) {
        level_.resize(n, 0);
        t_level_.resize(n, 0);
    }
}

void DepthTracker::resize_ladder(std::size_t n) {
    if (n > ladder_level_.size()) {
        ladder_level_.resize(n, 0);
        ladder_t_level_.resize(n, 0);
    }
}

void DepthTracker::apply(std::span<const QubitId> ops, std::uint64_t layers, std::uint64_t t_layers) {
    auto lv = [&](QubitId q) -> std::uint64_t& {
        return q.index >= kLadderBase ? ladder_level_[q.index - kLadderBase] : level_[q.index];
    };
    auto tlv = [&](QubitId q) -> std::uint64_t& {
        return q.index >= kLadderBase ? ladder_t_level_[q.index - kLadderBase] : t_level_[q.index];
    };
    std::uint64_t start = 0;
    std::uint64_t t_start = 0;
    for (QubitId q : ops) {
        start = std::max(start, lv(q));
        t_start = std::max(t_start, tlv(q));
    }
    const std::uint64_t end = start + layers;
    const std::uint64_t t_end = t_start + t_layers;
    for (QubitId q : ops) {
        lv(q) = end;
        tlv(q) = t_end;
    }
    depth_ = std::max(depth_, end);
    t_depth_ = std::max(t_depth_, t_end);
}

// ---------------------------------------------------------------------------

void RawCounter::on_qubit_count(std::size_t count) {
    c_.qubits = count;
    depth_.resize(count);
}

void RawCounter::on_gate(const Gate& g) {
    bool t_bearing = false;
    switch (g.kind()) {
        case GateKind::X:
        case GateKind::H:
        case GateKind::S:
        case GateKind::Sdg: ++c_.single_qubit_clifford; break;
        case GateKind::CNOT: ++c_.cnot_count; break;
        case GateKind::SWAP: c_.cnot_count += 3; break;
        case GateKind::CCX:
        case GateKind::MCX:
            ++c_.toffoli_count;
            t_bearing = true;
            break;
        case GateKind::T:
        case GateKind::Tdg:
            ++c_.t_count;
            t_bearing = true;
            break;
        case GateKind::Rz:
        case GateKind::CPhase:
            ++c_.rotation_count;
            t_bearing = true;
            break;
    }
    depth_.apply(g.operands(), 1, t_bearing ? 1 : 0);
}

LogicalCounts RawCounter::counts() const {
    LogicalCounts r = c_;
    r.depth = depth_.depth();
    r.t_depth = depth_.t_depth();
    return r;
}

void ToffoliCounter::on_gate(const Gate& g) {
    if (g.kind() == GateKind::CCX || g.kind() == GateKind::MCX) ++toffolis_;
}

// ---------------------------------------------------------------------------

CliffordTCounter::CliffordTCounter(SynthesisParams p) : params_(p), t_per_rot_(t_per_rotation(p)) {}

void CliffordTCounter::on_qubit_count(std::size_t count) {
    base_qubits_ = count;
    depth_.resize(count);
}

void CliffordTCounter::lower_ccx(QubitId a, QubitId b, QubitId c) {
    // H(c) CX(b,c) Tdg(c) CX(a,c) T(c) CX(b,c) Tdg(c) CX(a,c) T(b) T(c) H(c)
    // CX(a,b) T(a) Tdg(b) CX(a,b)
    c_.t_count += 7;
    c_.cnot_count += 6;
    c_.single_qubit_clifford += 2;
    ++c_.toffoli_count;
    depth_.apply({c}, 1, 0);
    depth_.apply({b, c}, 1, 0);
    depth_.apply({c}, 1, 1);
    depth_.apply({a, c}, 1, 0);
    depth_.apply({c}, 1, 1);
    depth_.apply({b, c}, 1, 0);
    depth_.apply({c}, 1, 1);
    depth_.apply({a, c}, 1, 0);
    depth_.apply({b}, 1, 1);
    depth_.apply({c}, 1, 1);
    depth_.apply({c}, 1, 0);
    depth_.apply({a, b}, 1, 0);
    depth_.apply({a}, 1, 1);
    depth_.apply({b}, 1, 1);
    depth_.apply({a, b}, 1, 0);
}

void CliffordTCounter::rotation_block(std::span<const QubitId> ops) {
    ++c_.rotation_count;
    c_.t_count += t_per_rot_;
    if (ops.size() == 2) {
        // CPhase: CNOT, rotation on the target, CNOT.
        c_.cnot_count += 2;
        depth_.apply(ops, 1, 0);
        depth_.apply({ops[1]}, t_per_rot_, t_per_rot_);
        depth_.apply(ops, 1, 0);
    } else {
        depth_.apply(ops, t_per_rot_, t_per_rot_);
    }
}

void CliffordTCounter::on_gate(const Gate& g) {
    const auto ops = g.operands();
    switch (g.kind()) {
        case GateKind::X:
        case GateKind::H:
        case GateKind::S:
        case GateKind::Sdg:
            ++c_.single_qubit_clifford;
            depth_.apply(ops, 1, 0);
            break;
        case GateKind::CNOT:
            ++c_.cnot_count;
            depth_.apply(ops, 1, 0);
            break;
        case GateKind::SWAP:
            c_.cnot_count += 3;
            depth_.apply(ops, 3, 0);
            break;
        case GateKind::T:
        case GateKind::Tdg:
            ++c_.t_count;
            depth_.apply(ops, 1, 1);
            break;
        case GateKind::CCX: lower_ccx(ops[0], ops[1], ops[2]); break;
        case GateKind::MCX: {
            const auto ctrls = g.controls();
            const std::size_t k = ctrls.size();
            ladder_peak_ = std::max(ladder_peak_, k - 1);
            depth_.resize_ladder(ladder_peak_);
            auto ladder = [](std::size_t i) { return QubitId(std::uint32_t(DepthTracker::kLadderBase + i)); };
            std::vector<std::array<QubitId, 3>> steps{{ctrls[0], ctrls[1], ladder(0)}};
            for (std::size_t i = 2; i < k; ++i) steps.push_back({ctrls[i], ladder(i - 2), ladder(i - 1)});
            for (const auto& s : steps) lower_ccx(s[0], s[1], s[2]);
            ++c_.cnot_count;
            depth_.apply({ladder(k - 2), g.target()}, 1, 0);
            for (auto it = steps.rbegin(); it != steps.rend(); ++it) lower_ccx((*it)[0], (*it)[1], (*it)[2]);
            break;
        }
        case GateKind::Rz:
        case GateKind::CPhase: rotation_block(ops); break;
    }
}

LogicalCounts CliffordTCounter::counts() const {
    LogicalCounts r = c_;
    r.qubits = base_qubits_ + ladder_peak_;
    r.depth = depth_.depth();
    r.t_depth = depth_.t_depth();
    return r;
}

// ---------------------------------------------------------------------------

LogicalCounts count_raw(const Circuit& c) {
    RawCounter rc;
    rc.on_qubit_count(c.num_qubits());
    for (const Gate& g : c.gates()) rc.on_gate(g);
    return rc.counts();
}

LogicalCounts lower_to_clifford_t(const Circuit& c, const SynthesisParams& p) {
    CliffordTCounter lc(p);
    lc.on_qubit_count(c.num_qubits());
    for (const Gate& g : c.gates()) lc.on_gate(g);
    return lc.counts();
}

Circuit toffoli_clifford_t() {
    const QubitId a(0), b(1), c(2);
    std::vector<Gate> g{Gate::h(c),      Gate::cnot(b, c), Gate::tdg(c), Gate::cnot(a, c), Gate::t(c),
                        Gate::cnot(b, c), Gate::tdg(c),    Gate::cnot(a, c), Gate::t(b),   Gate::t(c),
                        Gate::h(c),      Gate::cnot(a, b), Gate::t(a),    Gate::tdg(b),     Gate::cnot(a, b)};
    return Circuit(3, std::move(g), {Register({a, b, c})}, {});
}

CountedCircuit count_streaming(const BuildFn& build, double error_budget, SynthesisParams base) {
    if (!(error_budget > 0.0 && error_budget < 1.0)) throw std::invalid_argument("error budget must lie in (0,1)");
    CountedCircuit out;
    RawCounter raw;
    CliffordTCounter first(base);
    {
        TeeSink tee(raw, first);
        Builder b(tee);
        build(b);
    }
    out.raw = raw.counts();
    if (out.raw.rotation_count == 0) {
        out.synthesis = base;
        out.lowered = first.counts();
        return out;
    }
    out.synthesis = base;
    out.synthesis.epsilon_syn = (error_budget / 3.0) / double(out.raw.rotation_count);
    CliffordTCounter second(out.synthesis);
    Builder b(second);
    build(b);
    out.lowered = second.counts();
    return out;
}

std::pair<std::uint64_t, std::uint64_t> count_toffolis_streaming(const BuildFn& build) {
    ToffoliCounter tc;
    Builder b(tc);
    build(b);
    return {tc.toffolis(), tc.qubits()};
}

}  // namespace qarith
