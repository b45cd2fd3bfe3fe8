#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qarith/adders.hpp"
#include "qarith/resources.hpp"
#include "qarith/simulate.hpp"

using namespace qarith;

TEST(CountRaw, Examples) {
    EXPECT_EQ(count_raw(Circuit()), LogicalCounts{});
    auto t = count_raw(Circuit(3, {Gate::ccx(QubitId(0), QubitId(1), QubitId(2))}, {}, {}));
    EXPECT_EQ(t.toffoli_count, 1U);
    EXPECT_EQ(t.depth, 1U);
    EXPECT_EQ(t.qubits, 3U);
    auto c = count_raw(Circuit(4, {Gate::cnot(QubitId(0), QubitId(1)), Gate::cnot(QubitId(2), QubitId(3))}, {}, {}));
    EXPECT_EQ(c.depth, 1U);
    EXPECT_EQ(c.cnot_count, 2U);
    auto chain = count_raw(Circuit(3, {Gate::cnot(QubitId(0), QubitId(1)), Gate::cnot(QubitId(1), QubitId(2))}, {}, {}));
    EXPECT_EQ(chain.depth, 2U);
    auto sw = count_raw(Circuit(2, {Gate::swap(QubitId(0), QubitId(1))}, {}, {}));
    EXPECT_EQ(sw.cnot_count, 3U);
}

TEST(Lowering, ToffoliNetworkIsExact) {
    Circuit net = toffoli_clifford_t();
    Circuit ccx(3, {Gate::ccx(QubitId(0), QubitId(1), QubitId(2))}, {}, {});
    for (std::uint64_t x = 0; x < 8; ++x) {
        auto a = simulate_statevector(net, BasisState(3, x));
        auto b = simulate_statevector(ccx, BasisState(3, x));
        for (std::size_t i = 0; i < 8; ++i) {
            EXPECT_NEAR(std::abs(a.amplitudes()[i] - b.amplitudes()[i]), 0.0, 1e-12) << x;
        }
    }
    auto counted = count_raw(net);
    EXPECT_EQ(counted.t_count, 7U);
    EXPECT_EQ(counted.cnot_count, 6U);
}

TEST(Lowering, SingleToffoli) {
    Circuit c(3, {Gate::ccx(QubitId(0), QubitId(1), QubitId(2))}, {}, {});
    auto l = lower_to_clifford_t(c, {});
    EXPECT_EQ(l.t_count, 7U);
    EXPECT_EQ(l.toffoli_count, 1U);
    // The lowered depth equals the raw depth of the explicit network.
    auto net = count_raw(toffoli_clifford_t());
    EXPECT_EQ(l.depth, net.depth);
    EXPECT_EQ(l.t_depth, net.t_depth);
}

TEST(Lowering, RotationFormula) {
    SynthesisParams p;
    p.epsilon_syn = 1e-10;
    std::vector<Gate> g;
    for (int i = 0; i < 10; ++i) g.push_back(Gate::rz(QubitId(std::uint32_t(i % 2)), 0.1 * (i + 1)));
    auto l = lower_to_clifford_t(Circuit(2, g, {}, {}), p);
    const auto per = std::uint64_t(std::ceil(0.53 * std::log2(1e10) + 5.3));
    EXPECT_EQ(per, 23U);  // 0.53 * 33.219 + 5.3 = 22.906
    EXPECT_EQ(l.rotation_count, 10U);
    EXPECT_EQ(l.t_count, 10 * per);
}

TEST(Lowering, PermutationOnlyCircuit) {
    Circuit c = build_inplace_adder(InPlaceAdderAlgo::Gidney, 9);
    auto raw = count_raw(c);
    auto l = lower_to_clifford_t(c, {});
    EXPECT_EQ(l.rotation_count, 0U);
    EXPECT_EQ(l.t_count, 7 * raw.toffoli_count);
    EXPECT_EQ(l.toffoli_count, raw.toffoli_count);
    EXPECT_EQ(l.qubits, raw.qubits);
}

TEST(Lowering, McxLadder) {
    std::vector<QubitId> ctrls{QubitId(0), QubitId(1), QubitId(2), QubitId(3)};
    Circuit c(5, {Gate::mcx(ctrls, QubitId(4))}, {}, {});
    auto l = lower_to_clifford_t(c, {});
    EXPECT_EQ(l.toffoli_count, 6U);  // 2(k-1)
    EXPECT_EQ(l.t_count, 42U);
    EXPECT_EQ(l.qubits, 8U);  // k-1 ladder ancillas
    EXPECT_GE(l.t_count, 7 * l.toffoli_count);
}

TEST(Counts, Monotonicity) {
    std::mt19937_64 rng(2);
    Builder b;
    b.alloc_register(5);
    RawCounter raw;
    CliffordTCounter low({});
    raw.on_qubit_count(5);
    low.on_qubit_count(5);
    LogicalCounts pr = raw.counts(), pl = low.counts();
    auto ge = [](const LogicalCounts& a, const LogicalCounts& b) {
        return a.qubits >= b.qubits && a.t_count >= b.t_count && a.toffoli_count >= b.toffoli_count &&
               a.cnot_count >= b.cnot_count && a.single_qubit_clifford >= b.single_qubit_clifford &&
               a.rotation_count >= b.rotation_count && a.depth >= b.depth && a.t_depth >= b.t_depth;
    };
    for (int i = 0; i < 500; ++i) {
        QubitId a(std::uint32_t(rng() % 5)), c(std::uint32_t((a.index + 1 + rng() % 3) % 5)),
            t(std::uint32_t((a.index + 4) % 5));
        Gate g = Gate::x(a);
        switch (rng() % 6) {
            case 0: g = Gate::cnot(a, c); break;
            case 1:
                if (c != t) g = Gate::ccx(a, c, t);
                break;
            case 2: g = Gate::rz(a, 0.3); break;
            case 3: g = Gate::cphase(a, c, 0.2); break;
            case 4: g = Gate::tdg(a); break;
            default: break;
        }
        raw.on_gate(g);
        low.on_gate(g);
        EXPECT_TRUE(ge(raw.counts(), pr));
        EXPECT_TRUE(ge(low.counts(), pl));
        pr = raw.counts();
        pl = low.counts();
    }
}

TEST(Streaming, MatchesRecordedCounts) {
    auto build = [](Builder& b) {
        Register a = b.alloc_register(6);
        Register t = b.alloc_register(6);
        add_inplace(b, InPlaceAdderAlgo::QFT, a, t);
        add_const(b, ConstAdderAlgo::via(InPlaceAdderAlgo::CDKM), 11, t);
    };
    Builder rec;
    build(rec);
    Circuit c = std::move(rec).finalize();
    auto s = count_streaming(build, 1e-3);
    EXPECT_EQ(s.raw, count_raw(c));
    EXPECT_NEAR(s.synthesis.epsilon_syn, (1e-3 / 3) / double(s.raw.rotation_count), 1e-18);
    EXPECT_EQ(s.lowered, lower_to_clifford_t(c, s.synthesis));
    auto [tof, q] = count_toffolis_streaming(build);
    EXPECT_EQ(tof, s.raw.toffoli_count);
    EXPECT_EQ(q, c.num_qubits());
}
