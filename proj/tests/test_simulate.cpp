#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "qarith/adders.hpp"
#include "qarith/simulate.hpp"

using namespace qarith;

TEST(Permutation, SingleGates) {
    Circuit x(3, {Gate::x(QubitId(0))}, {}, {});
    EXPECT_EQ(simulate_permutation(x, BasisState(3, 0b000)).low_bits(), 0b001U);
    Circuit t(3, {Gate::ccx(QubitId(0), QubitId(1), QubitId(2))}, {}, {});
    EXPECT_EQ(simulate_permutation(t, BasisState(3, 0b011)).low_bits(), 0b111U);
    EXPECT_EQ(simulate_permutation(t, BasisState(3, 0b001)).low_bits(), 0b001U);
}

TEST(Permutation, GidneyAdderExample) {
    Circuit c = build_inplace_adder(InPlaceAdderAlgo::Gidney, 3);
    BasisState in(c.num_qubits());
    in.write(c.data_registers()[0], 5);
    in.write(c.data_registers()[1], 6);
    BasisState out = simulate_permutation(c, in);
    EXPECT_EQ(out.read(c.data_registers()[1]), 3U);
    EXPECT_EQ(out.read(c.data_registers()[0]), 5U);
}

TEST(Permutation, RejectsPhaseGatesWithIndex) {
    Circuit c(1, {Gate::x(QubitId(0)), Gate::h(QubitId(0))}, {}, {});
    try {
        simulate_permutation(c, BasisState(1));
        FAIL() << "expected SimulationError";
    } catch (const SimulationError& e) {
        EXPECT_NE(std::string(e.what()).find("gate 1"), std::string::npos);
    }
}

TEST(PermutationTable, IdentityAndSwap) {
    Circuit id(3, {}, {}, {});
    auto t = permutation_table(id);
    for (std::uint64_t i = 0; i < 8; ++i) EXPECT_EQ(t[i], i);
    Circuit sw(2, {Gate::swap(QubitId(0), QubitId(1))}, {}, {});
    EXPECT_EQ(permutation_table(sw), (std::vector<std::uint64_t>{0, 2, 1, 3}));
}

TEST(PermutationTable, AdderTablesAreBijections) {
    for (auto algo : all_inplace_adders()) {
        if (!is_permutation_algo(algo)) continue;
        for (std::size_t n = 1; n <= 4; ++n) {
            Circuit c = build_inplace_adder(algo, n);
            if (c.num_qubits() > 16) continue;
            auto t = permutation_table(c);
            std::set<std::uint64_t> seen(t.begin(), t.end());
            EXPECT_EQ(seen.size(), t.size()) << to_string(algo) << " n=" << n;
        }
    }
}

TEST(PermutationTable, SizeLimit) {
    Circuit c(17, {}, {}, {});
    EXPECT_THROW(permutation_table(c), SimulationError);
    SimulatorLimits big;
    big.permutation_table_qubits = 17;
    EXPECT_EQ(permutation_table(c, big).size(), std::size_t{1} << 17);
}

TEST(StateVector, Hadamard) {
    Circuit c(1, {Gate::h(QubitId(0))}, {}, {});
    auto v = simulate_statevector(c, BasisState(1, 0));
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(v.amplitudes()[0].real(), r, 1e-15);
    EXPECT_NEAR(v.amplitudes()[1].real(), r, 1e-15);
    EXPECT_THROW(extract_basis(v, 1e-9), SimulationError);
}

TEST(StateVector, QftRoundTrip) {
    for (std::uint64_t x = 0; x < 16; ++x) {
        Builder b;
        Register r = b.alloc_register(4);
        qft_noswap(b, r);
        iqft_noswap(b, r);
        Circuit c = std::move(b).finalize();
        auto v = simulate_statevector(c, BasisState(4, x));
        EXPECT_NEAR(v.norm(), 1.0, 1e-9);
        EXPECT_EQ(extract_basis(v, 1e-9).low_bits(), x);
    }
}

TEST(StateVector, QftAdderExample) {
    Circuit c = build_inplace_adder(InPlaceAdderAlgo::QFT, 3);
    BasisState in(c.num_qubits());
    in.write(c.data_registers()[0], 2);
    in.write(c.data_registers()[1], 7);
    auto v = simulate_statevector(c, in);
    BasisState out = extract_basis(v, 1e-9);
    EXPECT_EQ(out.read(c.data_registers()[1]), 1U);
}

TEST(StateVector, SizeLimit) {
    Circuit c(23, {}, {}, {});
    EXPECT_THROW(simulate_statevector(c, BasisState(23)), SimulationError);
}

TEST(ExtractBasis, Examples) {
    StateVector v(2, 0);
    EXPECT_EQ(extract_basis(v, 1e-9).low_bits(), 0U);
}

TEST(Simulators, AgreeOnPermutationCircuits) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        std::vector<Gate> gates;
        for (int i = 0; i < 60; ++i) {
            QubitId a(std::uint32_t(rng() % n)), b(std::uint32_t(rng() % n)), c(std::uint32_t(rng() % n));
            if (a != b && b != c && a != c) {
                gates.push_back(Gate::ccx(a, b, c));
            } else if (a != b) {
                gates.push_back(rng() % 2 ? Gate::cnot(a, b) : Gate::swap(a, b));
            } else {
                gates.push_back(Gate::x(a));
            }
        }
        Circuit circ(n, gates, {}, {});
        const std::uint64_t x = rng() & ((std::uint64_t{1} << n) - 1);
        BasisState perm = simulate_permutation(circ, BasisState(n, x));
        auto v = simulate_statevector(circ, BasisState(n, x));
        EXPECT_EQ(extract_basis(v, 1e-12), perm);
        EXPECT_NEAR(std::norm(v.amplitudes()[perm.low_bits()]), 1.0, 1e-12);
    }
}

TEST(StateVector, NormPreservedOverLongSequence) {
    std::mt19937_64 rng(9);
    const std::size_t n = 6;
    StateVector v(n, 5);
    for (int i = 0; i < 100000; ++i) {
        QubitId a(std::uint32_t(rng() % n)), b(std::uint32_t((rng() % (n - 1) + 1 + a.index) % n));
        switch (rng() % 6) {
            case 0: v.apply(Gate::h(a)); break;
            case 1: v.apply(Gate::t(a)); break;
            case 2: v.apply(Gate::rz(a, double(rng() % 1000) / 97.0)); break;
            case 3: v.apply(Gate::cphase(a, b, double(rng() % 1000) / 89.0)); break;
            case 4: v.apply(Gate::cnot(a, b)); break;
            default: v.apply(Gate::s(a)); break;
        }
    }
    EXPECT_NEAR(v.norm(), 1.0, 1e-9);
}

TEST(BasisState, RegisterReadWrite) {
    BasisState s(70);
    Register r({QubitId(65), QubitId(3), QubitId(69)});
    s.write(r, 0b101);
    EXPECT_TRUE(s.get(QubitId(65)));
    EXPECT_FALSE(s.get(QubitId(3)));
    EXPECT_TRUE(s.get(QubitId(69)));
    EXPECT_EQ(s.read(r), 0b101U);
}
