#include <gtest/gtest.h>

#include <random>

#include "harness.hpp"
#include "qarith/modexp.hpp"

using namespace qarith;
using namespace qarith::testing;

namespace {

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    for (std::uint64_t i = 0; i < e; ++i) r = r * a % m;
    return r;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) { return b == 0 ? a : gcd64(b, a % b); }

std::uint64_t run_modexp(const Circuit& c, std::uint64_t x) {
    BasisState in(c.num_qubits());
    in.write(c.data_registers()[0], x);
    return simulate_permutation(c, in).read(c.data_registers()[1]);
}

}  // namespace

TEST(TableLookup, Examples) {
    Circuit c = build_table_lookup({2, {0, 1, 2, 3}}, 2);
    BasisState in(c.num_qubits());
    in.write(c.data_registers()[0], 2);
    EXPECT_EQ(simulate_permutation(c, in).read(c.data_registers()[1]), 2U);

    Circuit zero = build_table_lookup({3, std::vector<BigInt>(8, 0)}, 3);
    auto t = permutation_table(zero);
    for (std::uint64_t i = 0; i < t.size(); ++i) EXPECT_EQ(t[i], i);
}

TEST(TableLookup, ExhaustiveRandomTables) {
    std::mt19937_64 rng(4);
    for (std::size_t bits = 1; bits <= 4; ++bits) {
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<std::uint64_t> raw(std::size_t{1} << bits);
            std::vector<BigInt> entries;
            for (auto& v : raw) {
                v = rng() % 16;
                if (trial == 1 && rng() % 2) v = 0;
                entries.emplace_back(v);
            }
            Circuit c = build_table_lookup({bits, entries}, 4);
            Oracle o = [&](const Values& in) -> std::optional<Values> { return Values{in[0], in[1] ^ raw[in[0]]}; };
            EXPECT_EQ(check_permutation(c, {c.data_registers()[0], c.data_registers()[1]}, o),
                      std::uint64_t{1} << (bits + 4));
        }
    }
}

TEST(TableLookup, IsAnInvolution) {
    Builder b;
    Register addr = b.alloc_register(3);
    Register y = b.alloc_register(5);
    std::vector<BigInt> entries{7, 0, 31, 12, 5, 5, 1, 16};
    table_lookup(b, addr, entries, y);
    table_lookup(b, addr, entries, y);
    Circuit c = std::move(b).finalize();
    auto t = permutation_table(c);
    for (std::uint64_t i = 0; i < 256; ++i) EXPECT_EQ(t[i], i);
}

TEST(TableLookup, ToffoliCount) {
    // Two per internal node below the root.
    for (std::size_t bits = 1; bits <= 6; ++bits) {
        std::vector<BigInt> entries(std::size_t{1} << bits, 1);
        Circuit c = build_table_lookup({bits, entries}, 1);
        EXPECT_EQ(count_raw(c).toffoli_count, 2 * ((std::uint64_t{1} << bits) - 2)) << bits;
    }
}

TEST(TableLookup, Errors) {
    EXPECT_THROW(build_table_lookup({2, {0, 1, 2}}, 2), std::invalid_argument);
    EXPECT_THROW(build_table_lookup({1, {0, 4}}, 2), std::invalid_argument);
}

TEST(ModularArithmetic, AddConstExhaustive) {
    for (std::uint64_t N : {3, 5, 6, 7, 11, 13, 15}) {
        const std::size_t n = N < 8 ? 3 : 4;
        for (std::uint64_t k = 0; k < N; ++k) {
            for (bool controlled : {false, true}) {
                Builder b;
                Register ctrl = b.alloc_register(1);
                Register z = b.alloc_register(n);
                modadd_const(b, k, N, z, controlled ? std::optional<QubitId>(ctrl[0]) : std::nullopt);
                Circuit c = std::move(b).finalize();
                Oracle o = [&](const Values& in) -> std::optional<Values> {
                    if (in[1] >= N) return std::nullopt;
                    const bool on = !controlled || in[0];
                    return Values{in[0], on ? (in[1] + k) % N : in[1]};
                };
                check_permutation(c, {ctrl, z}, o);
            }
        }
    }
}

TEST(ModularArithmetic, AddQuantumExhaustive) {
    for (std::uint64_t N : {3, 5, 6, 7, 11, 15}) {
        const std::size_t n = N < 8 ? 3 : 4;
        Builder b;
        Register ctrl = b.alloc_register(1);
        Register cr = b.alloc_register(n);
        Register z = b.alloc_register(n);
        modadd_quantum(b, cr, N, z, ctrl[0]);
        Circuit c = std::move(b).finalize();
        Oracle o = [&](const Values& in) -> std::optional<Values> {
            if (in[1] >= N || in[2] >= N) return std::nullopt;
            return Values{in[0], in[1], in[0] ? (in[1] + in[2]) % N : in[2]};
        };
        EXPECT_EQ(check_permutation(c, {ctrl, cr, z}, o), 2 * N * N) << N;
    }
}

TEST(ModularArithmetic, QuantumMultiplyExhaustive) {
    for (std::uint64_t N : {3, 5, 7, 11, 13, 15}) {
        const std::size_t n = N < 8 ? 3 : 4;
        Builder b;
        Register y = b.alloc_register(n);
        Register cr = b.alloc_register(n);
        Register z = b.alloc_register(n);
        modmul_quantum_out(b, y, cr, N, z);
        Circuit c = std::move(b).finalize();
        Oracle o = [&](const Values& in) -> std::optional<Values> {
            if (in[0] >= N || in[1] >= N) return std::nullopt;
            return Values{in[0], in[1], in[0] * in[1] % N};
        };
        EXPECT_EQ(check_permutation(c, {y, cr}, o), N * N) << N;
    }
    Builder b;
    Register r = b.alloc_register(4);
    EXPECT_THROW(moddouble(b, 10, r), std::invalid_argument);
}

TEST(ModMulConst, Examples) {
    Circuit c = build_modmul_const(2, 15, 4);
    BasisState in(c.num_qubits());
    in.write(c.data_registers()[0], 7);
    EXPECT_EQ(simulate_permutation(c, in).read(c.data_registers()[0]), 14U);

    for (std::uint64_t N : {2, 9, 15}) {
        Circuit id = build_modmul_const(1, N, 4);
        Oracle o = [&](const Values& in) -> std::optional<Values> {
            if (in[0] >= N) return std::nullopt;
            return in;
        };
        EXPECT_EQ(check_permutation(id, {id.data_registers()[0]}, o), N);
    }
}

TEST(ModMulConst, Exhaustive) {
    for (std::uint64_t N = 2; N < 16; ++N) {
        for (std::uint64_t k = 1; k < N; ++k) {
            if (gcd64(k, N) != 1) continue;
            Circuit c = build_modmul_const(k, N, 4);
            Oracle o = [&](const Values& in) -> std::optional<Values> {
                if (in[0] >= N) return std::nullopt;
                return Values{in[0] * k % N};
            };
            EXPECT_EQ(check_permutation(c, {c.data_registers()[0]}, o), N) << k << " mod " << N;
        }
    }
}

TEST(ModMulConst, Errors) {
    EXPECT_THROW(build_modmul_const(3, 15, 4), std::invalid_argument);
    EXPECT_THROW(build_modmul_const(2, 17, 4), std::invalid_argument);
    EXPECT_THROW(build_modmul_const(0, 15, 4), std::invalid_argument);
}

TEST(ModExp, Examples) {
    EXPECT_EQ(run_modexp(build_modexp(ModExpAlgo::lyy(), 7, 15, 4), 3), 13U);
    EXPECT_EQ(run_modexp(build_modexp(ModExpAlgo::windowed(2), 7, 15, 4), 3), 13U);
    for (auto algo : {ModExpAlgo::lyy(), ModExpAlgo::windowed(1), ModExpAlgo::windowed_opt()}) {
        EXPECT_EQ(run_modexp(build_modexp(algo, 2, 15, 4), 0), 1U) << to_string(algo);
    }
}

TEST(ModExp, Exhaustive) {
    std::vector<ModExpAlgo> algos{ModExpAlgo::lyy(), ModExpAlgo::windowed(1), ModExpAlgo::windowed(2),
                                  ModExpAlgo::windowed(3), ModExpAlgo::windowed_opt()};
    for (std::size_t n = 2; n <= 4; ++n) {
        const std::uint64_t N = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t a = 1; a < N; ++a) {
            if (gcd64(a, N) != 1) continue;
            for (const auto& algo : algos) {
                if (algo.window_for(n) > n) continue;
                SCOPED_TRACE(to_string(algo) + " a=" + std::to_string(a) + " n=" + std::to_string(n));
                Circuit c = build_modexp(algo, a, N, n);
                Oracle o = [&](const Values& in) -> std::optional<Values> { return Values{in[0], powmod(a, in[0], N)}; };
                EXPECT_EQ(check_permutation(c, {c.data_registers()[0]}, o), std::uint64_t{1} << n);
            }
        }
    }
}

TEST(ModExp, PlainHandlesEvenModulus) {
    Circuit c = build_modexp(ModExpAlgo::lyy(), 3, 10, 4);
    Oracle o = [](const Values& in) -> std::optional<Values> { return Values{in[0], powmod(3, in[0], 10)}; };
    EXPECT_EQ(check_permutation(c, {c.data_registers()[0]}, o), 16U);
    EXPECT_THROW(build_modexp(ModExpAlgo::windowed(2), 3, 10, 4), std::invalid_argument);
}

TEST(ModExp, Errors) {
    EXPECT_THROW(build_modexp(ModExpAlgo::lyy(), 3, 15, 4), std::invalid_argument);
    EXPECT_THROW(build_modexp(ModExpAlgo::lyy(), 2, 1, 4), std::invalid_argument);
    EXPECT_THROW(build_modexp(ModExpAlgo::lyy(), 2, 17, 4), std::invalid_argument);
    EXPECT_THROW(build_modexp(ModExpAlgo::windowed(5), 2, 15, 4), std::invalid_argument);
    EXPECT_THROW(ModExpAlgo::windowed(0), std::invalid_argument);
}

TEST(ModExp, OptimalWindow) {
    EXPECT_EQ(optimal_window(32), 10U);
    EXPECT_EQ(optimal_window(4), 4U);
    EXPECT_EQ(optimal_window(256), 16U);
    EXPECT_EQ(optimal_window(2), 2U);
    EXPECT_EQ(optimal_window(16), 8U);
}

TEST(ModExp, Names) {
    for (auto algo : {ModExpAlgo::lyy(), ModExpAlgo::windowed(11), ModExpAlgo::windowed_opt()}) {
        EXPECT_EQ(parse_modexp(to_string(algo)), algo);
    }
    EXPECT_THROW(parse_modexp("LYYWindowed()"), std::invalid_argument);
    EXPECT_THROW(parse_modexp("LYY-MW-1"), std::invalid_argument);
}

TEST(ModExp, SweepConstants) {
    for (std::size_t n = 2; n <= 40; ++n) {
        BigInt N = sweep_modexp_modulus(n);
        BigInt a = sweep_modexp_base(N);
        EXPECT_GE(a, 2);
        EXPECT_LT(a, N);
        EXPECT_EQ(gcd(a, N), 1);
    }
}
