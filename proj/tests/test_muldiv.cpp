#include <gtest/gtest.h>

#include <random>

#include "harness.hpp"
#include "qarith/muldiv.hpp"

using namespace qarith;
using namespace qarith::testing;

namespace {

Oracle product_oracle() {
    return [](const Values& in) -> std::optional<Values> { return Values{in[0], in[1], in[0] * in[1]}; };
}

Oracle division_oracle() {
    return [](const Values& in) -> std::optional<Values> {
        if (in[1] == 0) return std::nullopt;
        return Values{in[0] % in[1], in[1], in[0] / in[1]};
    };
}

std::vector<Register> inputs_of(const Circuit& c) { return {c.data_registers()[0], c.data_registers()[1]}; }

}  // namespace

TEST(Multiplier, Example) {
    Circuit c = build_multiplier(MultiplierAlgo::schoolbook(), 4);
    ASSERT_EQ(c.data_registers().size(), 3U);
    EXPECT_EQ(c.data_registers()[2].size(), 8U);
    BasisState in(c.num_qubits());
    in.write(c.data_registers()[0], 3);
    in.write(c.data_registers()[1], 5);
    BasisState out = simulate_permutation(c, in);
    EXPECT_EQ(out.read(c.data_registers()[2]), 15U);
    EXPECT_EQ(out.read(c.data_registers()[0]), 3U);
    EXPECT_EQ(out.read(c.data_registers()[1]), 5U);
}

TEST(Multiplier, ExhaustiveSmall) {
    const std::vector<MultiplierAlgo> algos{MultiplierAlgo::schoolbook(), MultiplierAlgo::karatsuba(),
                                            MultiplierAlgo::karatsuba(8), MultiplierAlgo::karatsuba(2),
                                            MultiplierAlgo::karatsuba(3)};
    for (const auto& algo : algos) {
        for (std::size_t n = 1; n <= 4; ++n) {
            SCOPED_TRACE(to_string(algo) + " n=" + std::to_string(n));
            Circuit c = build_multiplier(algo, n);
            EXPECT_EQ(check_permutation(c, inputs_of(c), product_oracle()), std::uint64_t{1} << (2 * n));
        }
    }
}

TEST(Multiplier, KaratsubaRecursesBelowPieceSize) {
    // piece 2 at n = 4 and 5 forces two levels of recursion and padding.
    Circuit k = build_multiplier(MultiplierAlgo::karatsuba(2), 5);
    Circuit s = build_multiplier(MultiplierAlgo::schoolbook(), 5);
    EXPECT_NE(count_raw(k).toffoli_count, count_raw(s).toffoli_count);
    EXPECT_EQ(check_permutation(k, inputs_of(k), product_oracle()), 1024U);
}

TEST(Multiplier, Randomized) {
    for (const auto& algo : {MultiplierAlgo::karatsuba(8), MultiplierAlgo::karatsuba(2), MultiplierAlgo::karatsuba(4),
                             MultiplierAlgo::schoolbook()}) {
        SCOPED_TRACE(to_string(algo));
        Circuit c = build_multiplier(algo, 8);
        std::mt19937_64 rng(8);
        std::vector<Values> samples;
        for (int i = 0; i < 1000; ++i) samples.push_back({rng() & 0xFF, rng() & 0xFF});
        EXPECT_EQ(check_samples(c, inputs_of(c), samples, product_oracle()), 1000U);
    }
}

TEST(Multiplier, KaratsubaWideOperands) {
    // n = 20 pads to 32 and recurses twice below piece 8.
    Circuit c = build_multiplier(MultiplierAlgo::karatsuba(8), 20);
    std::mt19937_64 rng(20);
    std::vector<Values> samples{{0, 0}, {mask(20), mask(20)}, {1, mask(20)}};
    for (int i = 0; i < 125; ++i) samples.push_back({rng() & mask(20), rng() & mask(20)});
    EXPECT_EQ(check_samples(c, inputs_of(c), samples, product_oracle()), samples.size());
}

TEST(Multiplier, Errors) {
    EXPECT_THROW(build_multiplier(MultiplierAlgo::schoolbook(), 0), std::invalid_argument);
    EXPECT_THROW(MultiplierAlgo::karatsuba(1), std::invalid_argument);
}

TEST(Multiplier, Names) {
    for (const auto& algo : {MultiplierAlgo::schoolbook(), MultiplierAlgo::karatsuba(), MultiplierAlgo::karatsuba(8)}) {
        EXPECT_EQ(parse_multiplier(to_string(algo)), algo);
    }
    EXPECT_EQ(to_string(MultiplierAlgo::karatsuba(8)), "Karatsuba(8)");
    EXPECT_THROW(parse_multiplier("Karatsuba(x)"), std::invalid_argument);
    EXPECT_THROW(parse_multiplier("Wallace"), std::invalid_argument);
}

TEST(Multiplier, ToffoliCrossover) {
    std::optional<std::size_t> crossover;
    for (std::size_t n = 8; n <= 512; n *= 2) {
        const auto s = count_toffolis_streaming(multiplier_builder(MultiplierAlgo::schoolbook(), n)).first;
        const auto k = count_toffolis_streaming(multiplier_builder(MultiplierAlgo::karatsuba(8), n)).first;
        if (k < s && !crossover) crossover = n;
        if (crossover) EXPECT_LT(k, s) << "n=" << n;
    }
    ASSERT_TRUE(crossover.has_value());
    EXPECT_LE(*crossover, 512U);
}

TEST(Divider, Examples) {
    Circuit c = build_divider({DividerSpec::Kind::NonRestoring, InPlaceAdderAlgo::TTK}, 4);
    auto run = [&](std::uint64_t a, std::uint64_t b) {
        BasisState in(c.num_qubits());
        in.write(c.data_registers()[0], a);
        in.write(c.data_registers()[1], b);
        BasisState out = simulate_permutation(c, in);
        return std::array<std::uint64_t, 3>{out.read(c.data_registers()[0]), out.read(c.data_registers()[1]),
                                            out.read(c.data_registers()[2])};
    };
    EXPECT_EQ(run(13, 3), (std::array<std::uint64_t, 3>{1, 3, 4}));
    EXPECT_EQ(run(0, 1), (std::array<std::uint64_t, 3>{0, 1, 0}));
}

TEST(Divider, Exhaustive) {
    for (const auto& spec : all_dividers()) {
        for (std::size_t n = 1; n <= 4; ++n) {
            SCOPED_TRACE(to_string(spec) + " n=" + std::to_string(n));
            Circuit c = build_divider(spec, n);
            const std::uint64_t expected = (std::uint64_t{1} << n) * ((std::uint64_t{1} << n) - 1);
            EXPECT_EQ(check_permutation(c, inputs_of(c), division_oracle()), expected);
        }
    }
}

TEST(Divider, DivisorUnchangedForZero) {
    // b = 0 is outside the contract, but the divisor register still comes back intact.
    for (const auto& spec : all_dividers()) {
        Circuit c = build_divider(spec, 3);
        for (std::uint64_t a = 0; a < 8; ++a) {
            BasisState in(c.num_qubits());
            in.write(c.data_registers()[0], a);
            BasisState out = simulate_permutation(c, in);
            EXPECT_EQ(out.read(c.data_registers()[1]), 0U) << to_string(spec);
            for (QubitId q : c.ancilla_qubits()) EXPECT_FALSE(out.get(q)) << to_string(spec);
        }
    }
}

TEST(Divider, Errors) {
    EXPECT_THROW(build_divider({}, 0), std::invalid_argument);
    EXPECT_THROW(build_divider({DividerSpec::Kind::Restoring, InPlaceAdderAlgo::QFT}, 3), std::invalid_argument);
    EXPECT_EQ(all_dividers().size(), 6U);
    for (const auto& d : all_dividers()) EXPECT_EQ(parse_divider(to_string(d)), d);
    EXPECT_EQ(to_string(DividerSpec{DividerSpec::Kind::Restoring, InPlaceAdderAlgo::TTK}), "Restoring+TTK");
}

TEST(Divider, DesignSpace) {
    for (std::size_t n : {8U, 16U, 32U}) {
        SCOPED_TRACE("n=" + std::to_string(n));
        auto rows = divider_design_space(n);
        ASSERT_EQ(rows.size(), 6U);
        for (const auto& [spec, counts] : rows) {
            EXPECT_GT(counts.qubits, 0U);
            EXPECT_GT(counts.t_count, 0U);
        }
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& p = rows[i - 1].second;
            const auto& q = rows[i].second;
            EXPECT_TRUE(p.qubits < q.qubits || (p.qubits == q.qubits && p.t_count <= q.t_count));
        }
        EXPECT_EQ(rows.front().first.adder, InPlaceAdderAlgo::TTK);
        for (auto adder : {InPlaceAdderAlgo::Gidney, InPlaceAdderAlgo::TTK, InPlaceAdderAlgo::CDKM}) {
            auto find = [&](DividerSpec::Kind k) {
                for (const auto& [spec, counts] : rows) {
                    if (spec.kind == k && spec.adder == adder) return counts;
                }
                return LogicalCounts{};
            };
            EXPECT_LT(find(DividerSpec::Kind::NonRestoring).t_count, find(DividerSpec::Kind::Restoring).t_count)
                << to_string(adder);
        }
    }
}
