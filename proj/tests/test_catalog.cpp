#include <gtest/gtest.h>

#include <algorithm>

#include "qarith/catalog.hpp"
#include "qarith/simulate.hpp"

using namespace qarith;

namespace {

bool listed(const std::string& op, const std::string& algo) {
    const auto c = catalog();
    return std::any_of(c.begin(), c.end(),
                       [&](const CatalogEntry& e) { return to_string(e.op_class) == op && e.algorithm == algo; });
}

}  // namespace

TEST(Catalog, ListsKnownPairs) {
    EXPECT_TRUE(listed("inplace_adder", "TTK"));
    EXPECT_TRUE(listed("divider", "NonRestoring+Gidney"));
    EXPECT_TRUE(listed("const_adder", "ViaInPlace(Gidney)"));
    EXPECT_TRUE(listed("modexp", "LYYWindowed(<w>)"));
    EXPECT_FALSE(listed("divider", "Restoring+QFT"));
}

TEST(Catalog, StableOrder) {
    const auto a = catalog(), b = catalog();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].algorithm, b[i].algorithm);
        EXPECT_EQ(a[i].op_class, b[i].op_class);
    }
    // Grouped by op class in declaration order.
    for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LE(int(a[i - 1].op_class), int(a[i].op_class));
    EXPECT_EQ(to_string(a.front().op_class), "inplace_adder");
    EXPECT_EQ(to_string(a.back().op_class), "modexp");
}

TEST(Catalog, OpClassNamesRoundTrip) {
    for (OpClass op : all_op_classes()) EXPECT_EQ(parse_op_class(to_string(op)), op);
    EXPECT_THROW(parse_op_class("adder"), std::invalid_argument);
}

TEST(Catalog, EveryConcreteEntryBuilds) {
    for (const auto& e : catalog()) {
        if (e.algorithm.find('<') != std::string::npos) continue;
        const Circuit c = build_workload(e.op_class, e.algorithm, 3);
        EXPECT_GT(c.num_qubits(), 0u) << e.algorithm;
    }
}

TEST(Catalog, UnknownOrInvalidWorkloads) {
    EXPECT_THROW(workload_builder(OpClass::InplaceAdder, "Ripple", 4), std::invalid_argument);
    EXPECT_THROW(workload_builder(OpClass::Divider, "Restoring+QFT", 4), std::invalid_argument);
    EXPECT_THROW(workload_builder(OpClass::ModExp, "LYY", 1), std::invalid_argument);
    EXPECT_THROW(workload_builder(OpClass::ModExp, "LYYWindowed(5)", 4), std::invalid_argument);
    EXPECT_THROW(workload_builder(OpClass::Multiplier, "Karatsuba(1)", 4), std::invalid_argument);
    EXPECT_THROW(workload_builder(OpClass::Subtractor, "TTK", 0), std::invalid_argument);
}

TEST(Verify, InplaceTTKExhaustive) {
    const auto r = verify_workload(OpClass::InplaceAdder, "TTK", 5);
    EXPECT_TRUE(r.passed()) << r.counterexample;
    EXPECT_EQ(r.cases, 1024u);
    EXPECT_EQ(r.method, "exhaustive");
}

TEST(Verify, DividerSkipsZeroDivisor) {
    const auto r = verify_workload(OpClass::Divider, "Restoring+TTK", 4);
    EXPECT_TRUE(r.passed()) << r.counterexample;
    EXPECT_EQ(r.cases, 16u * 15u);
}

TEST(Verify, WindowedModExp) {
    const auto r = verify_workload(OpClass::ModExp, "LYYWindowed(2)", 4);
    EXPECT_TRUE(r.passed()) << r.counterexample;
    EXPECT_EQ(r.cases, 16u);
}

TEST(Verify, PhaseCircuitsUseStatevector) {
    const auto r = verify_workload(OpClass::ConstAdder, "QFT", 4);
    EXPECT_TRUE(r.passed()) << r.counterexample;
    EXPECT_EQ(r.method, "exhaustive/statevector");
    EXPECT_EQ(r.cases, 16u);
}

TEST(Verify, LargeInputsAreSampledWithSeed) {
    VerifyOptions opt;
    const auto a = verify_workload(OpClass::Multiplier, "Karatsuba(2)", 8, opt);
    EXPECT_EQ(a.method, "random");
    EXPECT_EQ(a.cases, opt.random_cases);
    EXPECT_TRUE(a.passed()) << a.counterexample;
    opt.seed = 7;
    const auto b = verify_workload(OpClass::Multiplier, "Karatsuba(2)", 8, opt);
    EXPECT_TRUE(b.passed()) << b.counterexample;
}

TEST(Verify, SeedDoesNotAffectExhaustiveRuns) {
    VerifyOptions a, b;
    b.seed = 99;
    const auto ra = verify_workload(OpClass::Subtractor, "CDKM", 4, a);
    const auto rb = verify_workload(OpClass::Subtractor, "CDKM", 4, b);
    EXPECT_EQ(ra.cases, rb.cases);
    EXPECT_EQ(ra.failures, rb.failures);
}

TEST(Verify, Limits) {
    EXPECT_THROW(verify_workload(OpClass::Multiplier, "Schoolbook", 33), std::out_of_range);
    EXPECT_THROW(verify_workload(OpClass::InplaceAdder, "QFT", 12), SimulationError);
}

TEST(Verify, AdjointRoundTripIsIdentity) {
    for (const char* a : {"Gidney", "DKRS", "QFT"}) {
        const auto r = verify_adjoint_identity(OpClass::InplaceAdder, a, 3);
        EXPECT_TRUE(r.passed()) << a << ": " << r.counterexample;
        EXPECT_GT(r.cases, 0u);
    }
    const auto full = verify_adjoint_identity(OpClass::InplaceAdder, "CDKM", 3);
    EXPECT_EQ(full.method, "exhaustive/all-qubits");
    const auto m = verify_adjoint_identity(OpClass::Multiplier, "Karatsuba(2)", 4);
    EXPECT_TRUE(m.passed()) << m.counterexample;
}
