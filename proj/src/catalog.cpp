#include "qarith/catalog.hpp"

#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qarith/adders.hpp"
#include "qarith/modexp.hpp"
#include "qarith/muldiv.hpp"
#include "qarith/simulate.hpp"

namespace qarith {

namespace {

using Values = std::vector<std::uint64_t>;
using Oracle = std::function<std::optional<Values>(const Values&)>;

std::uint64_t mask(std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

std::string describe(const Values& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

struct OracleSpec {
    std::size_t inputs = 0;  // leading data registers that carry inputs
    Oracle oracle;
};

OracleSpec oracle_for(OpClass op, std::size_t n) {
    const std::uint64_t m = mask(n);
    switch (op) {
        case OpClass::InplaceAdder:
            return {2, [m](const Values& v) { return Values{v[0], (v[0] + v[1]) & m}; }};
        case OpClass::OutofplaceAdder:
            return {2, [m](const Values& v) { return Values{v[0], v[1], (v[0] + v[1]) & m}; }};
        case OpClass::ConstAdder: {
            const std::uint64_t c = to_u64(sweep_adder_constant(n));
            return {1, [m, c](const Values& v) { return Values{(v[0] + c) & m}; }};
        }
        case OpClass::Subtractor:
            return {2, [m](const Values& v) { return Values{v[0], (v[1] - v[0]) & m}; }};
        case OpClass::Multiplier:
            if (n > 32) throw std::out_of_range("multiplier products above 64 bits cannot be verified");
            return {2, [](const Values& v) { return Values{v[0], v[1], v[0] * v[1]}; }};
        case OpClass::Divider:
            return {2, [](const Values& v) -> std::optional<Values> {
                        if (v[1] == 0) return std::nullopt;
                        return Values{v[0] % v[1], v[1], v[0] / v[1]};
                    }};
        case OpClass::ModExp: {
            const BigInt N = sweep_modexp_modulus(n);
            const BigInt a = sweep_modexp_base(N);
            return {1, [N, a](const Values& v) { return Values{v[0], to_u64(mod_pow(a, v[0], N))}; }};
        }
    }
    throw std::logic_error("unhandled op class");
}

// Inputs for the leading `inputs` registers: every combination when they are
// small enough, otherwise seeded uniform samples.
std::vector<Values> input_set(const std::vector<Register>& regs, std::size_t inputs, const VerifyOptions& opt,
                              bool& exhaustive) {
    std::size_t bits = 0;
    for (std::size_t k = 0; k < inputs; ++k) bits += regs[k].size();
    std::vector<Values> out;
    exhaustive = bits <= opt.exhaustive_bits;
    if (exhaustive) {
        const std::uint64_t total = std::uint64_t{1} << bits;
        out.reserve(total);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            Values v;
            std::uint64_t rest = idx;
            for (std::size_t k = 0; k < inputs; ++k) {
                v.push_back(rest & mask(regs[k].size()));
                rest >>= regs[k].size();
            }
            out.push_back(std::move(v));
        }
        return out;
    }
    std::mt19937_64 rng(opt.seed);
    for (std::size_t i = 0; i < opt.random_cases; ++i) {
        Values v;
        for (std::size_t k = 0; k < inputs; ++k) v.push_back(rng() & mask(regs[k].size()));
        out.push_back(std::move(v));
    }
    return out;
}

void record(VerifyResult& r, const Values& in, const std::optional<Values>& expected, const Values& got, bool clean) {
    ++r.cases;
    if (got == *expected && clean) return;
    if (r.failures++ == 0) {
        r.counterexample = "input (" + describe(in) + ") expected (" + describe(*expected) + ") got (" + describe(got) +
                           ")" + (clean ? "" : " with dirty ancilla");
    }
}

void run_oracle(const Circuit& c, std::size_t inputs, const Oracle& oracle, const VerifyOptions& opt,
                VerifyResult& r) {
    const auto& regs = c.data_registers();
    for (const Register& reg : regs) {
        if (reg.size() > 64) throw std::out_of_range("registers wider than 64 qubits cannot be verified");
    }
    bool exhaustive = true;
    const std::vector<Values> samples = input_set(regs, inputs, opt, exhaustive);
    const auto ancillas = c.ancilla_qubits();
    const bool perm = c.is_permutation();
    r.method = std::string(exhaustive ? "exhaustive" : "random") + (perm ? "" : "/statevector");

    if (perm) {
        for (std::size_t base = 0; base < samples.size(); base += 64) {
            const std::size_t lanes = std::min<std::size_t>(64, samples.size() - base);
            BatchState s(c.num_qubits());
            for (std::size_t l = 0; l < lanes; ++l) {
                for (std::size_t k = 0; k < inputs; ++k) s.write(regs[k], l, samples[base + l][k]);
            }
            simulate_batch(c, s);
            for (std::size_t l = 0; l < lanes; ++l) {
                const Values& in = samples[base + l];
                const auto expected = oracle(in);
                if (!expected) continue;
                Values got;
                for (const Register& reg : regs) got.push_back(s.read(reg, l));
                bool clean = true;
                for (QubitId q : ancillas) clean = clean && ((s.qubit(q) >> l) & 1U) == 0;
                record(r, in, expected, got, clean);
            }
        }
        return;
    }
    for (const Values& in : samples) {
        const auto expected = oracle(in);
        if (!expected) continue;
        BasisState st(c.num_qubits());
        for (std::size_t k = 0; k < inputs; ++k) st.write(regs[k], in[k]);
        const StateVector v = simulate_statevector(c, st);
        Values got;
        bool clean = true;
        try {
            const BasisState out = extract_basis(v, 1e-9);
            for (const Register& reg : regs) got.push_back(out.read(reg));
            for (QubitId q : ancillas) clean = clean && !out.get(q);
        } catch (const SimulationError&) {
            clean = false;  // not a single basis state
        }
        record(r, in, expected, got, clean);
    }
}

}  // namespace

const std::vector<OpClass>& all_op_classes() {
    static const std::vector<OpClass> all = {OpClass::InplaceAdder, OpClass::OutofplaceAdder, OpClass::ConstAdder,
                                             OpClass::Subtractor,   OpClass::Multiplier,      OpClass::Divider,
                                             OpClass::ModExp};
    return all;
}

std::string to_string(OpClass op) {
    switch (op) {
        case OpClass::InplaceAdder: return "inplace_adder";
        case OpClass::OutofplaceAdder: return "outofplace_adder";
        case OpClass::ConstAdder: return "const_adder";
        case OpClass::Subtractor: return "subtractor";
        case OpClass::Multiplier: return "multiplier";
        case OpClass::Divider: return "divider";
        case OpClass::ModExp: return "modexp";
    }
    return "?";
}

OpClass parse_op_class(std::string_view s) {
    for (OpClass op : all_op_classes()) {
        if (to_string(op) == s) return op;
    }
    throw std::invalid_argument("unknown op class '" + std::string(s) + "'");
}

std::vector<CatalogEntry> catalog() {
    std::vector<CatalogEntry> out;
    for (auto a : all_inplace_adders()) out.push_back({OpClass::InplaceAdder, to_string(a), "n>=1"});
    for (auto a : all_outofplace_adders()) out.push_back({OpClass::OutofplaceAdder, to_string(a), "n>=1"});
    for (const auto& a : all_const_adders()) {
        out.push_back({OpClass::ConstAdder, to_string(a), "n>=1; constant = sum of 4^i mod 2^n"});
    }
    for (auto a : all_inplace_adders()) out.push_back({OpClass::Subtractor, to_string(a), "n>=1"});
    out.push_back({OpClass::Multiplier, "Schoolbook", "n>=1"});
    out.push_back({OpClass::Multiplier, "Karatsuba", "n>=1; piece=32"});
    out.push_back({OpClass::Multiplier, "Karatsuba(<piece>)", "n>=1; piece>=2"});
    for (const auto& d : all_dividers()) out.push_back({OpClass::Divider, to_string(d), "n>=1"});
    const std::string modulus = "n>=2; N=2^n-1; base coprime to N";
    out.push_back({OpClass::ModExp, "LYY", modulus});
    out.push_back({OpClass::ModExp, "LYYWindowed(<w>)", modulus + "; 1<=w<=n"});
    out.push_back({OpClass::ModExp, "LYYWindowedOpt", modulus + "; w=floor(2 log2 n + 0.5)"});
    return out;
}

std::size_t min_width(OpClass op) { return op == OpClass::ModExp ? 2 : 1; }

BuildFn workload_builder(OpClass op, std::string_view algorithm, std::size_t n) {
    if (n < min_width(op)) {
        throw std::invalid_argument(to_string(op) + " needs n >= " + std::to_string(min_width(op)));
    }
    switch (op) {
        case OpClass::InplaceAdder: {
            const auto a = parse_inplace_adder(algorithm);
            return [a, n](Builder& b) {
                Register x = b.alloc_register(n);
                Register t = b.alloc_register(n);
                add_inplace(b, a, x, t);
            };
        }
        case OpClass::OutofplaceAdder: {
            const auto a = parse_outofplace_adder(algorithm);
            return [a, n](Builder& b) {
                Register x = b.alloc_register(n);
                Register y = b.alloc_register(n);
                Register z = b.alloc_register(n);
                add_outofplace(b, a, x, y, z);
            };
        }
        case OpClass::ConstAdder: {
            const auto a = parse_const_adder(algorithm);
            const BigInt c = sweep_adder_constant(n);
            return [a, c, n](Builder& b) {
                Register t = b.alloc_register(n);
                add_const(b, a, c, t);
            };
        }
        case OpClass::Subtractor: {
            const auto a = parse_inplace_adder(algorithm);
            return [a, n](Builder& b) {
                Register x = b.alloc_register(n);
                Register t = b.alloc_register(n);
                sub_inplace(b, a, x, t);
            };
        }
        case OpClass::Multiplier: return multiplier_builder(parse_multiplier(algorithm), n);
        case OpClass::Divider: return divider_builder(parse_divider(algorithm), n);
        case OpClass::ModExp: {
            const auto a = parse_modexp(algorithm);
            const BigInt N = sweep_modexp_modulus(n);
            if (a.kind == ModExpAlgo::Kind::LYYWindowed && a.window > n) {
                throw std::invalid_argument("window " + std::to_string(a.window) + " exceeds n = " + std::to_string(n));
            }
            return modexp_builder(a, sweep_modexp_base(N), N, n);
        }
    }
    throw std::logic_error("unhandled op class");
}

Circuit build_workload(OpClass op, std::string_view algorithm, std::size_t n) {
    Builder b;
    workload_builder(op, algorithm, n)(b);
    return std::move(b).finalize();
}

VerifyResult verify_workload(OpClass op, std::string_view algorithm, std::size_t n, const VerifyOptions& opt) {
    VerifyResult r;
    r.op_class = op;
    r.algorithm = std::string(algorithm);
    r.n = n;
    const Circuit c = build_workload(op, algorithm, n);
    const OracleSpec spec = oracle_for(op, n);
    run_oracle(c, spec.inputs, spec.oracle, opt, r);
    return r;
}

VerifyResult verify_adjoint_identity(OpClass op, std::string_view algorithm, std::size_t n, const VerifyOptions& opt) {
    VerifyResult r;
    r.op_class = op;
    r.algorithm = std::string(algorithm);
    r.n = n;
    const Circuit c = build_workload(op, algorithm, n);
    std::vector<Gate> gates(c.gates().begin(), c.gates().end());
    const Circuit inv = adjoint(c);
    gates.insert(gates.end(), inv.gates().begin(), inv.gates().end());
    const Circuit round_trip(c.num_qubits(), std::move(gates), c.data_registers(), c.ancilla_registers());

    if (round_trip.is_permutation() && round_trip.num_qubits() <= SimulatorLimits{}.permutation_table_qubits) {
        r.method = "exhaustive/all-qubits";
        const auto table = permutation_table(round_trip);
        for (std::uint64_t i = 0; i < table.size(); ++i) {
            ++r.cases;
            if (table[i] != i && r.failures++ == 0) {
                r.counterexample = "basis state " + std::to_string(i) + " maps to " + std::to_string(table[i]);
            }
        }
        return r;
    }
    const std::size_t regs = c.data_registers().size();
    run_oracle(round_trip, regs, [](const Values& v) { return std::optional<Values>(v); }, opt, r);
    return r;
}

}  // namespace qarith
