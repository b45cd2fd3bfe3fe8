#include "qarith/claims.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qarith/adders.hpp"
#include "qarith/analysis.hpp"
#include "qarith/catalog.hpp"
#include "qarith/modexp.hpp"
#include "qarith/muldiv.hpp"
#include "qarith/report.hpp"

namespace qarith {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Wall-clock figures stay out of the report so it is reproducible byte for byte.
std::string time_note(double secs, double limit) {
    return secs < limit ? "within the time limit" : "time limit exceeded";
}

struct Workload {
    OpClass op;
    std::string algo;
};

// Every catalog entry with its parameter slot filled in.
std::vector<Workload> concrete_workloads() {
    std::vector<Workload> out;
    for (const auto& e : catalog()) {
        std::string a = e.algorithm;
        if (a == "Karatsuba(<piece>)") a = "Karatsuba(2)";
        if (a == "LYYWindowed(<w>)") a = "LYYWindowed(2)";
        out.push_back({e.op_class, a});
    }
    return out;
}

bool phase_based(OpClass op, const std::string& algo) {
    return !build_workload(op, algo, std::max<std::size_t>(min_width(op), 2)).is_permutation();
}

// Runs verify_workload over a set of (workload, n) jobs and folds the results.
struct Tally {
    std::size_t runs = 0;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    bool all_exhaustive = true;
    std::string first_failure;

    void add(const VerifyResult& r, bool must_be_exhaustive) {
        ++runs;
        cases += r.cases;
        failures += r.failures;
        if (must_be_exhaustive && r.method.rfind("exhaustive", 0) != 0) {
            all_exhaustive = false;
            if (first_failure.empty()) first_failure = to_string(r.op_class) + "/" + r.algorithm + " not exhaustive";
        }
        if (!r.passed() && first_failure.empty()) {
            first_failure = to_string(r.op_class) + "/" + r.algorithm + " n=" + std::to_string(r.n) + ": " +
                            r.counterexample;
        }
    }
    bool ok() const { return failures == 0 && all_exhaustive && runs > 0; }
    std::string summary() const {
        std::string s = std::to_string(runs) + " runs, " + std::to_string(cases) + " cases, " +
                        std::to_string(failures) + " mismatches";
        if (!first_failure.empty()) s += "; first problem: " + first_failure;
        return s;
    }
};

ClaimCheck make(const std::string& id, bool ok, std::string observed) {
    return {id, "", ok ? ClaimStatus::Pass : ClaimStatus::Fail, std::move(observed)};
}

ClaimCheck claim_adders(const PhysicalParams&, std::uint64_t seed) {
    const auto t0 = Clock::now();
    VerifyOptions opt;
    opt.seed = seed;
    Tally t;
    std::vector<Workload> jobs;
    for (auto a : all_inplace_adders()) jobs.push_back({OpClass::InplaceAdder, to_string(a)});
    for (auto a : all_outofplace_adders()) jobs.push_back({OpClass::OutofplaceAdder, to_string(a)});
    for (const auto& a : all_const_adders()) jobs.push_back({OpClass::ConstAdder, to_string(a)});
    for (auto a : all_inplace_adders()) jobs.push_back({OpClass::Subtractor, to_string(a)});
    for (const auto& w : jobs) {
        const bool sv = phase_based(w.op, w.algo);
        for (std::size_t n = sv ? 2 : 1; n <= (sv ? 5u : 6u); ++n) t.add(verify_workload(w.op, w.algo, n, opt), true);
    }
    const double secs = seconds_since(t0);
    return make("C1", t.ok() && secs < 600,
                std::to_string(jobs.size()) + " circuits; " + t.summary() + "; " + time_note(secs, 600));
}

ClaimCheck claim_multipliers(const PhysicalParams&, std::uint64_t seed) {
    VerifyOptions opt;
    opt.seed = seed;
    Tally exhaustive, sampled;
    for (const char* a : {"Schoolbook", "Karatsuba", "Karatsuba(2)", "Karatsuba(3)"}) {
        for (std::size_t n = 2; n <= 4; ++n) exhaustive.add(verify_workload(OpClass::Multiplier, a, n, opt), true);
    }
    opt.random_cases = 1000;
    const VerifyResult r = verify_workload(OpClass::Multiplier, "Karatsuba(8)", 8, opt);
    sampled.add(r, false);
    const bool ok = exhaustive.ok() && sampled.ok() && r.method == "random" && r.cases == 1000;
    return make("C2", ok, "exhaustive: " + exhaustive.summary() + "; Karatsuba(8) n=8 " + r.method + ": " +
                              sampled.summary() + " (seed " + std::to_string(seed) + ")");
}

ClaimCheck claim_dividers(const PhysicalParams&, std::uint64_t seed) {
    VerifyOptions opt;
    opt.seed = seed;
    Tally t;
    for (const auto& d : all_dividers()) {
        for (std::size_t n = 2; n <= 4; ++n) t.add(verify_workload(OpClass::Divider, to_string(d), n, opt), true);
    }
    return make("C3", t.ok(), t.summary());
}

ClaimCheck claim_modexp(const PhysicalParams&, std::uint64_t seed) {
    VerifyOptions opt;
    opt.seed = seed;
    Tally t;
    for (std::size_t n = 2; n <= 4; ++n) {
        t.add(verify_workload(OpClass::ModExp, "LYY", n, opt), true);
        for (std::size_t w = 1; w <= std::min<std::size_t>(3, n); ++w) {
            t.add(verify_workload(OpClass::ModExp, "LYYWindowed(" + std::to_string(w) + ")", n, opt), true);
        }
        t.add(verify_workload(OpClass::ModExp, "LYYWindowedOpt", n, opt), true);
    }
    return make("C4", t.ok(), t.summary() + "; N = 2^n - 1, windows above n are not defined");
}

ClaimCheck claim_structure(const PhysicalParams&, std::uint64_t seed) {
    const std::set<std::string_view> alphabet = {"X", "CNOT", "CCX", "MCX", "SWAP", "H", "S",
                                                 "SDG", "T", "TDG", "RZ", "CPHASE"};
    std::uint64_t gates = 0;
    std::string foreign;
    VerifyOptions exhaustive;
    exhaustive.seed = seed;
    exhaustive.exhaustive_bits = 22;
    Tally adj, clean;
    for (const auto& w : concrete_workloads()) {
        for (std::size_t n = min_width(w.op); n <= 5; ++n) {
            const Circuit c = build_workload(w.op, w.algo, n);
            for (const Gate& g : c.gates()) {
                ++gates;
                const std::string_view name = gate_name(g.kind());
                if (!alphabet.count(name) && foreign.empty()) foreign = name;
            }
            adj.add(verify_adjoint_identity(w.op, w.algo, n, exhaustive), true);
            if (n <= 4) clean.add(verify_workload(w.op, w.algo, n, exhaustive), false);
        }
    }
    const bool ok = foreign.empty() && adj.ok() && clean.ok();
    std::string obs = std::to_string(gates) + " gates scanned, " +
                      (foreign.empty() ? std::string("no measurement or reset") : "unexpected gate " + foreign) +
                      "; adjoint round trip: " + adj.summary() + "; ancilla-clean oracle runs: " + clean.summary();
    return make("C5", ok, obs);
}

bool slope_in(OpClass op, const std::string& algo, const std::vector<std::uint64_t>& grid, double lo, double hi,
              const PhysicalParams& p, std::string& obs) {
    SweepSeries s{algo, {}};
    for (std::uint64_t n : grid) s.points.emplace_back(n, double(workload_counts(op, algo, n, p).t_count));
    const double slope = fit_power_law(s).slope;
    const bool ok = slope >= lo && slope <= hi;
    obs += (obs.empty() ? "" : "; ") + algo + " " + fmt("%.3f", slope) + " in [" + fmt("%.2f", lo) + ", " +
           fmt("%.2f", hi) + "]" + (ok ? "" : " FAILED");
    return ok;
}

ClaimCheck claim_slopes(const PhysicalParams& p, std::uint64_t) {
    const auto t0 = Clock::now();
    std::string obs;
    bool ok = true;
    for (const char* a : {"Gidney", "TTK", "CDKM"}) {
        ok &= slope_in(OpClass::InplaceAdder, a, log_grid(16, 4096), 0.9, 1.15, p, obs);
    }
    ok &= slope_in(OpClass::Multiplier, "Schoolbook", log_grid(16, 1024), 1.85, 2.3, p, obs);
    ok &= slope_in(OpClass::Multiplier, "Karatsuba(8)", pow2_grid(32, 4096), 1.4, 1.95, p, obs);
    ok &= slope_in(OpClass::ModExp, "LYYWindowedOpt", log_grid(8, 128), 2.6, 3.3, p, obs);
    const double secs = seconds_since(t0);
    return make("C6", ok && secs < 3600, obs + "; " + time_note(secs, 3600));
}

ClaimCheck claim_tipping(const PhysicalParams&, std::uint64_t) {
    SweepSeries school{"Schoolbook", {}}, kara{"Karatsuba(8)", {}};
    for (std::uint64_t n : pow2_grid(8, 8192)) {
        school.points.emplace_back(
            n, double(count_toffolis_streaming(multiplier_builder(MultiplierAlgo::schoolbook(), n)).first));
        kara.points.emplace_back(
            n, double(count_toffolis_streaming(multiplier_builder(MultiplierAlgo::karatsuba(8), n)).first));
    }
    const auto tip = find_tipping_point(school, kara);
    const auto& last_s = school.points.back();
    const auto& last_k = kara.points.back();
    std::string obs = tip ? "n* = " + std::to_string(*tip) : std::string("no tipping point up to 8192");
    obs += "; Toffolis at n=" + std::to_string(last_s.first) + ": Schoolbook " + fmt("%.0f", last_s.second) +
           ", Karatsuba(8) " + fmt("%.0f", last_k.second);
    return make("C7", tip && *tip <= 8192, obs);
}

ClaimCheck claim_window(const PhysicalParams& p, std::uint64_t) {
    bool ok = true;
    std::string obs;
    for (std::size_t n : {16u, 32u}) {
        std::size_t best = 0;
        std::uint64_t best_t = 0;
        for (std::size_t w = 1; w <= std::min<std::size_t>(n, 16); ++w) {
            const auto t = workload_counts(OpClass::ModExp, "LYYWindowed(" + std::to_string(w) + ")", n, p).t_count;
            if (best == 0 || t < best_t) {
                best = w;
                best_t = t;
            }
        }
        const std::size_t formula = optimal_window(n);
        const std::size_t gap = best > formula ? best - formula : formula - best;
        ok &= gap <= 3;
        obs += (obs.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + ": argmin w=" +
               std::to_string(best) + ", formula w=" + std::to_string(formula);
    }
    return make("C8", ok, obs);
}

ClaimCheck claim_design_space(const PhysicalParams&, std::uint64_t) {
    bool ok = true;
    std::string obs;
    for (std::size_t n : {8u, 16u, 32u}) {
        const auto rows = divider_design_space(n);
        const std::uint64_t min_q = rows.front().second.qubits;
        bool ttk_min = false;
        for (const auto& [spec, c] : rows) ttk_min |= c.qubits == min_q && spec.adder == InPlaceAdderAlgo::TTK;
        bool nonrestoring_cheaper = true;
        for (const auto& [spec, c] : rows) {
            if (spec.kind != DividerSpec::Kind::NonRestoring) continue;
            for (const auto& [other, oc] : rows) {
                if (other.kind == DividerSpec::Kind::Restoring && other.adder == spec.adder) {
                    nonrestoring_cheaper &= c.t_count < oc.t_count;
                }
            }
        }
        ok &= ttk_min && nonrestoring_cheaper;
        obs += (obs.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + ": fewest qubits " +
               to_string(rows.front().first) + " (" + std::to_string(min_q) + ")" +
               (nonrestoring_cheaper ? ", non-restoring cheaper in T for every adder"
                                     : ", non-restoring NOT cheaper for some adder");
    }
    return make("C9", ok, obs);
}

bool frontier_well_formed(const std::vector<PhysicalEstimate>& f) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (i == j) continue;
            const bool dominated = f[j].runtime_seconds <= f[i].runtime_seconds &&
                                   f[j].physical_qubits <= f[i].physical_qubits &&
                                   (f[j].runtime_seconds < f[i].runtime_seconds ||
                                    f[j].physical_qubits < f[i].physical_qubits);
            if (dominated) return false;
        }
        if (i > 0 && !(f[i - 1].runtime_seconds < f[i].runtime_seconds &&
                       f[i - 1].physical_qubits > f[i].physical_qubits)) {
            return false;
        }
    }
    return true;
}

double runtime_ratio(const std::vector<PhysicalEstimate>& f) {
    return f.back().runtime_seconds / f.front().runtime_seconds;
}

ClaimCheck claim_pareto(const PhysicalParams& p, std::uint64_t) {
    std::vector<std::pair<Workload, std::size_t>> jobs;
    for (const auto& a : all_const_adders()) jobs.push_back({{OpClass::ConstAdder, to_string(a)}, 32});
    jobs.push_back({{OpClass::InplaceAdder, "Gidney"}, 32});
    jobs.push_back({{OpClass::InplaceAdder, "QFT"}, 32});
    jobs.push_back({{OpClass::Multiplier, "Schoolbook"}, 32});
    jobs.push_back({{OpClass::Divider, "NonRestoring+TTK"}, 16});
    jobs.push_back({{OpClass::ModExp, "LYYWindowedOpt"}, 16});
    std::size_t well_formed = 0, empty = 0;
    std::vector<PhysicalEstimate> qft, gidney;
    for (const auto& [w, n] : jobs) {
        const auto f = pareto_frontier(workload_counts(w.op, w.algo, n, p), p);
        well_formed += frontier_well_formed(f);
        empty += f.empty();
        if (w.op == OpClass::ConstAdder && w.algo == "QFT") qft = f;
        if (w.op == OpClass::ConstAdder && w.algo == "ViaInPlace(Gidney)") gidney = f;
    }
    std::string obs = std::to_string(well_formed) + "/" + std::to_string(jobs.size()) +
                      " frontiers non-dominated and ordered";
    if (empty) obs += " (" + std::to_string(empty) + " empty: no feasible distance)";
    if (qft.empty() || gidney.empty()) {
        ClaimCheck c = make("C10", false, obs + "; runtime ratio not comparable, a constant-adder frontier is empty");
        if (well_formed == jobs.size()) c.status = ClaimStatus::Skipped;
        return c;
    }
    const double rq = runtime_ratio(qft), rg = runtime_ratio(gidney);
    obs += "; max/min runtime at n=32: QFT " + fmt("%.2f", rq) + " (" + std::to_string(qft.size()) +
           " points), ViaInPlace(Gidney) " + fmt("%.2f", rg) + " (" + std::to_string(gidney.size()) + " points)";
    return make("C10", well_formed == jobs.size() && rq > rg, obs);
}

ClaimCheck claim_non_reproduction(const PhysicalParams& p, std::uint64_t) {
    // Nothing to compare against; the check is that the model yields its own
    // figures (or a clean infeasibility verdict) for a reference workload.
    const LogicalCounts c = workload_counts(OpClass::Multiplier, "Schoolbook", 32, p);
    std::string own;
    bool sane = true;
    try {
        const PhysicalEstimate e = estimate(c, p, 1);
        sane = e.physical_qubits > 0 && e.runtime_seconds > 0 && std::isfinite(e.runtime_seconds);
        own = "d=" + std::to_string(e.code_distance) + ", " + std::to_string(e.physical_qubits) +
              " physical qubits, " + fmt("%.4g s", e.runtime_seconds);
    } catch (const std::domain_error& e) {
        own = std::string("infeasible (") + e.what() + ")";
    }
    return make("C11", sane,
                "absolute figures not reproduced; own model for Schoolbook n=32 with one factory: " + own +
                    "; only orderings and slopes are compared");
}

}  // namespace

std::string to_string(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::Pass: return "pass";
        case ClaimStatus::Fail: return "fail";
        case ClaimStatus::Skipped: return "skipped";
    }
    return "?";
}

const std::vector<std::string>& acceptance_criteria() {
    static const std::vector<std::string> ids = {"C1", "C2", "C3", "C4", "C5", "C6",
                                                 "C7", "C8", "C9", "C10", "C11"};
    return ids;
}

const std::vector<ClaimDefinition>& claim_registry() {
    static const std::vector<ClaimDefinition> r = {
        {"C1",
         "Adders and subtractors equal classical addition mod 2^n on every basis input, n=1..6 (phase-based "
         "variants by statevector, n=2..5), in under 10 minutes",
         claim_adders},
        {"C2", "Schoolbook and Karatsuba exhaustive for n=2..4; Karatsuba(8) on 1000 seeded random inputs at n=8",
         claim_multipliers},
        {"C3",
         "Restoring and non-restoring dividers over Gidney, TTK and CDKM give (a mod b, floor(a/b)) for every a "
         "and b>0, n=2..4",
         claim_dividers},
        {"C4", "LYY and LYYWindowed(w), w=1..3, give a^x mod (2^n - 1) for every x, n=2..4", claim_modexp},
        {"C5",
         "No measurement or reset in any constructed circuit; a circuit followed by its adjoint is the identity "
         "(exhaustive, n<=5); ancillas end at zero on every tested input",
         claim_structure},
        {"C6",
         "T-count slopes: ripple-carry adders in [0.9, 1.15], Schoolbook in [1.85, 2.3], Karatsuba(8) over "
         "n=2^5..2^12 in [1.4, 1.95], LYYWindowedOpt over n=2^3..2^7 in [2.6, 3.3]; sweep under one hour",
         claim_slopes},
        {"C7", "Karatsuba(8) Toffoli count drops below Schoolbook at a power of two n* <= 2^13 and stays below",
         claim_tipping},
        {"C8", "Brute-force best LYYWindowed window at n=16 and n=32 lies within 3 of floor(2 log2 n + 0.5)",
         claim_window},
        {"C9",
         "Among the six dividers at n=8,16,32 a TTK divider has the fewest logical qubits and non-restoring "
         "beats restoring on T-count for each adder (logical proxies for physical qubits and runtime)",
         claim_design_space},
        {"C10",
         "Pareto frontiers are non-dominated and ordered; at n=32 the QFT constant adder spans a larger "
         "max/min runtime ratio than ViaInPlace(Gidney)",
         claim_pareto},
        {"C11",
         "Absolute physical qubit counts and runtimes of the external estimator are not reproduced; the "
         "surface-code model here is independent and the checks above stand in for figure matching",
         claim_non_reproduction},
    };
    return r;
}

std::vector<std::string> audit_claim_ids(const std::vector<std::string>& ids) {
    std::vector<std::string> problems;
    const auto& want = acceptance_criteria();
    for (const auto& w : want) {
        const auto k = std::count(ids.begin(), ids.end(), w);
        if (k == 0) problems.push_back(w + " has no claim check");
        if (k > 1) problems.push_back(w + " is checked " + std::to_string(k) + " times");
    }
    for (const auto& id : ids) {
        if (std::find(want.begin(), want.end(), id) == want.end()) problems.push_back(id + " is not a criterion");
    }
    return problems;
}

std::vector<ClaimCheck> run_claims(const PhysicalParams& params, std::uint64_t seed,
                                   const std::vector<std::string>& only) {
    std::vector<ClaimCheck> out;
    std::vector<std::string> ids;
    for (const auto& def : claim_registry()) {
        ids.push_back(def.claim_id);
        if (!only.empty() && std::find(only.begin(), only.end(), def.claim_id) == only.end()) continue;
        ClaimCheck c;
        try {
            c = def.run(params, seed);
        } catch (const std::exception& e) {
            c = {def.claim_id, "", ClaimStatus::Fail, std::string("error: ") + e.what()};
        }
        c.claim_id = def.claim_id;
        c.description = def.description;
        out.push_back(std::move(c));
    }
    const auto problems = audit_claim_ids(ids);
    if (!problems.empty()) {
        std::string obs;
        for (const auto& p : problems) obs += (obs.empty() ? "" : "; ") + p;
        out.push_back({"audit", "Every acceptance criterion has exactly one claim check", ClaimStatus::Fail, obs});
    }
    return out;
}

bool all_passed(const std::vector<ClaimCheck>& checks) {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(),
                                          [](const ClaimCheck& c) { return c.status == ClaimStatus::Pass; });
}

std::string claims_markdown(const std::vector<ClaimCheck>& checks) {
    std::ostringstream os;
    os << "| claim | status | description | observed |\n|---|---|---|---|\n";
    for (const auto& c : checks) {
        os << "| " << c.claim_id << " | " << to_string(c.status) << " | " << c.description << " | " << c.observed
           << " |\n";
    }
    return os.str();
}

std::string claims_json(const std::vector<ClaimCheck>& checks) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        j.push_back({{"claim_id", c.claim_id},
                     {"description", c.description},
                     {"status", to_string(c.status)},
                     {"observed", c.observed}});
    }
    return j.dump(2) + "\n";
}

}  // namespace qarith
