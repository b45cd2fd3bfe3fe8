// Runs every acceptance criterion at its stated scale with default physical
// parameters; prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>

#include "qarith/catalog.hpp"
#include "qarith/claims.hpp"

int main() {
    using namespace qarith;
    int failed = 0;
    for (const auto& id : acceptance_criteria()) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto checks = run_claims(PhysicalParams{}, kDefaultSeed, {id});
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto& c : checks) {
            const bool pass = c.status == ClaimStatus::Pass;
            failed += !pass;
            std::printf("%s %s (%.1f s): %s\n    observed: %s\n", pass ? "PASS" : "FAIL", c.claim_id.c_str(), secs,
                        c.description.c_str(), c.observed.c_str());
            std::fflush(stdout);
        }
    }
    // The audit line appears only if the registry and the criteria disagree.
    std::vector<std::string> ids;
    for (const auto& d : claim_registry()) ids.push_back(d.claim_id);
    for (const auto& problem : audit_claim_ids(ids)) {
        std::printf("FAIL audit: %s\n", problem.c_str());
        ++failed;
    }
    std::printf("%s: %d of %zu criteria failed\n", failed ? "FAIL" : "PASS", failed, acceptance_criteria().size());
    return failed ? 1 : 0;
}
