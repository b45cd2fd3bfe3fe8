#pragma once

// The acceptance criteria as executable claim checks, plus markdown and JSON
// claim reports.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qarith/physical.hpp"

namespace qarith {

enum class ClaimStatus { Pass, Fail, Skipped };
std::string to_string(ClaimStatus s);

struct ClaimCheck {
    std::string claim_id;
    std::string description;
    ClaimStatus status = ClaimStatus::Skipped;
    std::string observed;
};

/// C1 .. C11, one per acceptance criterion.
const std::vector<std::string>& acceptance_criteria();

struct ClaimDefinition {
    std::string claim_id;
    std::string description;
    std::function<ClaimCheck(const PhysicalParams&, std::uint64_t seed)> run;
};
const std::vector<ClaimDefinition>& claim_registry();

/// Problems with a claim id list relative to acceptance_criteria(): missing,
/// duplicated or unknown ids. Empty when the list is closed.
std::vector<std::string> audit_claim_ids(const std::vector<std::string>& ids);

/// Runs the claims in `only` (all when empty), ordered by claim id. A claim
/// that throws is reported as failed. If the registry does not cover the
/// criteria exactly once, an extra failing "audit" check is appended.
std::vector<ClaimCheck> run_claims(const PhysicalParams& params, std::uint64_t seed,
                                   const std::vector<std::string>& only = {});

std::string claims_markdown(const std::vector<ClaimCheck>& checks);
std::string claims_json(const std::vector<ClaimCheck>& checks);
bool all_passed(const std::vector<ClaimCheck>& checks);

}  // namespace qarith
