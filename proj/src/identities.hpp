// Exact and numeric identity checks run by verify-identities.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sat {

struct IdentityCheck {
    std::string name;
    double worst = 0;   // worst error seen, or count of violations for exact checks
    double tolerance = 0;
    bool exact = false;
    std::size_t cases = 0;
    bool pass() const { return exact ? worst == 0 : worst <= tolerance; }
};

std::vector<IdentityCheck> run_identity_suite(int trials, std::uint64_t seed);

}  // namespace sat
