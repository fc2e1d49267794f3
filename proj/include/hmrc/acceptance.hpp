#pragma once

// End-to-end property suite over a fixed set of small instances. Shared by
// the acceptance test binary and `hmrc selftest`.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hmrc {

struct AcceptanceOptions {
    unsigned jobs = 1;
    std::uint64_t seed = 20240611;
    std::size_t decode_trials = 100;
    std::size_t identity_trials = 100;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs criteria 1-9 in order. When `progress` is set, one line per
/// criterion is written there as soon as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {}, std::ostream* progress = nullptr);

}  // namespace hmrc
