#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace baker {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Reduced-size invariant checks with a fixed seed; the same run always prints the same text.
std::vector<CheckResult> run_invariant_suite(std::uint64_t seed = 20240611, unsigned workers = 1);

}  // namespace baker
