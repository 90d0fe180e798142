#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fairclust {

// Cross-checks every solver against the brute-force baseline on the seeded
// random battery: optimal values must agree to 1e-9 (or both sides must call
// the case infeasible), and each solver's clustering must re-validate under
// the baseline's own cost and constraint checks.  Returns one line per
// mismatch; empty means a clean pass.
std::vector<std::string> selftest_failures(std::uint64_t seed, int count);

}  // namespace fairclust
