#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace holonet {

// Deterministic invariant battery behind `holonet verify all`. Writes one
// PASS/FAIL line per check with fixed formatting; a fixed seed reproduces the
// report byte for byte. Returns the number of failing checks.
int verify_all(std::uint64_t seed, std::ostream& out);

// Convenience wrapper producing the full report as a string.
std::string verify_all_report(std::uint64_t seed, int* failures = nullptr);

}  // namespace holonet
