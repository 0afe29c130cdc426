#pragma once

#include <iosfwd>

namespace pdechunk {

/// Runs the oracle equivalence suite (dense-solver cross-checks, chunker
/// identity, probing exactness, determinism) printing one pass/fail line per
/// check. Returns the number of failed checks.
int run_verification(std::ostream& out);

}  // namespace pdechunk
