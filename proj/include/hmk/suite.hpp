#pragma once

/// \file
/// Self-check of every module invariant. Output is one line per check and is
/// identical between runs (no timings, fixed seeds).

#include <ostream>

namespace hmk {

/// Runs every check, writes "PASS name: detail" / "FAIL name: detail" lines
/// and a closing summary, and returns true when all checks pass.
bool run_suite(std::ostream& out);

}  // namespace hmk
