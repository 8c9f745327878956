#pragma once

#include <cstddef>
#include <functional>

namespace hmk {

/// Worker count from the HMK_THREADS environment variable (default: hardware
/// concurrency, at least 1).
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index is
/// visited exactly once; callers write results into per-index slots so the
/// outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hmk
