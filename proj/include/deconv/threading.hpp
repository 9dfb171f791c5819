#pragma once

#include <cstddef>
#include <functional>

namespace deconv {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Work is split
/// into contiguous chunks; callers must make iterations independent. Results
/// must be written to per-index slots so the outcome is order-independent.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// DECONV_THREADS env var, else fallback.
int resolve_threads(int requested_or_zero);

}  // namespace deconv
