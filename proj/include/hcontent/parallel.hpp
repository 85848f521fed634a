#pragma once

// Fixed-slot parallel loop. Each task writes only its own slot, so results
// do not depend on the worker count or on scheduling.

#include <cstddef>
#include <functional>

namespace hcontent {

/// Worker count: hardware concurrency, capped by CHOQUET_THREADS when set to
/// a positive integer.
std::size_t worker_count();

/// Runs body(k) for k in [0, n). Exceptions are rethrown on the calling
/// thread; the one from the lowest task index wins.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace hcontent
