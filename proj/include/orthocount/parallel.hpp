#pragma once

#include <cstddef>
#include <functional>

namespace orthocount {

/// Worker count: ORTHOCOUNT_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_count();

/// Runs fn(i) for i in [0, n). Work is split by index, so results written to
/// per-index slots are independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace orthocount
