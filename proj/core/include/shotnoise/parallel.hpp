#pragma once

#include <cstddef>
#include <functional>

namespace shotnoise {

/// Worker count: explicit value if > 0, else SHOTNOISE_THREADS, else the
/// hardware concurrency.
unsigned resolve_threads(unsigned requested = 0);

/// Calls fn(i) for i in [0, n) across `threads` workers with static chunking.
/// fn must only write to slots owned by i. The first exception thrown by any
/// worker is rethrown after all workers join.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

} // namespace shotnoise
