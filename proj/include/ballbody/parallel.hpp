#pragma once

#include <cstddef>
#include <functional>

namespace ballbody {

// Worker count for node-parallel loops: BALLBODY_THREADS if set (>= 1),
// otherwise the hardware concurrency.
unsigned worker_count();

// Calls fn(i) for i in [0, n) across worker threads with a static partition.
// If any call throws, the exception raised at the smallest index is
// rethrown after all workers join, so failures are reproducible.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ballbody
