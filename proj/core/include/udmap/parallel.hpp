#pragma once

#include <cstddef>
#include <functional>

namespace udmap {

/// Worker count: UDMAP_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int parallelism();

/// Runs body(i) for i in [0, n) on up to parallelism() threads. Each index is
/// visited exactly once; the first exception thrown is rethrown after all
/// workers join. Calls made from inside a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace udmap
