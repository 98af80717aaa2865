#pragma once

#include <functional>

namespace kn {

// Number of grid workers: hardware concurrency, capped by the KN_THREADS
// environment variable when set.
int worker_count();

// Runs fn(begin, end) over a static partition of [0, n). Callers write to
// disjoint preallocated slots so results do not depend on the worker count.
void parallel_for(int n, const std::function<void(int, int)>& fn);

}  // namespace kn
