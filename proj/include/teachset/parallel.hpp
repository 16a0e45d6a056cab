#pragma once

#include <cstdint>
#include <functional>

namespace teachset {

// Worker count resolved from TEACHSET_THREADS (0 or unset = hardware auto).
int thread_count();

// Runs fn(i) for i in [0, n). Each call must touch only state owned by index
// i, so the result is bit-identical to the sequential loop for any worker
// count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

}  // namespace teachset
