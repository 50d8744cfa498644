#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace derham::par {

// Worker count: min(hardware_concurrency, DERHAM_NS_THREADS). At most one
// level of parallelism is active at a time (nested calls run inline).
int max_threads();

// Runs fn(i) for i in [begin, end). Work is split into a chunk grid that
// depends only on the iteration count, never on the thread count, so
// per-chunk results (see reduce below) are bit-stable across machines
// with different core counts.
void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t)>& fn);

// Chunked reduction; partials are combined in chunk order.
double reduce_max(std::int64_t begin, std::int64_t end,
                  const std::function<double(std::int64_t)>& fn);
double reduce_sum(std::int64_t begin, std::int64_t end,
                  const std::function<double(std::int64_t)>& fn);

}  // namespace derham::par
