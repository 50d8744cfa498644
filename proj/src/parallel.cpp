#include "derham/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace derham::par {
namespace {

thread_local bool inside_parallel = false;

constexpr std::int64_t kChunkCount = 32;

struct ChunkGrid {
  std::int64_t begin, end, chunks, size;
  ChunkGrid(std::int64_t b, std::int64_t e)
      : begin(b), end(e), chunks(std::min<std::int64_t>(kChunkCount, std::max<std::int64_t>(1, e - b))) {
    size = (end - begin + chunks - 1) / chunks;
  }
  std::int64_t lo(std::int64_t c) const { return begin + c * size; }
  std::int64_t hi(std::int64_t c) const { return std::min(end, begin + (c + 1) * size); }
};

template <typename Chunk>
void run_chunks(std::int64_t nchunks, Chunk&& chunk) {
  const int threads = std::min<std::int64_t>(max_threads(), nchunks);
  if (threads <= 1 || inside_parallel) {
    for (std::int64_t c = 0; c < nchunks; ++c) chunk(c);
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    inside_parallel = true;
    for (std::int64_t c = next.fetch_add(1); c < nchunks; c = next.fetch_add(1)) chunk(c);
    inside_parallel = false;
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace

int max_threads() {
  static const int cached = [] {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("DERHAM_NS_THREADS")) {
      const int cap = std::atoi(env);
      if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
  }();
  return cached;
}

void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t)>& fn) {
  if (end <= begin) return;
  ChunkGrid grid(begin, end);
  run_chunks(grid.chunks, [&](std::int64_t c) {
    for (std::int64_t i = grid.lo(c); i < grid.hi(c); ++i) fn(i);
  });
}

double reduce_max(std::int64_t begin, std::int64_t end,
                  const std::function<double(std::int64_t)>& fn) {
  if (end <= begin) return 0.0;
  ChunkGrid grid(begin, end);
  std::vector<double> partial(grid.chunks, 0.0);
  run_chunks(grid.chunks, [&](std::int64_t c) {
    double m = 0.0;
    for (std::int64_t i = grid.lo(c); i < grid.hi(c); ++i) m = std::max(m, fn(i));
    partial[c] = m;
  });
  double m = partial[0];
  for (std::int64_t c = 1; c < grid.chunks; ++c) m = std::max(m, partial[c]);
  return m;
}

double reduce_sum(std::int64_t begin, std::int64_t end,
                  const std::function<double(std::int64_t)>& fn) {
  if (end <= begin) return 0.0;
  ChunkGrid grid(begin, end);
  std::vector<double> partial(grid.chunks, 0.0);
  run_chunks(grid.chunks, [&](std::int64_t c) {
    double s = 0.0;
    for (std::int64_t i = grid.lo(c); i < grid.hi(c); ++i) s += fn(i);
    partial[c] = s;
  });
  double s = 0.0;
  for (std::int64_t c = 0; c < grid.chunks; ++c) s += partial[c];
  return s;
}

}  // namespace derham::par
