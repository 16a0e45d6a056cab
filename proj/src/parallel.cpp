#include "teachset/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace teachset {

int thread_count() {
  int want = 0;
  if (const char* env = std::getenv("TEACHSET_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 0 && v < 1024) want = static_cast<int>(v);
  }
  if (want == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    want = hw > 0 ? static_cast<int>(hw) : 1;
  }
  return std::max(1, want);
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  if (n <= 0) return;
  const int workers = std::min<std::int64_t>(thread_count(), n);
  if (workers <= 1 || n < 64) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min<std::int64_t>(begin + chunk, n);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (std::int64_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace teachset
