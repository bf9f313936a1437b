#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace elastica {

inline int default_jobs() {
  if (const char* env = std::getenv("ELASTICA_JOBS")) {
    try {
      int j = std::stoi(env);
      if (j > 0) return j;
    } catch (const std::exception&) {
    }
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, count) on at most `jobs` threads. The first
// exception thrown by any task is rethrown after all workers join.
inline void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 0) jobs = default_jobs();
  jobs = std::max(1, std::min(jobs, count));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (int i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace elastica
