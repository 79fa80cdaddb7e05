#include "ghc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ghc {

int thread_budget(int requested) {
  int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int cap = hw;
  if (const char* env = std::getenv("GHC_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) cap = v;
    } catch (...) {
    }
  }
  return requested > 0 ? std::min(requested, cap) : cap;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& task) {
  int workers = static_cast<int>(std::min<std::size_t>(std::max(1, threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ghc
