#pragma once

#include <cstddef>
#include <functional>

namespace ghc {

// Worker count: GHC_THREADS when set and positive, else hardware concurrency.
int thread_budget(int requested = 0);

// Runs task(i) for i in [0, n) on up to `threads` workers. Exceptions from
// tasks are rethrown on the caller after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& task);

}  // namespace ghc
