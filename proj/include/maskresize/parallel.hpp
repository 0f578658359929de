#pragma once

#include <functional>

namespace maskresize {

// Worker count: MASKRESIZE_THREADS if set (clamped to >= 1), else the
// hardware concurrency. Re-read on every call so the cap can change
// between runs within one process.
int thread_budget();

// Runs fn(i) for every i in [0, n), split into contiguous chunks across
// threads. Each index must write only its own outputs; under that contract
// results are bit-identical for any thread count. Exceptions thrown by fn
// are rethrown on the calling thread.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace maskresize
