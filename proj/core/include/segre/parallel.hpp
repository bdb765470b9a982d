#pragma once

#include <cstddef>
#include <functional>

namespace segre {

// Default worker count used when a caller passes threads = 0.
// Set once from the CLI; defaults to hardware concurrency.
unsigned default_threads();
void set_default_threads(unsigned n);

// Runs fn(begin, end, tid) over [0, n) split into contiguous chunks, one
// chunk per worker. The partition depends only on n and the worker count;
// callers that merge per-worker output canonically stay deterministic.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t, unsigned)>& fn,
                  unsigned threads = 0);

}  // namespace segre
