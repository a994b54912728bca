#pragma once

#include <cstddef>
#include <functional>

namespace regc {

/// Effective worker count: explicit request > REGCLUS_THREADS env var >
/// hardware concurrency. Always at least 1.
int effective_threads(int requested = 0);

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Jobs must be
/// independent; each writes only its own output slot, so the result is
/// identical for any worker count. Exceptions are captured and the first
/// one rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  int threads = 0);

}  // namespace regc
