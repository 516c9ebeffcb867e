#pragma once

#include <cstddef>
#include <functional>

namespace pidtrunc {

/// 0 means: read PIDTRUNC_THREADS, and if that is unset or 0 use the
/// hardware concurrency.
std::size_t resolve_thread_count(std::size_t requested = 0);

/// Runs fn(0..count-1) on up to `threads` workers. Callers write results
/// into slots indexed by task, so the outcome never depends on scheduling.
/// The exception of the lowest failing task is rethrown.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace pidtrunc
