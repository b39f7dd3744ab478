#pragma once

#include <cstddef>
#include <functional>

namespace ptlab {

/// Worker count: PTLAB_THREADS when set to a positive integer, else the hardware concurrency.
std::size_t worker_count();

/// Runs fn(0..count-1) on up to worker_count() threads. Each index is an independent work
/// item writing only its own output slot, so results do not depend on scheduling. The
/// exception from the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace ptlab
