#pragma once

#include <cstddef>
#include <functional>

namespace cptrefine {

/// Worker count: CPT_REFINE_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1). Never affects results.
std::size_t worker_count();

/// Runs `task(i)` for i in [0, count) on up to `workers` threads. Tasks are
/// claimed dynamically; callers must make results independent of which
/// worker ran which index. The first exception thrown by a task is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task,
                  std::size_t workers = worker_count());

}  // namespace cptrefine
