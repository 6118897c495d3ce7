#pragma once

#include <cstddef>
#include <functional>

namespace cohpure {

// Worker count: COHPURE_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Results must be written to per-index slots;
/// the schedule never influences them. If bodies throw, the exception from the
/// lowest index is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cohpure
