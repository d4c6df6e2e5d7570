#pragma once

#include <cstddef>
#include <functional>

namespace stacknash {

// Worker count: STACKNASH_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t thread_budget();

// Calls task(k) for k in [0, count) on up to thread_budget() threads. Tasks
// must write only to their own output slots; the first exception thrown by
// any task is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace stacknash
