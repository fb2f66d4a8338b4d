#pragma once

#include <cstddef>
#include <functional>

namespace gave {

// Worker count: hardware concurrency, capped by the GAVE_THREADS
// environment variable when set.
std::size_t worker_count();

// Runs fn(0..n-1) on a pool of workers. Items are claimed through an
// atomic counter; the first exception is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace gave
