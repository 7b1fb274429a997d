#pragma once

#include <cstddef>
#include <functional>

namespace matchstream {

// Worker count: MATCHSTREAM_THREADS when set to a positive integer, else the hardware
// concurrency (at least 1).
int worker_threads();

// Runs body(i) for i in [0, count); results must be written to per-index slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace matchstream
