#pragma once

#include <cstddef>
#include <functional>

namespace birkhoff {

// Process-wide cap on worker threads (0 = hardware concurrency).
void set_max_threads(unsigned n) noexcept;
unsigned max_threads() noexcept;

// Runs body(i) for i in [0, n); nested calls from a worker run serially.
// Each index runs exactly once; callers that reduce must store per-index
// results and combine them in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace birkhoff
