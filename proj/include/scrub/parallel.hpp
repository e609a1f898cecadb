#pragma once

#include <cstddef>
#include <functional>

namespace scrub {

/// Invokes fn(i) for every i in [0, n). Thread count comes from the
/// SCRUB_THREADS environment variable (unset or 1 means serial). Each index
/// must write only to its own output slot; results are identical to serial
/// execution at any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Configured worker count (>= 1).
int thread_count();

}  // namespace scrub
