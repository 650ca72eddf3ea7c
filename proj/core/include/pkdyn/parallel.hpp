#pragma once

#include <cstddef>
#include <functional>

namespace pkdyn {

// Runs fn(i) for i in [0, n). Jobs must be pure up to writes into
// index-owned slots; results are then independent of the schedule.
// Worker count defaults to hardware concurrency and can be forced
// through the PKDYN_THREADS environment variable.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

std::size_t worker_count();

} // namespace pkdyn
