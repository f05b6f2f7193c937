#pragma once

#include <cstddef>
#include <functional>

namespace mumford {

// Worker cap: MUMFORD_HEAT_THREADS when set to a positive integer, otherwise
// the hardware concurrency.
unsigned worker_count();

// Runs fn(0..n-1) over the workers. Each index writes only its own output, so
// results do not depend on scheduling. The first exception is rethrown.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace mumford
