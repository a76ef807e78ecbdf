#pragma once

#include <cstddef>
#include <functional>

namespace endow {

// Thread budget: ENDOWMENT_CORES_THREADS caps it, 0/unset means hardware
// concurrency.
int thread_cap();

// Splits [0, n) into contiguous chunks processed by worker threads. Callers
// must write only to disjoint, preallocated slots so results are identical to
// a serial run.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace endow
