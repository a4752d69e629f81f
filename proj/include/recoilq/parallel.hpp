#pragma once

#include <cstddef>
#include <functional>

namespace recoilq {

// requested <= 0 means "use the hardware"; RECOILQ_THREADS caps the result.
int worker_count(int requested = 0);

// Runs fn(i) for i in [0, n).  Every index is computed independently, so the
// results do not depend on the number of workers.  The first exception thrown
// by any fn is rethrown after all workers finish.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace recoilq
