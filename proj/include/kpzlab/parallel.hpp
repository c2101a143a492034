#pragma once

#include <cstddef>
#include <functional>

namespace kpz {

/// Worker count: KPZLAB_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for i in [0, n) on worker_count() threads.  Indices are
/// handed out dynamically; body must only write to slots owned by i so the
/// result does not depend on the schedule.  The first exception thrown by
/// any body is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace kpz
