#pragma once

#include <functional>

namespace elrk {

// ELRKFV_THREADS if set, else hardware concurrency; at least 1
int worker_count();

// calls fn(i) for i in [0, n) over worker_count() threads; first exception is rethrown
void parallel_for(long n, const std::function<void(long)>& fn);

}  // namespace elrk
