#pragma once

#include <cstddef>
#include <functional>

namespace levy {

/// Worker count: LEVY_THREADS if set, else std::thread::hardware_concurrency.
unsigned default_workers();

/// Calls fn(i, worker) for i in [0, n). Indices are split into contiguous
/// static blocks, one per worker, so which worker sees which index does not
/// depend on timing. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t, unsigned)>& fn,
                  unsigned workers = 0);

}  // namespace levy
