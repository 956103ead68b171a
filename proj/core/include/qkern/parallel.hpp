#pragma once

#include <cstddef>
#include <functional>

namespace qkern {

/// Worker count: QKERN_THREADS env var, 0 or unset = hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [begin, end) across workers. fn must write only to
/// slots owned by index i; results are then invariant to the worker count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn);

} // namespace qkern
