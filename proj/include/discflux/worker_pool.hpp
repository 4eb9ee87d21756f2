#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace discflux {

/// Runs every task on up to `jobs` threads (0 means one per hardware
/// thread). Blocks until all finish; rethrows the first failure in task
/// order.
void run_parallel(const std::vector<std::function<void()>>& tasks,
                  std::size_t jobs);

}  // namespace discflux
