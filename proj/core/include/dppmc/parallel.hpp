#pragma once

#include <cstddef>
#include <functional>

namespace dppmc {

// Thread count: `requested` if non-zero, else DPPMC_THREADS if set, else hardware concurrency.
[[nodiscard]] std::size_t resolve_threads(std::size_t requested = 0);

// Runs body(i) for i in [0, count) on up to `threads` workers. Work is handed out by an
// atomic counter; callers write results by index, so output does not depend on scheduling.
// The first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace dppmc
