#pragma once

#include <cstddef>
#include <functional>

namespace wulffsym {

/// Environment variable overriding the worker count.
inline constexpr const char* kThreadsEnv = "WULFFSYM_THREADS";

/// Worker count: $WULFFSYM_THREADS if set to a positive integer, otherwise the
/// number of available cores.
[[nodiscard]] unsigned worker_count();

/// Runs body(i) for i in [0, count) across worker threads in contiguous
/// blocks. Callers write results into per-index slots, so outputs do not depend
/// on scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace wulffsym
