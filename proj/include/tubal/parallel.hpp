#pragma once

#include <cstddef>
#include <functional>

namespace tubal {

/// Upper bound on worker threads: TUBAL_THREADS if set and positive,
/// otherwise the hardware concurrency (at least 1).
std::size_t max_threads();

/// Runs body(i) for i in [0, count). Each index is processed exactly once by
/// one thread, so results do not depend on the schedule as long as body(i)
/// writes only to slot i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tubal
