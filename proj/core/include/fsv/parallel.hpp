#pragma once

#include <cstddef>
#include <functional>

namespace fsv {

/// Number of workers to use when the caller asks for 0 ("all cores").
std::size_t default_jobs() noexcept;

/// Calls body(i) for every i in [0, count) on up to `jobs` threads.
/// Work is claimed dynamically; callers write results into slot i so the
/// outcome does not depend on scheduling. The first exception thrown by
/// any body is rethrown after all workers have stopped.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body);

}  // namespace fsv
