#pragma once

#include <cstddef>
#include <functional>

namespace holderem {

/// Runs body(i) for every i in [0, count) on up to `threads` workers, each
/// taking one contiguous block of indices. Results must be written to slots
/// owned by i; callers reduce afterwards in index order, which keeps every
/// floating-point sum independent of the worker count.
///
/// If bodies throw, the exception from the smallest failing index is rethrown.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

/// Worker count used when a caller passes 0.
std::size_t default_thread_count() noexcept;

} // namespace holderem
