#pragma once

// Worker pool helpers. Results never depend on the worker count: work items
// write to their own slots and reductions run serially afterwards.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

namespace foliage {

/// FOLIAGE_THREADS when set to a positive integer, else hardware concurrency.
int worker_count();
/// Overrides the worker count for this process (0 restores the default).
void set_worker_count(int count);

/// Calls fn(k) for k in [0, count). If several items throw, the exception of
/// the lowest index is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Neumaier compensated sum, in index order.
double compensated_sum(std::span<const double> values);

} // namespace foliage
