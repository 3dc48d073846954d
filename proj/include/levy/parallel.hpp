#pragma once

#include <cstddef>
#include <functional>

namespace levy
{

// Worker count: LEVYASYM_THREADS if set and positive, else hardware threads
unsigned thread_count();

/*!
 * Run body(i) for i in [0, n) on up to thread_count() threads.
 *
 * Work is handed out in index order; callers write results into slots
 * indexed by i so the outcome does not depend on scheduling. The first
 * exception thrown by any worker is rethrown on the calling thread.
 */
void parallel_for(std::size_t n, std::function<void(std::size_t)> const& body);

}  // namespace levy
