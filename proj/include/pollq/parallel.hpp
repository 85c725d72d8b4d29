#pragma once

#include <cstddef>
#include <functional>

namespace pollq {

// Thread count from POLLQ_THREADS, else hardware concurrency (at least 1).
unsigned default_thread_count();

// Calls body(i) for i in [0, count) using up to `threads` workers.
// Indices are claimed in contiguous blocks; body must only write slot i.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace pollq
