#pragma once

#include <cstdint>
#include <functional>

namespace rbca {

// Worker count policy: explicit argument > RBCA_THREADS > hardware concurrency.
int default_threads();
void set_default_threads(int threads);
int resolve_threads(int requested);

// Splits [0, total) into one contiguous chunk per worker and runs
// fn(chunk_index, begin, end) on each. Callers merge per-chunk results in
// chunk order, which keeps every parallel computation deterministic.
void parallel_chunks(std::int64_t total, int threads,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn);

} // namespace rbca
