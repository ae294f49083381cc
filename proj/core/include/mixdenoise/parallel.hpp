#pragma once

#include <cstddef>
#include <functional>

namespace mixdenoise {

/// Worker count: set_worker_count() override, else MIXDENOISE_THREADS, else
/// hardware concurrency. Always >= 1.
int worker_count();
/// 0 restores the environment/hardware default.
void set_worker_count(int n);

/// Splits [0, n) into worker_count() contiguous chunks, chunk w covering
/// [begin, end). Chunk boundaries depend only on n and the worker count.
void parallel_chunks(int n, const std::function<void(int worker, int begin, int end)>& fn);

/// fn(i) for every i in [0, n), statically partitioned across workers.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace mixdenoise
