#pragma once

#include <cstddef>
#include <functional>

namespace faithcheck {

/// Worker cap: FAITHCHECK_THREADS when set (clamped to [1, 64]), otherwise
/// the hardware concurrency.
unsigned worker_count();

/// Runs fn over [0, total) split into contiguous chunks, one worker per
/// chunk. Each index is processed exactly once, so writes to per-index slots
/// are race-free and results do not depend on the worker count.
void parallel_chunks(size_t total, const std::function<void(size_t begin, size_t end)>& fn);

}  // namespace faithcheck
