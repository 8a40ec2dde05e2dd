#pragma once

#include <functional>

namespace matlift {

// Runs fn(0..count-1), distributing indices over up to `threads` workers by
// atomic dequeue. Callers must make fn(i) independent of execution order
// (per-index RNG substreams, per-index output slots); under that contract
// results are identical for any thread count. The first exception thrown by
// any index is rethrown after all workers join.
void parallel_for(long count, int threads, const std::function<void(long)>& fn);

}  // namespace matlift
