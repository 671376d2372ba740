#pragma once

#include <functional>

namespace mechlab {

/// Worker count: hardware concurrency capped by the MECHLAB_THREADS
/// environment variable (values < 1 mean serial).
int worker_count();

/// Runs fn(0..n-1) across workers in contiguous chunks. Callers keep
/// results deterministic by writing to index-addressed storage only.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace mechlab
