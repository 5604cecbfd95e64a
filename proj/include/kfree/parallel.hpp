#pragma once

namespace kfree {

/// Thread budget for the data-parallel kernels: machine parallelism, capped
/// by the KFREE_THREADS environment variable when set.
int max_threads();

/// Override for benchmarks and tests.
void set_max_threads(int threads);

}  // namespace kfree
