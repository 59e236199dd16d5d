#ifndef VOAPF_THREADING_HPP
#define VOAPF_THREADING_HPP

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace voapf {

// Run fn(i) for i in [0, n) on up to `threads` workers. Results must be
// written to preallocated slots indexed by i, so the outcome is independent
// of scheduling; with exact arithmetic this makes every reduction
// thread-count invariant.
void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn);

int default_thread_count();

} // namespace voapf

#endif
