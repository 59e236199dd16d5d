#include "voapf/threading.hpp"

#include <algorithm>

namespace voapf {

void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn) {
    if (n == 0) return;
    int workers = std::max(1, threads);
    if (workers == 1 || n == 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto body = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= n) break;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int spawn = std::min<size_t>(size_t(workers), n) - 1;
    for (int t = 0; t < spawn; ++t) pool.emplace_back(body);
    body();
    for (std::thread& t : pool) t.join();
}

int default_thread_count() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : int(hc);
}

} // namespace voapf
