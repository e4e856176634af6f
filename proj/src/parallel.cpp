#include "faithcheck/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace faithcheck {

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FAITHCHECK_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) n = static_cast<unsigned>(std::min(v, 64l));
    }
    return n;
}

void parallel_chunks(size_t total, const std::function<void(size_t, size_t)>& fn) {
    const size_t workers = std::min<size_t>(worker_count(), total);
    if (workers <= 1) {
        if (total > 0) fn(0, total);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const size_t chunk = (total + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
        const size_t begin = w * chunk;
        const size_t end = std::min(total, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : threads) t.join();
}

}  // namespace faithcheck
