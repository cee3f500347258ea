#include "rbca/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace rbca {

namespace {

std::atomic<int> g_default_threads{0};

int env_threads() {
    const char* env = std::getenv("RBCA_THREADS");
    if (env == nullptr) return 0;
    int v = std::atoi(env);
    return v > 0 ? v : 0;
}

} // namespace

int default_threads() {
    int configured = g_default_threads.load();
    if (configured > 0) return configured;
    int env = env_threads();
    if (env > 0) return env;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_default_threads(int threads) { g_default_threads.store(threads); }

int resolve_threads(int requested) { return requested > 0 ? requested : default_threads(); }

void parallel_chunks(std::int64_t total, int threads,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn) {
    if (total <= 0) return;
    threads = resolve_threads(threads);
    const int workers = static_cast<int>(std::min<std::int64_t>(threads, total));
    if (workers <= 1) {
        fn(0, 0, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int c = 0; c < workers; ++c) {
        std::int64_t begin = total * c / workers;
        std::int64_t end = total * (c + 1) / workers;
        pool.emplace_back([&, c, begin, end] {
            try {
                fn(c, begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace rbca
