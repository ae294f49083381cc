#include "mixdenoise/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace mixdenoise {

namespace {

std::atomic<int> g_override{0};

int env_workers() {
    if (const char* env = std::getenv("MIXDENOISE_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int worker_count() {
    const int n = g_override.load();
    return n >= 1 ? n : env_workers();
}

void set_worker_count(int n) { g_override.store(std::max(0, n)); }

void parallel_chunks(int n, const std::function<void(int, int, int)>& fn) {
    if (n <= 0) return;
    const int workers = std::min(worker_count(), n);
    if (workers == 1) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const int begin = static_cast<int>(static_cast<long long>(n) * w / workers);
        const int end = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
        threads.emplace_back([&, w, begin, end] {
            try {
                fn(w, begin, end);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    parallel_chunks(n, [&](int, int begin, int end) {
        for (int i = begin; i < end; ++i) fn(i);
    });
}

}  // namespace mixdenoise
