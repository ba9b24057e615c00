#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace wsqopt::cli {

template <class T, class Fn>
std::vector<T> parallel_map(int count, int threads, Fn fn) {
    std::vector<std::optional<T>> slots(static_cast<std::size_t>(std::max(count, 0)));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int k = next++; k < count; k = next++) {
            try {
                slots[k].emplace(fn(k));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    const int workers = std::clamp(threads, 1, std::max(count, 1));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<T> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace wsqopt::cli
