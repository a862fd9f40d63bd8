#ifndef BORNUQ_JOBS_HPP
#define BORNUQ_JOBS_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace bornuq::harness {

/*
 * Runs fn(0) .. fn(n-1) on up to `jobs` threads. Items must be
 * independent and write only to their own output slot; iteration order
 * is unspecified, so determinism comes from per-item seeds plus merging
 * results by index afterwards. The first exception thrown by any item is
 * rethrown on the calling thread.
 */
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    const int workers = static_cast<int>(std::min<std::size_t>(n, jobs));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load())
                return;
            try {
                fn(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back(body);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace bornuq::harness

#endif
