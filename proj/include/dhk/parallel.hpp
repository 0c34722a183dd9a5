#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dhk::parallel
{
//! Requested count if positive, else DHK_THREADS, else the hardware
//! concurrency.
inline int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
    if (char const* env = std::getenv("DHK_THREADS"))
    {
        int v = std::atoi(env);
        if (v > 0)
            return v;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

//! Calls fn(i) for i in [0, count) on up to `threads` workers. The first
//! exception thrown by any call is rethrown after all workers finish.
template <class Fn>
void for_each_index(std::int64_t count, int threads, Fn&& fn)
{
    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;)
        {
            std::int64_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(count);
            }
        }
    };
    int n = static_cast<int>(
        std::min<std::int64_t>(resolve_threads(threads), count));
    if (n <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> pool;
        for (int i = 0; i < n; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    if (error)
        std::rethrow_exception(error);
}

}  // namespace dhk::parallel
