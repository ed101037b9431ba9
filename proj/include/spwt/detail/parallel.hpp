// SPDX-License-Identifier: Apache-2.0
//
// spwt: secure precise wireless transmission and jamming simulation library
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace spwt::detail
{

inline int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? int(hc) : 1;
}

// Runs fn(i) for i in [0, n) on up to n_threads workers. Work items must
// write only to their own output slots; the dynamic schedule is then free to
// reorder without changing any result. The first exception wins and is
// rethrown on the calling thread after all workers drain.
template <typename Fn> void parallel_for(std::int64_t n, int n_threads, Fn &&fn)
{
    if (n <= 0)
        return;
    const int workers = int(std::min<std::int64_t>(resolve_threads(n_threads), n));
    if (workers <= 1)
    {
        for (std::int64_t i = 0; i < n; ++i)
            fn(i);
        return;
    }

    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
        for (;;)
        {
            const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n)
                return;
            if (failed.load(std::memory_order_relaxed)) // best-effort early abort
                return;
            try
            {
                fn(i);
            }
            catch (...)
            {
                {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                }
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int t = 0; t < workers; ++t)
        pool.emplace_back(worker);
    for (std::thread &t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace spwt::detail
