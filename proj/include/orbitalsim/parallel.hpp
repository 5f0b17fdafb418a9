// Copyright 2026 The orbitalsim Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace orbitalsim {

namespace detail {
template <class Result> std::vector<Result> collect(std::vector<std::optional<Result>> &slots) {
    std::vector<Result> out;
    out.reserve(slots.size());
    for (auto &s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}
} // namespace detail

/// Runs fn(i) for i in [0, count) on up to `workers` threads (0 = hardware
/// concurrency) and returns the results in index order. Each trial must derive
/// its own randomness from i, which makes the output independent of the
/// worker count.
template <class Result, class Fn>
std::vector<Result> run_trials(std::size_t count, unsigned workers, Fn &&fn) {
    std::vector<std::optional<Result>> slots(count);
    if (workers == 0) {
        workers = std::max(1U, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            slots[i].emplace(fn(i));
        }
        return detail::collect(slots);
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned wk = 0; wk < workers; ++wk) {
        pool.emplace_back([&, wk] {
            try {
                for (std::size_t i = wk; i < count; i += workers) {
                    slots[i].emplace(fn(i));
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return detail::collect(slots);
}

} // namespace orbitalsim
