// Copyright 2026 The povmforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace povmforge {

/// Worker count from POVMFORGE_WORKERS, or 1 when unset or invalid.
unsigned default_workers();

/// Splits [0, n) into contiguous chunks, one per worker, and calls
/// fn(begin, end, worker) for each. Chunk boundaries depend only on n and
/// the worker count; the first exception thrown by any worker is rethrown.
template <typename Fn>
void parallel_for(size_t n, unsigned workers, Fn &&fn) {
    if (workers == 0) {
        workers = default_workers();
    }
    if (workers <= 1 || n < 2) {
        fn(size_t{0}, n, 0u);
        return;
    }
    if (workers > n) {
        workers = static_cast<unsigned>(n);
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const size_t begin = n * w / workers;
        const size_t end = n * (w + 1) / workers;
        threads.emplace_back([&, begin, end, w] {
            try {
                fn(begin, end, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace povmforge
