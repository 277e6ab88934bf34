// Copyright 2026 The Riskhorizon Authors
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

#ifndef RISKHORIZON__PARALLEL_HPP_
#define RISKHORIZON__PARALLEL_HPP_

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace riskhorizon
{

/// Worker count: hardware concurrency capped by the RISKHORIZON_THREADS
/// environment variable when set.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n); results must be written to pre-sized slots so
/// the output order is independent of scheduling. The first exception is
/// rethrown on the caller.
template <typename Fn>
void parallel_for(std::size_t n, Fn && fn)
{
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto & t : pool) t.join();
  if (failed.load()) std::rethrow_exception(error);
}

}  // namespace riskhorizon

#endif  // RISKHORIZON__PARALLEL_HPP_
