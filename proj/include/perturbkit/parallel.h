//
// Copyright 2026 The PerturbKit Authors
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
//

#ifndef PERTURBKIT_PARALLEL_H_
#define PERTURBKIT_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace perturbkit {

// Calls fn(i) for every i in [0, n) on up to `workers` threads. Work is
// handed out by an atomic counter, so fn must only write to slot i of any
// shared output. Runs inline when workers <= 1.
template <typename Fn>
void ParallelFor(size_t n, int workers, Fn&& fn) {
  const size_t threads =
      std::min(n, static_cast<size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  auto body = [&] {
    for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (size_t t = 1; t < threads; ++t) pool.emplace_back(body);
  body();
  for (std::thread& thread : pool) thread.join();
}

// std::thread::hardware_concurrency with a floor of 1.
inline int AvailableParallelism() {
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace perturbkit

#endif  // PERTURBKIT_PARALLEL_H_
