/*
 * Copyright 2026 The windstat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace windstat {

/// How Monte Carlo trials are cut into reproducible streams.
struct StreamPlan {
  std::uint64_t seed = 20220101;
  std::uint32_t streams = 16;
  std::uint32_t first_stream = 0;
  unsigned threads = 0;  // 0: hardware concurrency, capped by WINDSTAT_THREADS
};

/// Worker count after applying the WINDSTAT_THREADS cap.
unsigned worker_count(unsigned requested);

/// Number of draws assigned to stream `s` out of `trials`.
inline std::uint64_t stream_share(std::uint64_t trials, std::uint32_t streams, std::uint32_t s) {
  return trials / streams + (s < trials % streams ? 1 : 0);
}

/// Runs body(stream_id, draws) for every stream and returns the per-stream
/// results in stream order. The result does not depend on the thread count.
template <class Result, class Body>
std::vector<Result> run_streams(std::uint64_t trials, const StreamPlan& plan, Body&& body) {
  const std::uint32_t streams = std::max<std::uint32_t>(plan.streams, 1);
  std::vector<Result> results(streams);
  const unsigned workers = std::min<unsigned>(worker_count(plan.threads), streams);

  std::atomic<std::uint32_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::uint32_t s = next++; s < streams; s = next++) {
      try {
        results[s] = body(plan.first_stream + s, stream_share(trials, streams, s));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace windstat
