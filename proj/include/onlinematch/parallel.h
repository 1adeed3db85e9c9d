// Copyright 2026 The Authors.
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

#ifndef ONLINEMATCH_PARALLEL_H_
#define ONLINEMATCH_PARALLEL_H_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace onlinematch {

// Environment variable that overrides the default worker count.
inline constexpr const char* kThreadsEnvVar = "ONLINEMATCH_THREADS";

inline int default_thread_count() {
  if (const char* env = std::getenv(kThreadsEnvVar)) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Calls fn(worker, begin, end) on contiguous chunks of [0, count). Chunk
// boundaries depend only on `count` and `threads`. The first exception thrown
// by any worker is rethrown on the calling thread.
template <typename Fn>
void parallel_chunks(std::int64_t count, int threads, Fn&& fn) {
  threads = static_cast<int>(
      std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(count, 1)));
  if (threads == 1) {
    fn(0, std::int64_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    const std::int64_t begin = count * w / threads;
    const std::int64_t end = count * (w + 1) / threads;
    pool.emplace_back([&, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace onlinematch

#endif  // ONLINEMATCH_PARALLEL_H_
