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

#ifndef ONLINEMATCH_RNG_H_
#define ONLINEMATCH_RNG_H_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace onlinematch {

// SplitMix64 finalizer; used to derive independent per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Engine for stream `stream` of a run seeded with `seed`. Streams are the
// unit of splitting: trial i of a Monte Carlo run always uses stream i, so
// results do not depend on how trials are distributed over threads.
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(~stream)));
}

template <typename Engine>
std::vector<int> random_permutation(int n, Engine& engine) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), engine);
  return p;
}

// Uniform subset of size `size` from 0..n-1, sorted ascending.
template <typename Engine>
std::vector<int> random_subset(int n, int size, Engine& engine) {
  std::vector<int> p = random_permutation(n, engine);
  p.resize(size);
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace onlinematch

#endif  // ONLINEMATCH_RNG_H_
