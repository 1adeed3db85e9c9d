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

#include "onlinematch/matching.h"

#include <algorithm>
#include <limits>
#include <string>

namespace onlinematch {
namespace {

// Dense O(r^2 c) Hungarian method on an r x c cost matrix with r <= c, all
// rows assigned. Returns the minimum total cost. Buffers are reused per thread.
struct HungarianScratch {
  std::vector<Weight> cost, u, v, minv;
  std::vector<int> p, way;
  std::vector<char> used;
};

Weight solve_min_cost(HungarianScratch& s, int rows, int cols) {
  constexpr Weight kInf = std::numeric_limits<Weight>::max() / 4;
  s.u.assign(rows + 1, 0);
  s.v.assign(cols + 1, 0);
  s.p.assign(cols + 1, 0);
  s.way.assign(cols + 1, 0);
  s.minv.resize(cols + 1);
  s.used.resize(cols + 1);
  auto a = [&](int i, int j) {
    return s.cost[static_cast<std::size_t>(i - 1) * cols + (j - 1)];
  };
  for (int i = 1; i <= rows; ++i) {
    s.p[0] = i;
    int j0 = 0;
    std::fill(s.minv.begin(), s.minv.end(), kInf);
    std::fill(s.used.begin(), s.used.end(), 0);
    do {
      s.used[j0] = 1;
      const int i0 = s.p[j0];
      Weight delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= cols; ++j) {
        if (s.used[j]) continue;
        const Weight cur = a(i0, j) - s.u[i0] - s.v[j];
        if (cur < s.minv[j]) {
          s.minv[j] = cur;
          s.way[j] = j0;
        }
        if (s.minv[j] < delta) {
          delta = s.minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= cols; ++j) {
        if (s.used[j]) {
          s.u[s.p[j]] += delta;
          s.v[j] -= delta;
        } else {
          s.minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (s.p[j0] != 0);
    do {
      const int j1 = s.way[j0];
      s.p[j0] = s.p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Weight total = 0;
  for (int j = 1; j <= cols; ++j) {
    if (s.p[j] != 0) total += a(s.p[j], j);
  }
  return total;
}

void check_subsets(const Instance& instance, std::span<const BidderId> bidders,
                   std::span<const ItemId> items) {
  validate_ids(bidders, instance.num_bidders(), "bidder");
  validate_ids(items, instance.num_items(), "item");
}

std::vector<int> sorted_copy(std::span<const int> ids) {
  std::vector<int> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  return out;
}

struct BruteForceSearch {
  const Instance& instance;
  const std::vector<BidderId>& bidders;
  const std::vector<ItemId>& items;
  std::vector<char> item_used;
  std::vector<int> current;  // index into items, or -1
  std::vector<int> best;
  Weight best_weight = -1;

  void run(std::size_t depth, Weight acc) {
    if (depth == bidders.size()) {
      // Lexicographic DFS order: the first optimum reached is the canonical one.
      if (acc > best_weight) {
        best_weight = acc;
        best = current;
      }
      return;
    }
    for (std::size_t x = 0; x < items.size(); ++x) {
      if (item_used[x]) continue;
      item_used[x] = 1;
      current[depth] = static_cast<int>(x);
      run(depth + 1, acc + instance.weight(bidders[depth], items[x]));
      item_used[x] = 0;
    }
    current[depth] = -1;
    run(depth + 1, acc);
  }
};

}  // namespace

namespace detail {

Weight assignment_value(const Instance& instance,
                        std::span<const BidderId> bidders,
                        std::span<const ItemId> items) {
  if (bidders.empty() || items.empty()) return 0;
  thread_local HungarianScratch scratch;
  // Nonnegative weights on a complete graph: some optimum saturates the
  // smaller side, so solve it as a rectangular assignment.
  const bool items_are_rows = items.size() <= bidders.size();
  const int rows = static_cast<int>(items_are_rows ? items.size() : bidders.size());
  const int cols = static_cast<int>(items_are_rows ? bidders.size() : items.size());
  scratch.cost.resize(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const Weight w = items_are_rows ? instance.weight(bidders[c], items[r])
                                      : instance.weight(bidders[r], items[c]);
      scratch.cost[static_cast<std::size_t>(r) * cols + c] = -w;
    }
  }
  return -solve_min_cost(scratch, rows, cols);
}

Matching canonical_matching_sorted(const Instance& instance,
                                   std::span<const BidderId> bidders,
                                   std::span<const ItemId> items) {
  Matching result;
  Weight target = assignment_value(instance, bidders, items);
  result.weight = target;
  std::vector<ItemId> remaining(items.begin(), items.end());
  std::vector<ItemId> without;
  for (std::size_t b = 0; b < bidders.size() && !remaining.empty(); ++b) {
    const BidderId bidder = bidders[b];
    const auto rest = bidders.subspan(b + 1);
    for (std::size_t x = 0; x < remaining.size(); ++x) {
      const Weight w = instance.weight(bidder, remaining[x]);
      if (w > target) continue;
      without.assign(remaining.begin(), remaining.end());
      without.erase(without.begin() + static_cast<std::ptrdiff_t>(x));
      if (w + assignment_value(instance, rest, without) == target) {
        result.pairs.push_back({bidder, remaining[x]});
        target -= w;
        remaining.swap(without);
        break;
      }
    }
    // No feasible item: this bidder stays unassigned in the canonical optimum.
  }
  return result;
}

}  // namespace detail

Matching max_weight_matching(const Instance& instance,
                             std::span<const BidderId> bidders,
                             std::span<const ItemId> items) {
  check_subsets(instance, bidders, items);
  const auto b = sorted_copy(bidders);
  const auto j = sorted_copy(items);
  return detail::canonical_matching_sorted(instance, b, j);
}

Weight opt_value(const Instance& instance, std::span<const BidderId> bidders,
                 std::span<const ItemId> items) {
  check_subsets(instance, bidders, items);
  return detail::assignment_value(instance, bidders, items);
}

Matching brute_force_matching(const Instance& instance,
                              std::span<const BidderId> bidders,
                              std::span<const ItemId> items) {
  check_subsets(instance, bidders, items);
  if (static_cast<int>(bidders.size()) > kBruteForceLimit ||
      static_cast<int>(items.size()) > kBruteForceLimit) {
    throw SizeLimitError("brute-force matching is limited to " +
                         std::to_string(kBruteForceLimit) +
                         " bidders and items");
  }
  const auto b = sorted_copy(bidders);
  const auto j = sorted_copy(items);
  BruteForceSearch search{instance, b, j, std::vector<char>(j.size(), 0),
                          std::vector<int>(b.size(), -1), {}, -1};
  search.run(0, 0);
  Matching m;
  m.weight = search.best_weight;
  for (std::size_t x = 0; x < b.size(); ++x) {
    if (search.best[x] >= 0) m.pairs.push_back({b[x], j[search.best[x]]});
  }
  return m;
}

}  // namespace onlinematch
