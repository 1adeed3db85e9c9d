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

#ifndef ONLINEMATCH_MATCHING_H_
#define ONLINEMATCH_MATCHING_H_

#include <span>
#include <vector>

#include "onlinematch/instance.h"

namespace onlinematch {

// Canonical maximum-weight matching on the subgraph induced by `bidders` and
// `items`. Among all optima it returns the one whose assignment vector, read
// in ascending bidder id with "unassigned" ordered after every item id, is
// lexicographically smallest. The result depends only on the two sets, never
// on the order in which they are passed. When |bidders| >= |items| every item
// is matched, even across zero-weight edges.
Matching max_weight_matching(const Instance& instance,
                             std::span<const BidderId> bidders,
                             std::span<const ItemId> items);

// Weight of any maximum-weight matching on the induced subgraph.
Weight opt_value(const Instance& instance, std::span<const BidderId> bidders,
                 std::span<const ItemId> items);

// Exhaustive oracle for max_weight_matching; same canonical rule. Refuses
// more than kBruteForceLimit bidders or items.
inline constexpr int kBruteForceLimit = 10;
Matching brute_force_matching(const Instance& instance,
                              std::span<const BidderId> bidders,
                              std::span<const ItemId> items);

namespace detail {

// Unvalidated variants for hot loops. Ids must be in range and distinct;
// the canonical solver additionally needs both spans sorted ascending.
Weight assignment_value(const Instance& instance,
                        std::span<const BidderId> bidders,
                        std::span<const ItemId> items);
Matching canonical_matching_sorted(const Instance& instance,
                                   std::span<const BidderId> bidders,
                                   std::span<const ItemId> items);

}  // namespace detail

}  // namespace onlinematch

#endif  // ONLINEMATCH_MATCHING_H_
