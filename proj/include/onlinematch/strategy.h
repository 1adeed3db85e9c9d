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

#ifndef ONLINEMATCH_STRATEGY_H_
#define ONLINEMATCH_STRATEGY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "onlinematch/instance.h"
#include "onlinematch/mechanism.h"

namespace onlinematch {

// A single bidder reporting `reported` instead of its true row.
struct Misreport {
  BidderId bidder = 0;
  std::vector<Weight> reported;
  friend bool operator==(const Misreport&, const Misreport&) = default;
};

// True value of the assigned item minus the price charged; 0 if unassigned.
Weight utility_of(const AuctionOutcome& outcome, BidderId bidder,
                  std::span<const Weight> true_row);

// Same instance and order, with the misreport substituted wherever the
// mechanism reads bids. Welfare and utilities use true valuations.
AuctionOutcome run_with_misreport(const Instance& instance,
                                  std::span<const BidderId> order, int k,
                                  const Misreport& misreport,
                                  Variant variant = Variant::kPostedPrices);

struct Manipulation {
  Instance instance;
  std::vector<BidderId> order;
  int k = 0;
  Variant variant = Variant::kPostedPrices;
  Misreport misreport;
  Weight truthful_utility = 0;
  Weight misreport_utility = 0;
};

struct TruthfulnessConfig {
  // Orders: all n! of them when n <= kExhaustiveOrderLimit, otherwise this
  // many uniformly random orders.
  std::int64_t order_samples = 100;
  // When set, every bidder tries every row over {0..grid_max}^m. Otherwise
  // each order gets `misreports_per_order` random (bidder, row) draws with
  // entries in [0, value_max]; value_max < 0 means 2 * max weight + 1.
  std::optional<Weight> grid_max;
  std::int64_t misreports_per_order = 10;
  Weight value_max = -1;
  Variant variant = Variant::kPostedPrices;
  // Re-run only the misreporter's arrival step from the recorded truthful
  // state instead of the whole auction. Earlier steps never read the
  // misreporter's row, so the deviating utility is the same.
  bool resume_at_arrival = false;
};

inline constexpr int kExhaustiveOrderLimit = 6;

struct TruthfulnessVerdict {
  std::int64_t orders = 0;
  std::int64_t deviations = 0;
  // Deviations whose price vector at the misreporter's arrival differed from
  // the truthful one (full-run mode only).
  std::int64_t price_changes = 0;
  // Truthful runs in which some buyer did not get a utility-maximizing item.
  std::int64_t non_maximizing = 0;
  std::optional<Manipulation> counterexample;
  bool ok() const {
    return !counterexample && price_changes == 0 && non_maximizing == 0;
  }
};

// Compares every sampled deviation against the truthful run, bidder by
// bidder. Stops at the first strictly profitable deviation.
TruthfulnessVerdict test_truthfulness(const Instance& instance, int k,
                                      const TruthfulnessConfig& config,
                                      std::uint64_t seed);

struct SearchBudget {
  std::int64_t instances = 2000;
  std::int64_t orders_per_instance = 4;
  std::int64_t random_misreports = 4;
};

struct SearchResult {
  std::int64_t deviations_tried = 0;
  std::optional<Manipulation> witness;
};

// Random small instances; for each post-sampling bidder, tries zeroing each
// item in turn plus a few random rows. Deterministic in `seed`.
SearchResult search_manipulation(Variant variant, std::uint64_t seed,
                                 const SearchBudget& budget = {});

// search_manipulation against the all-items baseline.
SearchResult demonstrate_baseline_manipulable(std::uint64_t seed,
                                              const SearchBudget& budget = {});

// Re-runs both branches of a witness and reports whether the recorded
// utilities reproduce exactly.
bool replay(const Manipulation& witness);

}  // namespace onlinematch

#endif  // ONLINEMATCH_STRATEGY_H_
