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

#ifndef ONLINEMATCH_MECHANISM_H_
#define ONLINEMATCH_MECHANISM_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "onlinematch/instance.h"

namespace onlinematch {

// Allocation rule used by run_mechanism.
//   kPartialOptimum: assign the arriving bidder its item in the canonical
//     optimum over arrived bidders and unsold items (no payments).
//   kPostedPrices: post externality prices computed without the arriving
//     bidder, then let it buy a utility-maximizing item.
//   kAllItemsBaseline: the non-truthful comparison rule that optimizes over
//     all items and sells only if the chosen item is still unsold.
enum class Variant { kPartialOptimum, kPostedPrices, kAllItemsBaseline };

std::string_view variant_name(Variant v);
// Accepts "alg1", "alg2" and "baseline". Throws InputError otherwise.
Variant parse_variant(std::string_view name);

// floor(n / e), exact for every n >= 1. Throws InputError for n < 1.
int choose_k(int n);

// Appends all-zero bidders until choose_k(n') >= k, choosing the smallest
// such n'. Returns the instance unchanged when it is already large enough.
// Dummy rows add no weight, so the offline optimum is preserved.
Instance pad_instance(const Instance& instance, int k);

struct PostedPrice {
  ItemId item;
  Weight price;
  friend bool operator==(const PostedPrice&, const PostedPrice&) = default;
};
using PriceVector = std::vector<PostedPrice>;

// Price of `item` in `prices`, or nullopt.
std::optional<Weight> price_of(const PriceVector& prices, ItemId item);

struct PriceRecord {
  int step;
  PriceVector prices;
  friend bool operator==(const PriceRecord&, const PriceRecord&) = default;
};

// State after `step` arrivals. `arrived` and `unassigned` are kept sorted.
struct MechanismState {
  int step = 0;
  int sample_size = 0;  // k: arrivals observed before any sale
  std::vector<BidderId> arrived;
  std::vector<ItemId> unassigned;
  Matching matching;
  std::vector<PriceRecord> price_history;

  static MechanismState initial(const Instance& instance, int sample_size);
  bool in_sampling_phase() const { return step < sample_size; }

  friend bool operator==(const MechanismState&,
                         const MechanismState&) = default;
};

struct StepResult {
  MechanismState state;
  std::optional<ItemId> item;
  Weight price = 0;
};

// Externality prices for the next step: for every unsold item j,
//   OPT(arrived, unsold) - OPT(arrived, unsold \ {j}).
// Only the bidders that arrived before the next step enter the computation.
// Throws ContractError while the next arrival is still in the sampling phase.
PriceVector posted_prices(const Instance& instance,
                          const MechanismState& state);

// One step of the partial-optimum rule.
StepResult step_algorithm1(const Instance& instance, MechanismState state,
                           BidderId arriving);

// One step of the posted-price rule. Prices are fixed before the arriving
// row is read. Among utility-maximizing choices (including "buy nothing" at
// utility zero) the one the canonical partial optimum makes is taken.
StepResult step_algorithm2(const Instance& instance, MechanismState state,
                           BidderId arriving);

struct Assignment {
  ItemId item;
  Weight price;
  int step;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct AuctionOutcome {
  Variant variant = Variant::kPostedPrices;
  int sample_size = 0;
  std::vector<BidderId> order;
  Matching matching;
  Weight welfare = 0;
  std::vector<std::optional<Assignment>> assignments;  // indexed by bidder
  std::vector<Weight> utilities;                       // indexed by bidder
  std::vector<MechanismState> trace;  // states after steps 0..n, if recorded
  std::vector<PriceRecord> price_history;
};

struct RunOptions {
  // Permit k < m. The sampling assumption then fails and the analysis no
  // longer applies; only used to demonstrate that breakdown.
  bool allow_undersampling = false;
  bool record_trace = true;
};

// Throws InputError unless `order` is a permutation of all bidder ids.
void validate_order(const Instance& instance, std::span<const BidderId> order);

// Runs one auction. Requires k < n and, unless allowed, k >= m.
AuctionOutcome run_mechanism(const Instance& instance,
                             std::span<const BidderId> order, int k,
                             Variant variant, const RunOptions& options = {});

namespace detail {

// Runs with bids read from `reports` while welfare and utilities are
// evaluated against `valuations`. Both instances must have equal shape.
AuctionOutcome run_on_reports(const Instance& reports,
                              const Instance& valuations,
                              std::span<const BidderId> order, int k,
                              Variant variant, const RunOptions& options);

void check_run_preconditions(const Instance& instance,
                             std::span<const BidderId> order, int k,
                             const RunOptions& options);

// Adds `bidder` to a sorted id vector.
void insert_sorted(std::vector<int>& ids, int id);

}  // namespace detail

}  // namespace onlinematch

#endif  // ONLINEMATCH_MECHANISM_H_
