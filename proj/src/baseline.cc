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

#include "onlinematch/baseline.h"

#include <algorithm>
#include <string>

#include "onlinematch/matching.h"

namespace onlinematch {

PriceVector all_items_prices(const Instance& instance,
                             const MechanismState& state) {
  if (state.step < state.sample_size) {
    throw ContractError("prices are undefined during the sampling phase");
  }
  const std::vector<ItemId> items = instance.all_items();
  const Weight full = detail::assignment_value(instance, state.arrived, items);
  PriceVector prices;
  std::vector<ItemId> without;
  for (ItemId j : items) {
    without = items;
    without.erase(without.begin() + j);
    prices.push_back(
        {j, full - detail::assignment_value(instance, state.arrived, without)});
  }
  return prices;
}

StepResult step_baseline(const Instance& instance, MechanismState state,
                         BidderId arriving) {
  if (!instance.has_bidder(arriving)) {
    throw InputError("unknown bidder id " + std::to_string(arriving));
  }
  if (std::binary_search(state.arrived.begin(), state.arrived.end(),
                         arriving)) {
    throw ContractError("bidder " + std::to_string(arriving) +
                        " has already arrived");
  }
  StepResult result;
  if (state.in_sampling_phase()) {
    ++state.step;
    detail::insert_sorted(state.arrived, arriving);
    result.state = std::move(state);
    return result;
  }
  PriceVector prices = all_items_prices(instance, state);
  ++state.step;
  detail::insert_sorted(state.arrived, arriving);
  const Matching partial = detail::canonical_matching_sorted(
      instance, state.arrived, instance.all_items());
  const ItemId item = partial.item_of(arriving);
  const auto it =
      std::find(state.unassigned.begin(), state.unassigned.end(), item);
  if (item >= 0 && it != state.unassigned.end()) {
    state.unassigned.erase(it);
    auto& pairs = state.matching.pairs;
    pairs.insert(
        std::upper_bound(pairs.begin(), pairs.end(), Edge{arriving, item}),
        Edge{arriving, item});
    state.matching.weight += instance.weight(arriving, item);
    result.item = item;
    result.price = *price_of(prices, item);
  }
  state.price_history.push_back({state.step, std::move(prices)});
  result.state = std::move(state);
  return result;
}

AuctionOutcome baseline_all_items(const Instance& instance,
                                  std::span<const BidderId> order, int k,
                                  const RunOptions& options) {
  return run_mechanism(instance, order, k, Variant::kAllItemsBaseline,
                       options);
}

}  // namespace onlinematch
