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

#ifndef ONLINEMATCH_BASELINE_H_
#define ONLINEMATCH_BASELINE_H_

#include <span>

#include "onlinematch/instance.h"
#include "onlinematch/mechanism.h"

namespace onlinematch {

// Externality prices over all items, sold or not, computed from the bidders
// that arrived before the next step. Throws ContractError in the sampling
// phase.
PriceVector all_items_prices(const Instance& instance,
                             const MechanismState& state);

// One step of the all-items comparison rule: the canonical optimum is taken
// over arrived bidders and ALL items, and the arriving bidder receives its
// item there only if that item is still unsold. The buyer pays the all-items
// externality price of that item. A bidder whose item is already gone gets
// nothing even when other items are free, which is what makes the rule
// manipulable.
StepResult step_baseline(const Instance& instance, MechanismState state,
                         BidderId arriving);

AuctionOutcome baseline_all_items(const Instance& instance,
                                  std::span<const BidderId> order, int k,
                                  const RunOptions& options = {});

}  // namespace onlinematch

#endif  // ONLINEMATCH_BASELINE_H_
