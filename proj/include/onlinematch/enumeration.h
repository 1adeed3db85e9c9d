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

#ifndef ONLINEMATCH_ENUMERATION_H_
#define ONLINEMATCH_ENUMERATION_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "onlinematch/instance.h"
#include "onlinematch/rational.h"

namespace onlinematch {

// Exhaustive enumeration covers every arrival order, so it is capped.
inline constexpr int kEnumerationLimit = 8;

using Multiplicity = std::uint64_t;

// Mechanism state (arrived bidders, unsold items) as two bitmasks.
struct StateKey {
  std::uint32_t bidders = 0;
  std::uint32_t items = 0;
  friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

int popcount(std::uint32_t mask);
std::vector<int> mask_ids(std::uint32_t mask);
std::string to_string(const StateKey& key);

// Multiplicity of every state reached over all n! arrival orders. Row t lists
// the states after step t (t = 0..n); every row sums to n!.
struct StateTable {
  int num_bidders = 0;
  int num_items = 0;
  int sample_size = 0;
  Multiplicity num_orders = 0;
  std::vector<std::map<StateKey, Multiplicity>> rows;
  // Welfare summed over all orders.
  Weight total_welfare = 0;

  Multiplicity multiplicity(int t, const StateKey& key) const;
};

struct EnumerationOptions {
  int threads = 1;
  bool allow_undersampling = false;
};

// Runs the partial-optimum rule on every arrival order and counts states.
// Throws SizeLimitError for n > kEnumerationLimit.
StateTable enumerate_state_table(const Instance& instance, int k,
                                 const EnumerationOptions& options = {});

// Verdict for one class S(t, s) of states with t arrived bidders and s
// unsold items.
struct ClassVerdict {
  enum class Failure { kNone, kUnequal, kUnreached };
  int t = 0;
  int s = 0;
  Multiplicity common = 0;
  std::uint64_t reachable = 0;
  std::uint64_t class_size = 0;
  Failure failure = Failure::kNone;
  // Witnesses: for kUnequal two reachable states with different counts; for
  // kUnreached a reachable state and a state of the class that never occurs.
  std::optional<StateKey> first, second;
  Multiplicity first_count = 0, second_count = 0;

  bool ok() const { return failure == Failure::kNone; }
};

struct IndependencyReport {
  std::vector<ClassVerdict> classes;
  bool ok() const;
  // mul(t, s), or 0 for a class with no reachable state.
  Multiplicity class_multiplicity(int t, int s) const;
};

// Every class with a reachable state must have all of its C(n,t) C(m,s)
// states reached, each exactly equally often.
IndependencyReport check_independency(const StateTable& table);

struct RecurrenceCheck {
  int t = 0;
  int s = 0;
  StateKey state;
  std::size_t stay_predecessors = 0;  // arriving bidder bought nothing
  std::size_t sale_predecessors = 0;  // arriving bidder bought an item
  Multiplicity multiplicity = 0;
  // (n-t+1) mul(S) against the summed multiplicities of the reconstructed
  // predecessors.
  Multiplicity scaled_multiplicity = 0;
  Multiplicity predecessor_sum = 0;
  // Class form: (t-s)/(n-t+1) mul(t-1,s) + (m-s)/(n-t+1) mul(t-1,s+1).
  Rational class_form;
  bool counts_ok = false;
  bool sum_ok = false;
  bool class_form_ok = false;
  bool ok() const { return counts_ok && sum_ok && class_form_ok; }
};

struct RecurrenceReport {
  std::size_t states_checked = 0;
  std::vector<RecurrenceCheck> failures;
  bool ok() const { return failures.empty(); }
};

// For every reachable state after the sampling phase, rebuilds both kinds of
// predecessor from canonical optima, checks their counts t-s and m-s, and
// checks the multiplicity recurrence exactly.
RecurrenceReport check_multiplicity_recurrence(const StateTable& table,
                                               const Instance& instance,
                                               int k);

struct AvailabilityResult {
  Rational probability;
  // True when t <= k: nothing is sold yet and the probability is 1.
  bool sampling_phase = false;
};

// Fraction of orders in which `item` is unsold after step t.
AvailabilityResult availability_probability(const StateTable& table,
                                            ItemId item, int t);

// Mean number of unsold items after step t over all orders.
Rational expected_available(const StateTable& table, int t);

// Mean number of items sold in step t.
Rational expected_sold_at(const StateTable& table, int t);

Rational expected_welfare(const StateTable& table);

// (k/n) * OPT * sum_{t=k}^{n-1} 1/t.
Rational welfare_floor(int n, int k, Weight opt);

struct AvailabilityCheck {
  int t = 0;
  ItemId item = -1;  // -1 for the aggregate rows
  std::string quantity;
  Rational observed;
  Rational expected;
  bool ok() const { return observed == expected; }
};

struct AvailabilityReport {
  std::vector<AvailabilityCheck> checks;
  bool ok() const;
};

// For every t in (k, n] and every item: Pr[unsold] = k/t, E[s_t] = m k / t,
// and E[sold at t] = E[s_{t-1}] / t.
AvailabilityReport check_availability(const StateTable& table);

}  // namespace onlinematch

#endif  // ONLINEMATCH_ENUMERATION_H_
