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

#include "onlinematch/mechanism.h"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "onlinematch/baseline.h"
#include "onlinematch/matching.h"

namespace onlinematch {
namespace {

using boost::multiprecision::cpp_int;

// Bracket e between two rationals lo/den and hi/den using the partial sums of
// sum 1/i! and the tail bound sum_{i>N} 1/i! < 1/(N! N).
struct EBounds {
  cpp_int lo_num, hi_num, den;
};

EBounds e_bounds(int terms) {
  cpp_int factorial = 1;
  for (int i = 2; i <= terms; ++i) factorial *= i;
  // den = N! * N; lo = sum_{i<=N} den / i!
  EBounds b;
  b.den = factorial * terms;
  cpp_int term = b.den;  // den / 0!
  b.lo_num = 0;
  for (int i = 0; i <= terms; ++i) {
    if (i > 0) term /= i;
    b.lo_num += term;
  }
  b.hi_num = b.lo_num + 1;
  return b;
}

}  // namespace

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kPartialOptimum:
      return "alg1";
    case Variant::kPostedPrices:
      return "alg2";
    case Variant::kAllItemsBaseline:
      return "baseline";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  if (name == "alg1") return Variant::kPartialOptimum;
  if (name == "alg2") return Variant::kPostedPrices;
  if (name == "baseline") return Variant::kAllItemsBaseline;
  throw InputError("unknown variant '" + std::string(name) +
                   "' (expected alg1, alg2 or baseline)");
}

int choose_k(int n) {
  if (n < 1) throw InputError("choose_k needs at least one bidder");
  // n/e is irrational, so the floor is settled once both bounds agree.
  for (int terms = 24;; terms += 8) {
    static thread_local int cached_terms = 0;
    static thread_local EBounds cached;
    if (cached_terms != terms) {
      cached = e_bounds(terms);
      cached_terms = terms;
    }
    const cpp_int scaled = cpp_int(n) * cached.den;
    const cpp_int lo = scaled / cached.hi_num;
    const cpp_int hi = scaled / cached.lo_num;
    if (lo == hi) return static_cast<int>(lo);
  }
}

Instance pad_instance(const Instance& instance, int k) {
  int n = std::max(instance.num_bidders(), 1);
  while (choose_k(n) < k) ++n;
  if (n <= instance.num_bidders()) return instance;
  Instance padded(n, instance.num_items());
  for (int i = 0; i < instance.num_bidders(); ++i) {
    padded.set_row(i, instance.row(i));
  }
  return padded;
}

std::optional<Weight> price_of(const PriceVector& prices, ItemId item) {
  for (const PostedPrice& p : prices) {
    if (p.item == item) return p.price;
  }
  return std::nullopt;
}

MechanismState MechanismState::initial(const Instance& instance,
                                       int sample_size) {
  MechanismState s;
  s.sample_size = sample_size;
  s.unassigned = instance.all_items();
  return s;
}

PriceVector posted_prices(const Instance& instance,
                          const MechanismState& state) {
  if (state.step < state.sample_size) {
    throw ContractError("prices are undefined during the sampling phase (step " +
                        std::to_string(state.step + 1) + " <= k = " +
                        std::to_string(state.sample_size) + ")");
  }
  PriceVector prices;
  prices.reserve(state.unassigned.size());
  const Weight full =
      detail::assignment_value(instance, state.arrived, state.unassigned);
  std::vector<ItemId> without;
  for (std::size_t x = 0; x < state.unassigned.size(); ++x) {
    without.assign(state.unassigned.begin(), state.unassigned.end());
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(x));
    const Weight rest =
        detail::assignment_value(instance, state.arrived, without);
    prices.push_back({state.unassigned[x], full - rest});
  }
  return prices;
}

namespace detail {

void insert_sorted(std::vector<int>& ids, int id) {
  ids.insert(std::upper_bound(ids.begin(), ids.end(), id), id);
}

}  // namespace detail

namespace {

void check_arrival(const Instance& instance, const MechanismState& state,
                   BidderId arriving) {
  if (!instance.has_bidder(arriving)) {
    throw InputError("unknown bidder id " + std::to_string(arriving));
  }
  if (std::binary_search(state.arrived.begin(), state.arrived.end(),
                         arriving)) {
    throw ContractError("bidder " + std::to_string(arriving) +
                        " has already arrived");
  }
}

void commit(MechanismState& state, BidderId bidder, ItemId item) {
  state.unassigned.erase(
      std::find(state.unassigned.begin(), state.unassigned.end(), item));
  auto& pairs = state.matching.pairs;
  pairs.insert(std::upper_bound(pairs.begin(), pairs.end(), Edge{bidder, item}),
               Edge{bidder, item});
}

}  // namespace

StepResult step_algorithm1(const Instance& instance, MechanismState state,
                           BidderId arriving) {
  check_arrival(instance, state, arriving);
  const bool sampling = state.in_sampling_phase();
  ++state.step;
  detail::insert_sorted(state.arrived, arriving);
  StepResult result;
  if (!sampling && !state.unassigned.empty()) {
    const Matching partial = detail::canonical_matching_sorted(
        instance, state.arrived, state.unassigned);
    const ItemId item = partial.item_of(arriving);
    if (item >= 0) {
      commit(state, arriving, item);
      state.matching.weight += instance.weight(arriving, item);
      result.item = item;
    }
  }
  result.state = std::move(state);
  return result;
}

StepResult step_algorithm2(const Instance& instance, MechanismState state,
                           BidderId arriving) {
  check_arrival(instance, state, arriving);
  StepResult result;
  if (state.in_sampling_phase()) {
    ++state.step;
    detail::insert_sorted(state.arrived, arriving);
    result.state = std::move(state);
    return result;
  }
  PriceVector prices = posted_prices(instance, state);
  ++state.step;
  detail::insert_sorted(state.arrived, arriving);

  // Bids are read only from here on.
  Weight best = 0;
  for (const PostedPrice& p : prices) {
    best = std::max(best, instance.weight(arriving, p.item) - p.price);
  }
  std::vector<ItemId> candidates;
  for (const PostedPrice& p : prices) {
    if (instance.weight(arriving, p.item) - p.price == best) {
      candidates.push_back(p.item);
    }
  }
  const bool may_abstain = best == 0;
  std::optional<ItemId> choice;
  if (candidates.size() == 1 && !may_abstain) {
    choice = candidates.front();
  } else if (!candidates.empty()) {
    // Tie: defer to the canonical partial optimum, which realizes one of the
    // tied choices.
    const Matching partial = detail::canonical_matching_sorted(
        instance, state.arrived, state.unassigned);
    const ItemId item = partial.item_of(arriving);
    if (item >= 0) {
      if (std::find(candidates.begin(), candidates.end(), item) ==
          candidates.end()) {
        throw std::logic_error("partial optimum disagrees with posted prices");
      }
      choice = item;
    } else if (!may_abstain) {
      throw std::logic_error("partial optimum disagrees with posted prices");
    }
  }
  if (choice) {
    const Weight price = *price_of(prices, *choice);
    commit(state, arriving, *choice);
    state.matching.weight += instance.weight(arriving, *choice);
    result.item = choice;
    result.price = price;
  }
  state.price_history.push_back({state.step, std::move(prices)});
  result.state = std::move(state);
  return result;
}

void validate_order(const Instance& instance, std::span<const BidderId> order) {
  if (static_cast<int>(order.size()) != instance.num_bidders()) {
    throw InputError("arrival order has " + std::to_string(order.size()) +
                     " entries, expected " +
                     std::to_string(instance.num_bidders()));
  }
  validate_ids(order, instance.num_bidders(), "bidder");
}

namespace detail {

void check_run_preconditions(const Instance& instance,
                             std::span<const BidderId> order, int k,
                             const RunOptions& options) {
  validate_order(instance, order);
  if (k < 0 || k >= instance.num_bidders()) {
    throw InputError("sampling length k = " + std::to_string(k) +
                     " must satisfy 0 <= k < n = " +
                     std::to_string(instance.num_bidders()));
  }
  if (k < instance.num_items() && !options.allow_undersampling) {
    throw InputError("sampling length k = " + std::to_string(k) +
                     " is below the item count m = " +
                     std::to_string(instance.num_items()) +
                     "; the analysis assumes k >= m (pad the instance with "
                     "dummy bidders or force the run)");
  }
}

AuctionOutcome run_on_reports(const Instance& reports,
                              const Instance& valuations,
                              std::span<const BidderId> order, int k,
                              Variant variant, const RunOptions& options) {
  check_run_preconditions(reports, order, k, options);
  if (reports.num_bidders() != valuations.num_bidders() ||
      reports.num_items() != valuations.num_items()) {
    throw InputError("report and valuation matrices differ in shape");
  }
  const int n = reports.num_bidders();
  AuctionOutcome out;
  out.variant = variant;
  out.sample_size = k;
  out.order.assign(order.begin(), order.end());
  out.assignments.assign(n, std::nullopt);
  out.utilities.assign(n, 0);

  MechanismState state = MechanismState::initial(reports, k);
  if (options.record_trace) {
    out.trace.reserve(n + 1);
    out.trace.push_back(state);
  }
  for (BidderId bidder : order) {
    StepResult r;
    switch (variant) {
      case Variant::kPartialOptimum:
        r = step_algorithm1(reports, std::move(state), bidder);
        break;
      case Variant::kPostedPrices:
        r = step_algorithm2(reports, std::move(state), bidder);
        break;
      case Variant::kAllItemsBaseline:
        r = step_baseline(reports, std::move(state), bidder);
        break;
    }
    state = std::move(r.state);
    if (r.item) {
      out.assignments[bidder] = Assignment{*r.item, r.price, state.step};
      out.utilities[bidder] = valuations.weight(bidder, *r.item) - r.price;
    }
    if (options.record_trace) out.trace.push_back(state);
  }
  out.matching.pairs = state.matching.pairs;
  for (const Edge& e : out.matching.pairs) {
    out.matching.weight += valuations.weight(e.bidder, e.item);
  }
  out.welfare = out.matching.weight;
  out.price_history = std::move(state.price_history);
  return out;
}

}  // namespace detail

AuctionOutcome run_mechanism(const Instance& instance,
                             std::span<const BidderId> order, int k,
                             Variant variant, const RunOptions& options) {
  return detail::run_on_reports(instance, instance, order, k, variant,
                                options);
}

}  // namespace onlinematch
