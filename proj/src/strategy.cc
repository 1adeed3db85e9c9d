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

#include "onlinematch/strategy.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "onlinematch/baseline.h"
#include "onlinematch/rng.h"

namespace onlinematch {
namespace {

const PriceVector* prices_at(const std::vector<PriceRecord>& history,
                             int step) {
  for (const PriceRecord& r : history) {
    if (r.step == step) return &r.prices;
  }
  return nullptr;
}

StepResult step_with(Variant variant, const Instance& reports,
                     MechanismState state, BidderId bidder) {
  switch (variant) {
    case Variant::kPartialOptimum:
      return step_algorithm1(reports, std::move(state), bidder);
    case Variant::kPostedPrices:
      return step_algorithm2(reports, std::move(state), bidder);
    case Variant::kAllItemsBaseline:
      return step_baseline(reports, std::move(state), bidder);
  }
  throw std::logic_error("unhandled variant");
}

// In a posted-price run every buyer must hold an item of maximal
// nonnegative utility and every post-sampling non-buyer must have had none
// with positive utility.
bool maximizes_utility(const Instance& instance, const AuctionOutcome& run) {
  for (std::size_t pos = run.sample_size; pos < run.order.size(); ++pos) {
    const BidderId b = run.order[pos];
    const PriceVector* prices = prices_at(run.price_history,
                                          static_cast<int>(pos) + 1);
    if (prices == nullptr) return false;
    Weight best = 0;
    for (const PostedPrice& p : *prices) {
      best = std::max(best, instance.weight(b, p.item) - p.price);
    }
    if (run.utilities[b] != best) return false;
  }
  return true;
}

// Calls fn(row) for every row in {0..max}^m, in odometer order.
template <typename Fn>
void for_each_grid_row(int m, Weight max, Fn&& fn) {
  std::vector<Weight> row(m, 0);
  while (true) {
    fn(row);
    int pos = m - 1;
    while (pos >= 0 && row[pos] == max) row[pos--] = 0;
    if (pos < 0) return;
    ++row[pos];
  }
}

}  // namespace

Weight utility_of(const AuctionOutcome& outcome, BidderId bidder,
                  std::span<const Weight> true_row) {
  if (bidder < 0 || bidder >= static_cast<int>(outcome.assignments.size())) {
    throw InputError("unknown bidder id " + std::to_string(bidder));
  }
  const auto& a = outcome.assignments[bidder];
  if (!a) return 0;
  return true_row[a->item] - a->price;
}

AuctionOutcome run_with_misreport(const Instance& instance,
                                  std::span<const BidderId> order, int k,
                                  const Misreport& misreport,
                                  Variant variant) {
  if (!instance.has_bidder(misreport.bidder)) {
    throw InputError("misreport names unknown bidder " +
                     std::to_string(misreport.bidder));
  }
  Instance reports = instance;
  reports.set_row(misreport.bidder, misreport.reported);
  return detail::run_on_reports(reports, instance, order, k, variant, {});
}

TruthfulnessVerdict test_truthfulness(const Instance& instance, int k,
                                      const TruthfulnessConfig& config,
                                      std::uint64_t seed) {
  const int n = instance.num_bidders();
  const int m = instance.num_items();
  detail::check_run_preconditions(instance, instance.all_bidders(), k, {});
  Weight value_max = config.value_max;
  if (value_max < 0) {
    Weight top = 0;
    for (BidderId b = 0; b < n; ++b) {
      for (Weight w : instance.row(b)) top = std::max(top, w);
    }
    value_max = 2 * top + 1;
  }

  std::vector<std::vector<BidderId>> orders;
  if (n <= kExhaustiveOrderLimit) {
    std::vector<BidderId> p = instance.all_bidders();
    do orders.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  } else {
    for (std::int64_t i = 0; i < config.order_samples; ++i) {
      auto engine = stream_engine(seed, 2 * static_cast<std::uint64_t>(i));
      orders.push_back(random_permutation(n, engine));
    }
  }

  TruthfulnessVerdict verdict;
  Instance reports = instance;
  for (std::size_t oi = 0; oi < orders.size(); ++oi) {
    const auto& order = orders[oi];
    ++verdict.orders;
    RunOptions options;
    options.record_trace = config.resume_at_arrival;
    const AuctionOutcome truthful =
        run_mechanism(instance, order, k, config.variant, options);
    if (config.variant == Variant::kPostedPrices &&
        !maximizes_utility(instance, truthful)) {
      ++verdict.non_maximizing;
    }
    std::vector<int> position(n);
    for (int p = 0; p < n; ++p) position[order[p]] = p;

    auto try_deviation = [&](BidderId bidder,
                             const std::vector<Weight>& row) -> bool {
      ++verdict.deviations;
      const int arrival = position[bidder] + 1;
      Weight gained = 0;
      const PriceVector* truthful_prices =
          prices_at(truthful.price_history, arrival);
      const PriceVector* deviating_prices = nullptr;
      AuctionOutcome deviating;
      StepResult step;
      if (config.resume_at_arrival) {
        reports.set_row(bidder, row);
        step = step_with(config.variant, reports,
                         truthful.trace[arrival - 1], bidder);
        reports.set_row(bidder, instance.row(bidder));
        if (step.item) gained = instance.weight(bidder, *step.item) - step.price;
        deviating_prices = prices_at(step.state.price_history, arrival);
      } else {
        deviating =
            run_with_misreport(instance, order, k, {bidder, row}, config.variant);
        gained = utility_of(deviating, bidder, instance.row(bidder));
        deviating_prices = prices_at(deviating.price_history, arrival);
      }
      if ((truthful_prices == nullptr) != (deviating_prices == nullptr) ||
          (truthful_prices && *truthful_prices != *deviating_prices)) {
        ++verdict.price_changes;
      }
      if (gained > truthful.utilities[bidder]) {
        verdict.counterexample = Manipulation{
            instance, order,  k, config.variant, {bidder, row},
            truthful.utilities[bidder], gained};
        return false;
      }
      return true;
    };

    if (config.grid_max) {
      for (BidderId b : order) {
        bool keep_going = true;
        for_each_grid_row(m, *config.grid_max,
                          [&](const std::vector<Weight>& row) {
                            if (keep_going) keep_going = try_deviation(b, row);
                          });
        if (!keep_going) return verdict;
      }
    } else {
      auto engine = stream_engine(seed, 2 * static_cast<std::uint64_t>(oi) + 1);
      std::uniform_int_distribution<BidderId> pick_bidder(0, n - 1);
      std::uniform_int_distribution<Weight> pick_value(0, value_max);
      for (std::int64_t r = 0; r < config.misreports_per_order; ++r) {
        const BidderId b = pick_bidder(engine);
        std::vector<Weight> row(m);
        for (Weight& w : row) w = pick_value(engine);
        if (!try_deviation(b, row)) return verdict;
      }
    }
  }
  return verdict;
}

SearchResult search_manipulation(Variant variant, std::uint64_t seed,
                                 const SearchBudget& budget) {
  SearchResult result;
  for (std::int64_t i = 0; i < budget.instances; ++i) {
    auto engine = stream_engine(seed, static_cast<std::uint64_t>(i));
    const int n = std::uniform_int_distribution<int>(4, 7)(engine);
    const int m = std::uniform_int_distribution<int>(2, 3)(engine);
    std::uniform_int_distribution<Weight> value(0, 9);
    Instance instance(n, m);
    for (BidderId b = 0; b < n; ++b) {
      for (ItemId j = 0; j < m; ++j) instance.set_weight(b, j, value(engine));
    }
    const int k = std::max(m, choose_k(n));

    for (std::int64_t o = 0; o < budget.orders_per_instance; ++o) {
      const auto order = random_permutation(n, engine);
      RunOptions quiet;
      quiet.record_trace = false;
      const AuctionOutcome truthful =
          run_mechanism(instance, order, k, variant, quiet);
      for (int pos = k; pos < n; ++pos) {
        const BidderId b = order[pos];
        const auto truth = instance.row(b);
        std::vector<std::vector<Weight>> rows;
        for (ItemId j = 0; j < m; ++j) {
          if (truth[j] == 0) continue;
          std::vector<Weight> row(truth.begin(), truth.end());
          row[j] = 0;
          rows.push_back(std::move(row));
        }
        for (std::int64_t r = 0; r < budget.random_misreports; ++r) {
          std::vector<Weight> row(m);
          for (Weight& w : row) w = value(engine);
          rows.push_back(std::move(row));
        }
        for (const auto& row : rows) {
          ++result.deviations_tried;
          const AuctionOutcome deviating =
              run_with_misreport(instance, order, k, {b, row}, variant);
          const Weight gained = utility_of(deviating, b, truth);
          if (gained > truthful.utilities[b]) {
            result.witness = Manipulation{instance, order, k, variant,
                                          {b, row}, truthful.utilities[b],
                                          gained};
            return result;
          }
        }
      }
    }
  }
  return result;
}

SearchResult demonstrate_baseline_manipulable(std::uint64_t seed,
                                              const SearchBudget& budget) {
  return search_manipulation(Variant::kAllItemsBaseline, seed, budget);
}

bool replay(const Manipulation& witness) {
  const BidderId b = witness.misreport.bidder;
  const auto truth = witness.instance.row(b);
  const AuctionOutcome truthful = run_mechanism(
      witness.instance, witness.order, witness.k, witness.variant);
  const AuctionOutcome deviating =
      run_with_misreport(witness.instance, witness.order, witness.k,
                         witness.misreport, witness.variant);
  return utility_of(truthful, b, truth) == witness.truthful_utility &&
         utility_of(deviating, b, truth) == witness.misreport_utility &&
         witness.misreport_utility > witness.truthful_utility;
}

}  // namespace onlinematch
