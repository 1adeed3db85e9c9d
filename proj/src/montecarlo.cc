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

#include "onlinematch/montecarlo.h"

#include <cmath>
#include <string>
#include <vector>

#include "onlinematch/matching.h"
#include "onlinematch/parallel.h"
#include "onlinematch/rng.h"

namespace onlinematch {
namespace {

struct Moments {
  double mean = 0;
  double standard_error = 0;
};

Moments moments(const std::vector<Weight>& samples) {
  Moments out;
  const double count = static_cast<double>(samples.size());
  if (samples.empty()) return out;
  double sum = 0;
  for (Weight w : samples) sum += static_cast<double>(w);
  out.mean = sum / count;
  if (samples.size() > 1) {
    double ss = 0;
    for (Weight w : samples) {
      const double d = static_cast<double>(w) - out.mean;
      ss += d * d;
    }
    out.standard_error = std::sqrt(ss / (count - 1) / count);
  }
  return out;
}

int exact_size(const Rational& fraction, int total, const char* what) {
  if (fraction < 0 || fraction > 1) {
    throw InputError(std::string(what) + " fraction must lie in [0, 1]");
  }
  const Rational size = fraction * total;
  if (boost::multiprecision::denominator(size) != 1) {
    throw InputError(std::string(what) + " fraction times " +
                     std::to_string(total) + " is not an integer");
  }
  return static_cast<int>(boost::multiprecision::numerator(size));
}

}  // namespace

RatioReport monte_carlo_welfare(const Instance& instance, int k,
                                std::int64_t trials, std::uint64_t seed,
                                const MonteCarloOptions& options) {
  if (trials < 1) throw InputError("at least one trial is required");
  RatioReport report;
  report.seed = seed;
  report.trials = trials;
  report.n = instance.num_bidders();
  report.m = instance.num_items();
  report.k = k;
  report.opt = opt_value(instance, instance.all_bidders(), instance.all_items());
  report.floor = Rational(k, report.n) * report.opt;
  detail::check_run_preconditions(instance, instance.all_bidders(), k, {});

  std::vector<Weight> welfare(trials);
  RunOptions run_options;
  run_options.record_trace = false;
  parallel_chunks(trials, options.threads,
                  [&](int, std::int64_t begin, std::int64_t end) {
                    for (auto i = begin; i < end; ++i) {
                      auto engine = stream_engine(seed, i);
                      const auto order =
                          random_permutation(report.n, engine);
                      welfare[i] = run_mechanism(instance, order, k,
                                                 options.variant, run_options)
                                       .welfare;
                    }
                  });
  const Moments mo = moments(welfare);
  report.mean_welfare = mo.mean;
  report.standard_error = mo.standard_error;
  if (mo.mean > 0) report.ratio = static_cast<double>(report.opt) / mo.mean;
  for (Weight w : welfare) report.optimal_runs += (w == report.opt);
  return report;
}

SubsetLemmaReport check_subset_opt_lemma(const Instance& instance,
                                         const Rational& c1,
                                         const Rational& c2,
                                         std::int64_t trials,
                                         std::uint64_t seed) {
  if (trials < 1) throw InputError("at least one trial is required");
  SubsetLemmaReport report;
  report.seed = seed;
  report.trials = trials;
  report.bidder_count = exact_size(c1, instance.num_bidders(), "bidder");
  report.item_count = exact_size(c2, instance.num_items(), "item");
  report.opt = opt_value(instance, instance.all_bidders(), instance.all_items());
  report.bound = c1 * c2 * report.opt;

  std::vector<Weight> values(trials);
  for (std::int64_t i = 0; i < trials; ++i) {
    auto engine = stream_engine(seed, i);
    const auto bidders =
        random_subset(instance.num_bidders(), report.bidder_count, engine);
    const auto items =
        random_subset(instance.num_items(), report.item_count, engine);
    values[i] = detail::assignment_value(instance, bidders, items);
  }
  const Moments mo = moments(values);
  report.mean = mo.mean;
  report.standard_error = mo.standard_error;
  report.ok = report.mean >= to_double(report.bound) - 3 * mo.standard_error;
  return report;
}

}  // namespace onlinematch
