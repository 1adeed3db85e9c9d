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

#ifndef ONLINEMATCH_MONTECARLO_H_
#define ONLINEMATCH_MONTECARLO_H_

#include <cstdint>
#include <optional>

#include "onlinematch/instance.h"
#include "onlinematch/mechanism.h"
#include "onlinematch/rational.h"

namespace onlinematch {

struct RatioReport {
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  int n = 0;
  int m = 0;
  int k = 0;
  Weight opt = 0;
  double mean_welfare = 0;
  double standard_error = 0;
  // OPT / mean welfare; empty when the mean is zero.
  std::optional<double> ratio;
  // Trials whose welfare reached OPT.
  std::int64_t optimal_runs = 0;
  // (k/n) OPT, the guaranteed fraction at this k.
  Rational floor;
};

struct MonteCarloOptions {
  int threads = 1;
  Variant variant = Variant::kPostedPrices;
};

// Runs the mechanism on `trials` uniformly random arrival orders. Trial i
// draws its order from stream i of `seed`, so the report is independent of
// the thread count.
RatioReport monte_carlo_welfare(const Instance& instance, int k,
                                std::int64_t trials, std::uint64_t seed,
                                const MonteCarloOptions& options = {});

struct SubsetLemmaReport {
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  int bidder_count = 0;
  int item_count = 0;
  Weight opt = 0;
  double mean = 0;
  double standard_error = 0;
  Rational bound;  // c1 c2 OPT
  bool ok = false;
};

// Samples uniform subsets of c1 n bidders and c2 m items and checks that the
// mean optimum is at least c1 c2 OPT, allowing three standard errors.
// Throws InputError unless c1 n and c2 m are integers in range.
SubsetLemmaReport check_subset_opt_lemma(const Instance& instance,
                                         const Rational& c1,
                                         const Rational& c2,
                                         std::int64_t trials,
                                         std::uint64_t seed);

}  // namespace onlinematch

#endif  // ONLINEMATCH_MONTECARLO_H_
