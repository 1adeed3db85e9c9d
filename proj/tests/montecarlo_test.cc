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

#include <cmath>
#include <random>

#include "doctest.h"
#include "onlinematch/matching.h"
#include "onlinematch/mechanism.h"
#include "onlinematch/montecarlo.h"
#include "test_util.h"

namespace onlinematch {
namespace {

using testing::random_instance;
using testing::subsets_of_size;

TEST_CASE("all-zero instance has no ratio") {
  const Instance zeros(10, 2);
  const RatioReport r = monte_carlo_welfare(zeros, 3, 200, 1);
  CHECK(r.mean_welfare == 0);
  CHECK(r.opt == 0);
  CHECK_FALSE(r.ratio);
  CHECK(r.optimal_runs == 200);
}

TEST_CASE("single item reduces to the classical secretary rule") {
  // Distinct values: success means hiring the best bidder, which happens
  // with probability (k/n) * sum_{t=k}^{n-1} 1/t.
  const int n = 30, k = 11;
  Instance inst(n, 1);
  for (int b = 0; b < n; ++b) inst.set_weight(b, 0, (b * 7) % n + 1);
  const RatioReport r = monte_carlo_welfare(inst, k, 20000, 3);
  double exact = 0;
  for (int t = k; t < n; ++t) exact += 1.0 / t;
  exact *= static_cast<double>(k) / n;
  const double rate = static_cast<double>(r.optimal_runs) / r.trials;
  const double se = std::sqrt(exact * (1 - exact) / r.trials);
  CHECK(std::abs(rate - exact) <= 4 * se);
  CHECK(rate >= std::log(static_cast<double>(n) / k) * k / n - 3 * se);
}

TEST_CASE("report fields and thread independence") {
  std::mt19937_64 rng(21);
  const Instance inst = random_instance(rng, 20, 3, 30);
  const RatioReport one = monte_carlo_welfare(inst, 7, 3000, 77);
  MonteCarloOptions four;
  four.threads = 4;
  const RatioReport many = monte_carlo_welfare(inst, 7, 3000, 77, four);
  CHECK(one.mean_welfare == many.mean_welfare);
  CHECK(one.standard_error == many.standard_error);
  CHECK(one.optimal_runs == many.optimal_runs);
  CHECK(one.opt == opt_value(inst, inst.all_bidders(), inst.all_items()));
  CHECK(one.floor == Rational(7 * one.opt, 20));
  REQUIRE(one.ratio);
  CHECK(*one.ratio == doctest::Approx(one.opt / one.mean_welfare));
  CHECK(monte_carlo_welfare(inst, 7, 3000, 78).mean_welfare != one.mean_welfare);
}

TEST_CASE("subset lemma edge cases") {
  std::mt19937_64 rng(22);
  const Instance inst = random_instance(rng, 6, 3, 10);
  const Weight opt = opt_value(inst, inst.all_bidders(), inst.all_items());
  const SubsetLemmaReport full =
      check_subset_opt_lemma(inst, Rational(1), Rational(1), 50, 2);
  CHECK(full.mean == opt);
  CHECK(full.ok);
  const SubsetLemmaReport none =
      check_subset_opt_lemma(inst, Rational(1), Rational(0), 50, 2);
  CHECK(none.mean == 0);
  CHECK(none.ok);
  CHECK_THROWS_AS(check_subset_opt_lemma(inst, Rational(1, 4), Rational(1), 5, 2),
                  InputError);
}

TEST_CASE("subset lemma: exact subset average against sampling") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const Instance inst = random_instance(rng, 6, 3, 20);
    const Weight opt = opt_value(inst, inst.all_bidders(), inst.all_items());
    // Exact average over all 3-bidder, 2-item subsets.
    Rational sum = 0;
    int count = 0;
    for (const auto& bidders : subsets_of_size(6, 3)) {
      for (const auto& items : subsets_of_size(3, 2)) {
        sum += opt_value(inst, bidders, items);
        ++count;
      }
    }
    const Rational exact = sum / count;
    CHECK(exact >= Rational(opt, 3));
    const SubsetLemmaReport r = check_subset_opt_lemma(
        inst, Rational(1, 2), Rational(2, 3), 20000, trial);
    CHECK(r.ok);
    CHECK(r.bound == Rational(opt, 3));
    CHECK(std::abs(r.mean - to_double(exact)) <= 4 * r.standard_error + 1e-12);
  }
}

}  // namespace
}  // namespace onlinematch
