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

#include <map>
#include <random>

#include "doctest.h"
#include "onlinematch/enumeration.h"
#include "onlinematch/matching.h"
#include "onlinematch/mechanism.h"
#include "onlinematch/montecarlo.h"
#include "test_util.h"

namespace onlinematch {
namespace {

using testing::all_orders;
using testing::random_instance;

Multiplicity factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Literal table: one full run per order, one entry per (step, order).
std::vector<std::map<StateKey, Multiplicity>> literal_table(
    const Instance& inst, int k, Weight* welfare_sum) {
  std::vector<std::map<StateKey, Multiplicity>> rows(inst.num_bidders() + 1);
  *welfare_sum = 0;
  for (const auto& order : all_orders(inst.num_bidders())) {
    const AuctionOutcome out =
        run_mechanism(inst, order, k, Variant::kPartialOptimum);
    for (const MechanismState& s : out.trace) {
      StateKey key;
      for (BidderId b : s.arrived) key.bidders |= 1u << b;
      for (ItemId j : s.unassigned) key.items |= 1u << j;
      ++rows[s.step][key];
    }
    *welfare_sum += out.welfare;
  }
  return rows;
}

TEST_CASE("prefix-tree enumeration equals one run per order") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 5;
    const int m = 1 + trial % 2;
    const int k = m + trial % 3;
    const Instance inst = random_instance(rng, n, m, trial < 3 ? 2 : 40);
    Weight welfare = 0;
    const auto literal = literal_table(inst, k, &welfare);
    EnumerationOptions threaded;
    threaded.threads = 3;
    const StateTable table = enumerate_state_table(inst, k, threaded);
    CHECK(table.rows == literal);
    CHECK(table.total_welfare == welfare);
    CHECK(enumerate_state_table(inst, k).rows == table.rows);
  }
}

TEST_CASE("rows sum to n! and sampling rows are uniform over subsets") {
  std::mt19937_64 rng(3);
  const Instance inst = random_instance(rng, 6, 2, 9);
  const int k = 3;
  const StateTable table = enumerate_state_table(inst, k);
  CHECK(table.num_orders == 720);
  for (int t = 0; t <= 6; ++t) {
    Multiplicity total = 0;
    for (const auto& [key, count] : table.rows[t]) total += count;
    CHECK(total == 720);
  }
  for (int t = 0; t <= k; ++t) {
    for (const auto& [key, count] : table.rows[t]) {
      CHECK(key.items == 0b11u);
      CHECK(count == factorial(t) * factorial(6 - t));
    }
  }
}

TEST_CASE("four bidders, one item, k = 1") {
  const Instance inst({{1}, {2}, {3}, {4}});
  const StateTable table = enumerate_state_table(inst, 1);
  Multiplicity total = 0;
  for (const auto& [key, count] : table.rows[2]) total += count;
  CHECK(total == 24);
  // The second arrival buys iff it beats the first: half of all orders.
  const IndependencyReport report = check_independency(table);
  CHECK(report.ok());
  CHECK(report.class_multiplicity(2, 1) == 2);
  CHECK(report.class_multiplicity(2, 0) == 2);
  CHECK(check_multiplicity_recurrence(table, inst, 1).ok());
}

TEST_CASE("independency and recurrence hold on random complete instances") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 5 + trial % 2;
    const int m = 1 + trial % 2;
    const Instance inst = random_instance(rng, n, m, trial % 4 == 0 ? 1 : 25);
    for (int k = m; k <= n - 2; ++k) {
      const StateTable table = enumerate_state_table(inst, k);
      const IndependencyReport ind = check_independency(table);
      CHECK(ind.ok());
      const RecurrenceReport rec = check_multiplicity_recurrence(table, inst, k);
      CHECK(rec.ok());
      CHECK(rec.states_checked > 0);
      for (const ClassVerdict& c : ind.classes) {
        if (c.t <= k) CHECK(c.s == m);
      }
    }
  }
}

TEST_CASE("first post-sampling step only has sale predecessors from S(k,m)") {
  std::mt19937_64 rng(8);
  const Instance inst = random_instance(rng, 5, 2, 20);
  const int k = 2;
  const StateTable table = enumerate_state_table(inst, k);
  const IndependencyReport ind = check_independency(table);
  const Multiplicity sampled = ind.class_multiplicity(k, 2);
  CHECK(ind.class_multiplicity(k + 1, 1) * (5 - k) == sampled * 1);
  CHECK(ind.class_multiplicity(k + 1, 2) * (5 - k) == sampled * (k + 1 - 2));
}

TEST_CASE("undersampled runs can break independency") {
  const Instance inst({{0, 2, 2}, {2, 0, 1}, {0, 1, 0},
                       {0, 0, 3}, {1, 3, 0}, {1, 1, 2}});
  EnumerationOptions forced;
  forced.allow_undersampling = true;
  const StateTable table = enumerate_state_table(inst, 1, forced);
  CHECK_FALSE(check_independency(table).ok());
  CHECK_THROWS_AS(enumerate_state_table(inst, 1), InputError);
}

TEST_CASE("independency report names witnesses") {
  StateTable fake;
  fake.num_bidders = 2;
  fake.num_items = 1;
  fake.num_orders = 2;
  fake.rows.resize(3);
  fake.rows[1][{0b01, 0b1}] = 2;
  fake.rows[1][{0b10, 0b1}] = 0 + 1;
  const IndependencyReport r = check_independency(fake);
  REQUIRE_FALSE(r.ok());
  CHECK(r.classes[0].failure == ClassVerdict::Failure::kUnequal);

  StateTable missing = fake;
  missing.rows[1].erase({0b10, 0b1});
  missing.rows[1][{0b01, 0b1}] = 2;
  const IndependencyReport r2 = check_independency(missing);
  REQUIRE_FALSE(r2.ok());
  CHECK(r2.classes[0].failure == ClassVerdict::Failure::kUnreached);
  CHECK(r2.classes[0].second == StateKey{0b10, 0b1});
}

TEST_CASE("enumeration guard") {
  Instance big(9, 1);
  CHECK_THROWS_AS(enumerate_state_table(big, 3), SizeLimitError);
}

TEST_CASE("availability probabilities") {
  const Instance single({{3}, {1}, {4}, {2}});
  const StateTable t1 = enumerate_state_table(single, 2);
  CHECK(availability_probability(t1, 0, 3).probability == Rational(2, 3));
  CHECK(availability_probability(t1, 0, 4).probability == Rational(2, 4));
  const AvailabilityResult sampling = availability_probability(t1, 0, 2);
  CHECK(sampling.sampling_phase);
  CHECK(sampling.probability == 1);

  std::mt19937_64 rng(42);
  const Instance two = random_instance(rng, 4, 2, 10);
  const StateTable t2 = enumerate_state_table(two, 2);
  CHECK(expected_available(t2, 4) == 1);
  CHECK(expected_available(t2, 2) == 2);
  CHECK(availability_probability(t2, 1, 3).probability == Rational(2, 3));

  const Instance six = random_instance(rng, 6, 2, 10);
  const StateTable t3 = enumerate_state_table(six, 2);
  CHECK(expected_available(t3, 3) == Rational(4, 3));
  CHECK(check_availability(t3).ok());
}

TEST_CASE("exact expected welfare clears the finite-n floor") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 6 + trial % 2;
    const int m = 1 + trial % 2;
    const Instance inst = random_instance(rng, n, m, 30);
    const Weight opt = opt_value(inst, inst.all_bidders(), inst.all_items());
    for (int k = m; k < n; ++k) {
      const StateTable table = enumerate_state_table(inst, k);
      CHECK(expected_welfare(table) >= welfare_floor(n, k, opt));
    }
  }
  // (2/6) * (1/2 + 1/3 + 1/4 + 1/5) * 60 = 77/3.
  CHECK(welfare_floor(6, 2, 60) == Rational(77, 3));
}

TEST_CASE("Monte Carlo mean agrees with the exact expectation") {
  std::mt19937_64 rng(31);
  const Instance inst = random_instance(rng, 6, 2, 50);
  const StateTable table = enumerate_state_table(inst, 2);
  const double exact = to_double(expected_welfare(table));
  MonteCarloOptions alg1;
  alg1.variant = Variant::kPartialOptimum;
  const RatioReport r = monte_carlo_welfare(inst, 2, 20000, 5, alg1);
  CHECK(std::abs(r.mean_welfare - exact) <= 3 * r.standard_error);
  const RatioReport r2 = monte_carlo_welfare(inst, 2, 20000, 5);
  CHECK(r2.mean_welfare == r.mean_welfare);
}

}  // namespace
}  // namespace onlinematch
