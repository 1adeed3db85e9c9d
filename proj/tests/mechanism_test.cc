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
#include <string>

#include "doctest.h"
#include "onlinematch/matching.h"
#include "onlinematch/mechanism.h"
#include "onlinematch/rng.h"
#include "test_util.h"

namespace onlinematch {
namespace {

using testing::all_orders;
using testing::random_instance;

TEST_CASE("choose_k") {
  CHECK(choose_k(100) == 36);
  CHECK(choose_k(1) == 0);
  CHECK(choose_k(3) == 1);
  CHECK(choose_k(6) == 2);
  CHECK(choose_k(19) == 6);
  CHECK(choose_k(1000000) == 367879);
  CHECK_THROWS_AS(choose_k(0), InputError);
}

TEST_CASE("choose_k agrees with long double away from integer boundaries") {
  const long double e = std::exp(1.0L);
  for (int n = 1; n <= 1000000; n += (n < 5000 ? 1 : 97)) {
    const long double q = n / e;
    const long double frac = q - std::floor(q);
    if (frac < 1e-9L || frac > 1 - 1e-9L) continue;
    REQUIRE_MESSAGE(choose_k(n) == static_cast<int>(std::floor(q)), "n=" << n);
  }
}

TEST_CASE("pad_instance") {
  Instance small({{4, 1}, {2, 3}});
  const Instance padded = pad_instance(small, 2);
  CHECK(padded.num_bidders() == 6);
  CHECK(choose_k(6) == 2);
  CHECK(choose_k(5) == 1);
  for (BidderId b = 2; b < 6; ++b) {
    for (ItemId j = 0; j < 2; ++j) CHECK(padded.weight(b, j) == 0);
  }
  CHECK(opt_value(padded, padded.all_bidders(), padded.all_items()) ==
        opt_value(small, small.all_bidders(), small.all_items()));

  Instance large(10, 3);
  CHECK(pad_instance(large, 3) == large);
}

TEST_CASE("posted prices are externalities of the arrived bidders") {
  Instance inst({{5, 2}, {9, 9}});
  MechanismState state = MechanismState::initial(inst, 1);
  state = step_algorithm2(inst, state, 0).state;
  const PriceVector prices = posted_prices(inst, state);
  REQUIRE(prices.size() == 2);
  CHECK(prices[0] == PostedPrice{0, 3});
  CHECK(prices[1] == PostedPrice{1, 0});
}

TEST_CASE("posted prices: zero bids and a single item") {
  Instance zeros(3, 2);
  MechanismState s = MechanismState::initial(zeros, 2);
  s = step_algorithm2(zeros, s, 0).state;
  s = step_algorithm2(zeros, s, 1).state;
  for (const PostedPrice& p : posted_prices(zeros, s)) CHECK(p.price == 0);

  Instance one({{4}, {7}, {1}, {5}});
  MechanismState t = MechanismState::initial(one, 3);
  for (BidderId b : {0, 1, 2}) t = step_algorithm2(one, t, b).state;
  const PriceVector p = posted_prices(one, t);
  REQUIRE(p.size() == 1);
  CHECK(p[0].price == 7);
}

TEST_CASE("posted prices are undefined while sampling") {
  Instance inst({{1}, {2}, {3}});
  MechanismState s = MechanismState::initial(inst, 2);
  CHECK_THROWS_AS(posted_prices(inst, s), ContractError);
  s = step_algorithm1(inst, s, 0).state;
  CHECK_THROWS_AS(posted_prices(inst, s), ContractError);
  s = step_algorithm1(inst, s, 1).state;
  CHECK_NOTHROW(posted_prices(inst, s));
}

// Bids 1, 2, 3 for one item; k = 1.
const Instance kThree({{1}, {2}, {3}});

TEST_CASE("three bidders, one item, ascending arrival") {
  const std::vector<BidderId> order = {0, 1, 2};
  MechanismState s1 = MechanismState::initial(kThree, 1);
  StepResult r = step_algorithm1(kThree, s1, 0);
  CHECK_FALSE(r.item);
  CHECK(r.state.matching.pairs.empty());
  r = step_algorithm1(kThree, r.state, 1);
  REQUIRE(r.item);
  CHECK(*r.item == 0);

  MechanismState s2 = MechanismState::initial(kThree, 1);
  StepResult q = step_algorithm2(kThree, s2, 0);
  q = step_algorithm2(kThree, q.state, 1);
  REQUIRE(q.item);
  CHECK(*q.item == 0);
  CHECK(q.price == 1);

  const AuctionOutcome out =
      run_mechanism(kThree, order, 1, Variant::kPostedPrices);
  CHECK(out.welfare == 2);
  REQUIRE(out.assignments[1]);
  CHECK(*out.assignments[1] == Assignment{0, 1, 2});
  CHECK(out.utilities[1] == 1);
  CHECK(out.utilities[2] == 0);
  CHECK(out.trace.size() == 4);
}

TEST_CASE("three bidders, one item, best bidder sampled first") {
  const std::vector<BidderId> order = {2, 0, 1};
  const AuctionOutcome out =
      run_mechanism(kThree, order, 1, Variant::kPostedPrices);
  CHECK(out.welfare == 0);
  REQUIRE(out.price_history.size() == 2);
  CHECK(out.price_history[0].prices[0].price == 3);
  CHECK(out.price_history[1].prices[0].price == 3);
  CHECK(run_mechanism(kThree, order, 1, Variant::kPartialOptimum).welfare == 0);
}

TEST_CASE("no unsold items means no assignment") {
  Instance inst({{1}, {2}, {3}});
  MechanismState s = MechanismState::initial(inst, 1);
  s = step_algorithm2(inst, s, 0).state;
  s = step_algorithm2(inst, s, 2).state;
  CHECK(s.unassigned.empty());
  const StepResult r1 = step_algorithm1(inst, s, 1);
  const StepResult r2 = step_algorithm2(inst, s, 1);
  CHECK_FALSE(r1.item);
  CHECK_FALSE(r2.item);
}

TEST_CASE("all-zero instance sells at price zero") {
  Instance zeros(6, 2);
  const AuctionOutcome out = run_mechanism(zeros, std::vector<BidderId>{5, 4, 3, 2, 1, 0},
                                           2, Variant::kPostedPrices);
  CHECK(out.welfare == 0);
  for (const PriceRecord& r : out.price_history) {
    for (const PostedPrice& p : r.prices) CHECK(p.price == 0);
  }
}

TEST_CASE("run preconditions") {
  Instance inst(4, 2);
  const std::vector<BidderId> order = {0, 1, 2, 3};
  try {
    run_mechanism(inst, order, 1, Variant::kPostedPrices);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("k >= m") != std::string::npos);
  }
  RunOptions forced;
  forced.allow_undersampling = true;
  CHECK_NOTHROW(run_mechanism(inst, order, 1, Variant::kPostedPrices, forced));
  CHECK_THROWS_AS(run_mechanism(inst, order, 4, Variant::kPostedPrices),
                  InputError);
  CHECK_THROWS_AS(run_mechanism(inst, std::vector<BidderId>{0, 1, 2},
                                2, Variant::kPostedPrices),
                  InputError);
  CHECK_THROWS_AS(run_mechanism(inst, std::vector<BidderId>{0, 1, 1, 3},
                                2, Variant::kPostedPrices),
                  InputError);

  MechanismState s = MechanismState::initial(inst, 2);
  s = step_algorithm1(inst, s, 3).state;
  CHECK_THROWS_AS(step_algorithm1(inst, s, 3), ContractError);
  CHECK_THROWS_AS(step_algorithm2(inst, s, 3), ContractError);
}

TEST_CASE("variant names round-trip") {
  for (Variant v : {Variant::kPartialOptimum, Variant::kPostedPrices,
                    Variant::kAllItemsBaseline}) {
    CHECK(parse_variant(variant_name(v)) == v);
  }
  CHECK_THROWS_AS(parse_variant("alg3"), InputError);
}

// Both formulations on every order of random small instances, with the
// state invariants checked along every trace.
TEST_CASE("partial-optimum and posted-price rules make identical assignments") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 3);
    const int n = std::max(m + 1, 3 + static_cast<int>(rng() % 3));
    const int k = m + static_cast<int>(rng() % (n - m));
    const Instance inst = random_instance(rng, n, m, trial % 2 ? 2 : 30);
    for (const auto& order : all_orders(n)) {
      const AuctionOutcome a =
          run_mechanism(inst, order, k, Variant::kPartialOptimum);
      const AuctionOutcome b =
          run_mechanism(inst, order, k, Variant::kPostedPrices);
      REQUIRE(a.matching == b.matching);
      for (BidderId i = 0; i < n; ++i) {
        REQUIRE(a.assignments[i].has_value() == b.assignments[i].has_value());
        if (a.assignments[i]) {
          REQUIRE(a.assignments[i]->item == b.assignments[i]->item);
          REQUIRE(a.assignments[i]->step == b.assignments[i]->step);
        }
        // Individual rationality.
        CHECK(b.utilities[i] >= 0);
      }
      Weight recomputed = 0;
      for (const Edge& e : b.matching.pairs) recomputed += inst.weight(e.bidder, e.item);
      CHECK(b.welfare == recomputed);
      for (const PriceRecord& r : b.price_history) {
        for (const PostedPrice& p : r.prices) CHECK(p.price >= 0);
      }
      for (const MechanismState& s : b.trace) {
        CHECK(static_cast<int>(s.arrived.size()) == s.step);
        CHECK_NOTHROW(make_matching(inst, s.matching.pairs));
        CHECK(s.matching.pairs.size() + s.unassigned.size() ==
              static_cast<std::size_t>(m));
        for (const Edge& e : s.matching.pairs) {
          CHECK(std::find(s.unassigned.begin(), s.unassigned.end(), e.item) ==
                s.unassigned.end());
        }
      }
    }
  }
}

TEST_CASE("prices do not depend on the arriving bidder's row") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 7, m = 2, k = 2;
    const Instance inst = random_instance(rng, n, m, 9);
    const auto order = random_permutation(n, rng);
    MechanismState s = MechanismState::initial(inst, k);
    for (int pos = 0; pos < n; ++pos) {
      const BidderId b = order[pos];
      if (!s.in_sampling_phase()) {
        Instance altered = inst;
        altered.set_row(b, std::vector<Weight>{static_cast<Weight>(rng() % 50),
                                               static_cast<Weight>(rng() % 50)});
        const StepResult honest = step_algorithm2(inst, s, b);
        const StepResult other = step_algorithm2(altered, s, b);
        CHECK(honest.state.price_history.back() ==
              other.state.price_history.back());
      }
      s = step_algorithm2(inst, s, b).state;
    }
  }
}

}  // namespace
}  // namespace onlinematch
