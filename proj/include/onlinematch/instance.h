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

#ifndef ONLINEMATCH_INSTANCE_H_
#define ONLINEMATCH_INSTANCE_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace onlinematch {

using Weight = std::int64_t;
using BidderId = int;
using ItemId = int;

// Malformed caller input: unknown ids, bad permutations, negative weights.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was invoked outside the state it is defined for.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Exhaustive routines refuse inputs above their factorial guard.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Complete bipartite graph between n bidders and m items. Missing edges are
// weight 0 (free disposal). Bidder and item ids are the row and column
// indices; their numeric order is the global order used for tie-breaking.
class Instance {
 public:
  Instance() = default;
  Instance(int num_bidders, int num_items);
  // Rows are bidders. Throws InputError on ragged rows or negative weights.
  explicit Instance(const std::vector<std::vector<Weight>>& rows);

  int num_bidders() const { return num_bidders_; }
  int num_items() const { return num_items_; }

  Weight weight(BidderId bidder, ItemId item) const {
    return weights_[static_cast<std::size_t>(bidder) * num_items_ + item];
  }
  void set_weight(BidderId bidder, ItemId item, Weight w);

  std::span<const Weight> row(BidderId bidder) const {
    return {weights_.data() + static_cast<std::size_t>(bidder) * num_items_,
            static_cast<std::size_t>(num_items_)};
  }
  // Replaces a bidder's whole valuation row.
  void set_row(BidderId bidder, std::span<const Weight> values);

  std::vector<std::vector<Weight>> rows() const;
  std::vector<BidderId> all_bidders() const;
  std::vector<ItemId> all_items() const;

  bool has_bidder(BidderId b) const { return b >= 0 && b < num_bidders_; }
  bool has_item(ItemId j) const { return j >= 0 && j < num_items_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int num_bidders_ = 0;
  int num_items_ = 0;
  std::vector<Weight> weights_;
};

struct Edge {
  BidderId bidder;
  ItemId item;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// A set of disjoint bidder-item pairs, kept sorted by bidder id.
struct Matching {
  std::vector<Edge> pairs;
  Weight weight = 0;

  // Item assigned to `bidder`, or -1.
  ItemId item_of(BidderId bidder) const;
  // Bidder holding `item`, or -1.
  BidderId bidder_of(ItemId item) const;
  bool contains(const Edge& e) const;

  friend bool operator==(const Matching&, const Matching&) = default;
};

// Sorts pairs and recomputes the weight. Throws InputError when a bidder or
// item repeats or an id is out of range.
Matching make_matching(const Instance& instance, std::vector<Edge> pairs);

// Throws InputError if `ids` has an id outside [0, limit) or a duplicate.
void validate_ids(std::span<const int> ids, int limit, const char* what);

std::string to_string(const Matching& m);

}  // namespace onlinematch

#endif  // ONLINEMATCH_INSTANCE_H_
