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

#include "onlinematch/instance.h"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace onlinematch {

Instance::Instance(int num_bidders, int num_items)
    : num_bidders_(num_bidders), num_items_(num_items) {
  if (num_bidders < 0 || num_items < 0) {
    throw InputError("instance dimensions must be nonnegative");
  }
  weights_.assign(static_cast<std::size_t>(num_bidders) * num_items, 0);
}

Instance::Instance(const std::vector<std::vector<Weight>>& rows)
    : Instance(static_cast<int>(rows.size()),
               rows.empty() ? 0 : static_cast<int>(rows.front().size())) {
  for (int i = 0; i < num_bidders_; ++i) {
    if (static_cast<int>(rows[i].size()) != num_items_) {
      throw InputError("weight row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " +
                       std::to_string(num_items_));
    }
    for (int j = 0; j < num_items_; ++j) set_weight(i, j, rows[i][j]);
  }
}

void Instance::set_weight(BidderId bidder, ItemId item, Weight w) {
  if (!has_bidder(bidder) || !has_item(item)) {
    throw InputError("weight index out of range");
  }
  if (w < 0) throw InputError("weights must be nonnegative");
  weights_[static_cast<std::size_t>(bidder) * num_items_ + item] = w;
}

void Instance::set_row(BidderId bidder, std::span<const Weight> values) {
  if (static_cast<int>(values.size()) != num_items_) {
    throw InputError("row length does not match item count");
  }
  for (int j = 0; j < num_items_; ++j) set_weight(bidder, j, values[j]);
}

std::vector<std::vector<Weight>> Instance::rows() const {
  std::vector<std::vector<Weight>> out;
  out.reserve(num_bidders_);
  for (int i = 0; i < num_bidders_; ++i) {
    auto r = row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

std::vector<BidderId> Instance::all_bidders() const {
  std::vector<BidderId> ids(num_bidders_);
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

std::vector<ItemId> Instance::all_items() const {
  std::vector<ItemId> ids(num_items_);
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

ItemId Matching::item_of(BidderId bidder) const {
  for (const Edge& e : pairs) {
    if (e.bidder == bidder) return e.item;
  }
  return -1;
}

BidderId Matching::bidder_of(ItemId item) const {
  for (const Edge& e : pairs) {
    if (e.item == item) return e.bidder;
  }
  return -1;
}

bool Matching::contains(const Edge& e) const {
  return std::find(pairs.begin(), pairs.end(), e) != pairs.end();
}

Matching make_matching(const Instance& instance, std::vector<Edge> pairs) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<char> item_used(instance.num_items(), 0);
  Matching m;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const Edge& e = pairs[p];
    if (!instance.has_bidder(e.bidder) || !instance.has_item(e.item)) {
      throw InputError("matching references an unknown bidder or item");
    }
    if (p > 0 && pairs[p - 1].bidder == e.bidder) {
      throw InputError("bidder " + std::to_string(e.bidder) +
                       " matched twice");
    }
    if (item_used[e.item]) {
      throw InputError("item " + std::to_string(e.item) + " matched twice");
    }
    item_used[e.item] = 1;
    m.weight += instance.weight(e.bidder, e.item);
  }
  m.pairs = std::move(pairs);
  return m;
}

void validate_ids(std::span<const int> ids, int limit, const char* what) {
  std::vector<char> seen(std::max(limit, 0), 0);
  for (int id : ids) {
    if (id < 0 || id >= limit) {
      throw InputError(std::string("unknown ") + what + " id " +
                       std::to_string(id));
    }
    if (seen[id]) {
      throw InputError(std::string("duplicate ") + what + " id " +
                       std::to_string(id));
    }
    seen[id] = 1;
  }
}

std::string to_string(const Matching& m) {
  std::ostringstream os;
  os << "{";
  for (std::size_t p = 0; p < m.pairs.size(); ++p) {
    if (p) os << ", ";
    os << "(" << m.pairs[p].bidder << "," << m.pairs[p].item << ")";
  }
  os << "} weight " << m.weight;
  return os.str();
}

}  // namespace onlinematch
