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

#include "onlinematch/enumeration.h"

#include <algorithm>
#include <bit>
#include <sstream>

#include "onlinematch/matching.h"
#include "onlinematch/mechanism.h"
#include "onlinematch/parallel.h"

namespace onlinematch {
namespace {

std::uint32_t to_mask(const std::vector<int>& ids) {
  std::uint32_t mask = 0;
  for (int id : ids) mask |= 1u << id;
  return mask;
}

StateKey key_of(const MechanismState& state) {
  return {to_mask(state.arrived), to_mask(state.unassigned)};
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

// Smallest mask over `width` bits with `count` bits set that satisfies pred
// negated, i.e. the first element of the class missing from `row`.
template <typename Pred>
std::optional<std::uint32_t> first_mask_where(int width, int count, Pred pred) {
  for (std::uint32_t mask = 0; mask < (1u << width); ++mask) {
    if (popcount(mask) == count && pred(mask)) return mask;
  }
  return std::nullopt;
}

class Enumerator {
 public:
  Enumerator(const Instance& instance, std::vector<Multiplicity> factorials)
      : instance_(instance),
        n_(instance.num_bidders()),
        factorials_(std::move(factorials)),
        rows_(n_ + 1) {}

  void visit(const MechanismState& state, std::uint32_t remaining) {
    const int t = state.step;
    rows_[t][key_of(state)] += factorials_[n_ - t];
    if (t == n_) {
      welfare_ += state.matching.weight;
      return;
    }
    for (int b = 0; b < n_; ++b) {
      if (!(remaining & (1u << b))) continue;
      StepResult r = step_algorithm1(instance_, state, b);
      visit(r.state, remaining & ~(1u << b));
    }
  }

  std::vector<std::map<StateKey, Multiplicity>>& rows() { return rows_; }
  Weight welfare() const { return welfare_; }

 private:
  const Instance& instance_;
  int n_;
  std::vector<Multiplicity> factorials_;
  std::vector<std::map<StateKey, Multiplicity>> rows_;
  Weight welfare_ = 0;
};

}  // namespace

int popcount(std::uint32_t mask) { return std::popcount(mask); }

std::vector<int> mask_ids(std::uint32_t mask) {
  std::vector<int> ids;
  for (int i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1u) ids.push_back(i);
  }
  return ids;
}

std::string to_string(const StateKey& key) {
  std::ostringstream os;
  auto list = [&os](const std::vector<int>& ids) {
    os << "{";
    for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? "," : "") << ids[i];
    os << "}";
  };
  os << "(";
  list(mask_ids(key.bidders));
  os << ", ";
  list(mask_ids(key.items));
  os << ")";
  return os.str();
}

Multiplicity StateTable::multiplicity(int t, const StateKey& key) const {
  if (t < 0 || t >= static_cast<int>(rows.size())) return 0;
  auto it = rows[t].find(key);
  return it == rows[t].end() ? 0 : it->second;
}

StateTable enumerate_state_table(const Instance& instance, int k,
                                 const EnumerationOptions& options) {
  const int n = instance.num_bidders();
  const int m = instance.num_items();
  if (n > kEnumerationLimit) {
    throw SizeLimitError("exhaustive enumeration is limited to n <= " +
                         std::to_string(kEnumerationLimit) + " bidders (got " +
                         std::to_string(n) + ")");
  }
  if (n < 1) throw InputError("enumeration needs at least one bidder");
  RunOptions run_options;
  run_options.allow_undersampling = options.allow_undersampling;
  detail::check_run_preconditions(instance, instance.all_bidders(), k,
                                  run_options);

  std::vector<Multiplicity> factorials(n + 1, 1);
  for (int i = 1; i <= n; ++i) factorials[i] = factorials[i - 1] * i;

  StateTable table;
  table.num_bidders = n;
  table.num_items = m;
  table.sample_size = k;
  table.num_orders = factorials[n];
  table.rows.resize(n + 1);
  const MechanismState start = MechanismState::initial(instance, k);
  table.rows[0][key_of(start)] = factorials[n];

  // Orders are partitioned by their first arrival; partial tables merge by
  // addition, so the result does not depend on the thread count.
  std::vector<Enumerator> parts;
  for (int w = 0; w < std::max(1, options.threads); ++w) {
    parts.emplace_back(instance, factorials);
  }
  const std::uint32_t everyone = (n == 32) ? ~0u : ((1u << n) - 1);
  parallel_chunks(n, options.threads,
                  [&](int worker, std::int64_t begin, std::int64_t end) {
                    for (auto first = begin; first < end; ++first) {
                      const int b = static_cast<int>(first);
                      StepResult r = step_algorithm1(instance, start, b);
                      parts[worker].visit(r.state, everyone & ~(1u << b));
                    }
                  });
  for (Enumerator& part : parts) {
    for (int t = 1; t <= n; ++t) {
      for (const auto& [key, count] : part.rows()[t]) {
        table.rows[t][key] += count;
      }
    }
    table.total_welfare += part.welfare();
  }
  return table;
}

bool IndependencyReport::ok() const {
  return std::all_of(classes.begin(), classes.end(),
                     [](const ClassVerdict& c) { return c.ok(); });
}

Multiplicity IndependencyReport::class_multiplicity(int t, int s) const {
  for (const ClassVerdict& c : classes) {
    if (c.t == t && c.s == s) return c.common;
  }
  return 0;
}

IndependencyReport check_independency(const StateTable& table) {
  IndependencyReport report;
  const int n = table.num_bidders;
  const int m = table.num_items;
  for (int t = 0; t < static_cast<int>(table.rows.size()); ++t) {
    std::map<int, std::vector<std::pair<StateKey, Multiplicity>>> by_size;
    for (const auto& [key, count] : table.rows[t]) {
      by_size[popcount(key.items)].push_back({key, count});
    }
    for (const auto& [s, states] : by_size) {
      ClassVerdict v;
      v.t = t;
      v.s = s;
      v.reachable = states.size();
      v.class_size = binomial(n, t) * binomial(m, s);
      v.common = states.front().second;
      for (const auto& [key, count] : states) {
        if (count != v.common) {
          v.failure = ClassVerdict::Failure::kUnequal;
          v.first = states.front().first;
          v.first_count = v.common;
          v.second = key;
          v.second_count = count;
          break;
        }
      }
      if (v.ok() && v.reachable < v.class_size) {
        v.failure = ClassVerdict::Failure::kUnreached;
        v.first = states.front().first;
        v.first_count = v.common;
        const auto& row = table.rows[t];
        auto bidders = first_mask_where(n, t, [&](std::uint32_t b) {
          return first_mask_where(m, s, [&](std::uint32_t j) {
                   return !row.contains({b, j});
                 }).has_value();
        });
        auto items = first_mask_where(m, s, [&](std::uint32_t j) {
          return !row.contains({*bidders, j});
        });
        v.second = StateKey{*bidders, *items};
        v.second_count = 0;
      }
      report.classes.push_back(v);
    }
  }
  return report;
}

RecurrenceReport check_multiplicity_recurrence(const StateTable& table,
                                               const Instance& instance,
                                               int k) {
  if (instance.num_bidders() != table.num_bidders ||
      instance.num_items() != table.num_items) {
    throw InputError("state table was built for a different instance shape");
  }
  const int n = table.num_bidders;
  const int m = table.num_items;
  const IndependencyReport classes = check_independency(table);
  RecurrenceReport report;
  for (int t = k + 1; t <= n; ++t) {
    for (const auto& [key, count] : table.rows[t]) {
      RecurrenceCheck c;
      c.t = t;
      c.s = popcount(key.items);
      c.state = key;
      c.multiplicity = count;
      const std::vector<BidderId> bidders = mask_ids(key.bidders);
      const std::vector<ItemId> items = mask_ids(key.items);

      // Arrival of a bidder left unmatched by the canonical optimum on S.
      const Matching here =
          detail::canonical_matching_sorted(instance, bidders, items);
      for (BidderId b : bidders) {
        if (here.item_of(b) >= 0) continue;
        ++c.stay_predecessors;
        c.predecessor_sum +=
            table.multiplicity(t - 1, {key.bidders & ~(1u << b), key.items});
      }
      // Arrival of the bidder that takes j once j is added back.
      for (ItemId j = 0; j < m; ++j) {
        if (key.items & (1u << j)) continue;
        std::vector<ItemId> with_j = items;
        detail::insert_sorted(with_j, j);
        const Matching before =
            detail::canonical_matching_sorted(instance, bidders, with_j);
        const BidderId buyer = before.bidder_of(j);
        if (buyer < 0) continue;
        ++c.sale_predecessors;
        c.predecessor_sum += table.multiplicity(
            t - 1, {key.bidders & ~(1u << buyer), key.items | (1u << j)});
      }
      c.scaled_multiplicity = count * static_cast<Multiplicity>(n - t + 1);

      const Rational denom(n - t + 1);
      c.class_form =
          Rational(t - c.s) / denom * classes.class_multiplicity(t - 1, c.s) +
          Rational(m - c.s) / denom *
              classes.class_multiplicity(t - 1, c.s + 1);

      c.counts_ok = c.stay_predecessors == static_cast<std::size_t>(t - c.s) &&
                    c.sale_predecessors == static_cast<std::size_t>(m - c.s);
      c.sum_ok = c.scaled_multiplicity == c.predecessor_sum;
      c.class_form_ok = c.class_form == Rational(count);
      ++report.states_checked;
      if (!c.ok()) report.failures.push_back(c);
    }
  }
  return report;
}

AvailabilityResult availability_probability(const StateTable& table,
                                            ItemId item, int t) {
  if (item < 0 || item >= table.num_items) {
    throw InputError("unknown item id " + std::to_string(item));
  }
  if (t < 0 || t > table.num_bidders) {
    throw InputError("step " + std::to_string(t) + " is out of range");
  }
  if (t <= table.sample_size) return {Rational(1), true};
  Multiplicity unsold = 0;
  for (const auto& [key, count] : table.rows[t]) {
    if (key.items & (1u << item)) unsold += count;
  }
  return {Rational(unsold) / table.num_orders, false};
}

Rational expected_available(const StateTable& table, int t) {
  if (t < 0 || t > table.num_bidders) {
    throw InputError("step " + std::to_string(t) + " is out of range");
  }
  Multiplicity total = 0;
  for (const auto& [key, count] : table.rows[t]) {
    total += count * static_cast<Multiplicity>(popcount(key.items));
  }
  return Rational(total) / table.num_orders;
}

Rational expected_sold_at(const StateTable& table, int t) {
  if (t < 1) throw InputError("no sales happen before step 1");
  return expected_available(table, t - 1) - expected_available(table, t);
}

Rational expected_welfare(const StateTable& table) {
  return Rational(table.total_welfare) / table.num_orders;
}

Rational welfare_floor(int n, int k, Weight opt) {
  if (k <= 0) return Rational(0);
  Rational harmonic = 0;
  for (int t = k; t <= n - 1; ++t) harmonic += Rational(1, t);
  return Rational(k, n) * harmonic * opt;
}

bool AvailabilityReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AvailabilityCheck& c) { return c.ok(); });
}

AvailabilityReport check_availability(const StateTable& table) {
  AvailabilityReport report;
  const int k = table.sample_size;
  const int m = table.num_items;
  for (int t = k + 1; t <= table.num_bidders; ++t) {
    for (ItemId j = 0; j < m; ++j) {
      report.checks.push_back({t, j, "pr_unsold",
                               availability_probability(table, j, t).probability,
                               Rational(k, t)});
    }
    report.checks.push_back(
        {t, -1, "expected_unsold", expected_available(table, t),
         Rational(m * k, t)});
    report.checks.push_back({t, -1, "expected_sold",
                             expected_sold_at(table, t),
                             expected_available(table, t - 1) / t});
  }
  return report;
}

}  // namespace onlinematch
