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

#include "onlinematch/io.h"

#include <charconv>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "onlinematch/rng.h"

namespace onlinematch {
namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename Int>
Int parse_integer(std::string_view token, int line, const char* field) {
  Int value{};
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("field '") + field +
                               "': expected an integer, got '" +
                               std::string(token) + "'");
  }
  return value;
}

json ids_json(std::uint32_t mask) { return json(mask_ids(mask)); }

json prices_json(const PriceVector& prices) {
  json out = json::array();
  for (const PostedPrice& p : prices) {
    out.push_back({{"item", p.item}, {"price", p.price}});
  }
  return out;
}

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : InputError("line " + std::to_string(line) + ": " + message),
      line_(line) {}

InstanceFile parse_instance(std::istream& in) {
  InstanceFile file;
  std::optional<int> n, m;
  bool have_version = false;
  std::string raw;
  int line = 0;
  auto require_new = [&line](bool present, const char* key) {
    if (present) {
      throw ParseError(line, std::string("duplicate field '") + key + "'");
    }
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto space = text.find_first_of(" \t");
    const std::string key = text.substr(0, space);
    const std::string value =
        space == std::string::npos ? std::string() : trim(text.substr(space));
    if (key == "format_version") {
      require_new(have_version, "format_version");
      have_version = true;
      file.format_version = parse_integer<int>(value, line, "format_version");
      if (file.format_version != kFormatVersion) {
        throw ParseError(line, "unsupported format_version " + value);
      }
    } else if (key == "name") {
      require_new(file.name.has_value(), "name");
      file.name = value;
    } else if (key == "generator") {
      require_new(file.generator.has_value(), "generator");
      file.generator = value;
    } else if (key == "seed") {
      require_new(file.seed.has_value(), "seed");
      file.seed = parse_integer<std::uint64_t>(value, line, "seed");
    } else if (key == "n" || key == "m") {
      auto& slot = key == "n" ? n : m;
      require_new(slot.has_value(), key.c_str());
      slot = parse_integer<int>(value, line, key.c_str());
      if (*slot < 0) throw ParseError(line, "field '" + key + "' is negative");
    } else if (key == "weights") {
      if (!have_version) throw ParseError(line, "missing format_version");
      if (!n || !m) throw ParseError(line, "'weights' before 'n' and 'm'");
      if (!value.empty()) {
        throw ParseError(line, "'weights' takes no value; rows follow");
      }
      Instance instance(*n, *m);
      int row = 0;
      while (row < *n && std::getline(in, raw)) {
        ++line;
        const std::string row_text = trim(raw);
        if (row_text.empty() || row_text.front() == '#') continue;
        std::istringstream tokens(row_text);
        std::string token;
        int col = 0;
        while (tokens >> token) {
          if (col >= *m) {
            throw ParseError(line, "weights row " + std::to_string(row) +
                                       " has more than " + std::to_string(*m) +
                                       " entries");
          }
          const auto w = parse_integer<Weight>(token, line, "weights");
          if (w < 0) {
            throw ParseError(line, "weights must be nonnegative, got " + token);
          }
          instance.set_weight(row, col++, w);
        }
        if (col != *m) {
          throw ParseError(line, "weights row " + std::to_string(row) +
                                     " has " + std::to_string(col) +
                                     " entries, expected " + std::to_string(*m));
        }
        ++row;
      }
      if (row != *n) {
        throw ParseError(line, "expected " + std::to_string(*n) +
                                   " weight rows, found " + std::to_string(row));
      }
      while (std::getline(in, raw)) {
        ++line;
        const std::string rest = trim(raw);
        if (!rest.empty() && rest.front() != '#') {
          throw ParseError(line, "unexpected content after weight rows");
        }
      }
      file.instance = std::move(instance);
      return file;
    } else {
      throw ParseError(line, "unknown field '" + key + "'");
    }
  }
  throw ParseError(line, "missing 'weights' section");
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  return parse_instance(in);
}

void write_instance(std::ostream& out, const InstanceFile& file) {
  out << "# onlinematch instance\n";
  out << "format_version " << file.format_version << "\n";
  if (file.name) out << "name " << *file.name << "\n";
  if (file.generator) out << "generator " << *file.generator << "\n";
  if (file.seed) out << "seed " << *file.seed << "\n";
  const Instance& inst = file.instance;
  out << "n " << inst.num_bidders() << "\n";
  out << "m " << inst.num_items() << "\n";
  out << "weights\n";
  for (BidderId b = 0; b < inst.num_bidders(); ++b) {
    const auto row = inst.row(b);
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j ? " " : "") << row[j];
    }
    out << "\n";
  }
}

void write_instance_file(const std::string& path, const InstanceFile& file) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_instance(out, file);
  if (!out.flush()) throw std::runtime_error("cannot write '" + path + "'");
}

std::string_view distribution_name(Distribution d) {
  switch (d) {
    case Distribution::kUniform:
      return "uniform";
    case Distribution::kGeometric:
      return "geometric";
    case Distribution::kAdversarialTies:
      return "adversarial-ties";
  }
  return "unknown";
}

Distribution parse_distribution(std::string_view name) {
  if (name == "uniform") return Distribution::kUniform;
  if (name == "geometric") return Distribution::kGeometric;
  if (name == "adversarial-ties") return Distribution::kAdversarialTies;
  throw InputError("unknown distribution '" + std::string(name) +
                   "' (expected uniform, geometric or adversarial-ties)");
}

InstanceFile generate_instance(int n, int m, Weight weight_max,
                               Distribution distribution, std::uint64_t seed) {
  if (n < 1 || m < 1) throw InputError("n and m must be at least 1");
  if (weight_max < 0) throw InputError("weight_max must be nonnegative");
  auto engine = stream_engine(seed, 0);
  std::uniform_int_distribution<Weight> uniform(0, weight_max);
  std::geometric_distribution<Weight> geometric(0.5);
  std::uniform_int_distribution<Weight> tiny(0, std::min<Weight>(2, weight_max));
  InstanceFile file;
  Instance& inst = file.instance = Instance(n, m);
  for (BidderId b = 0; b < n; ++b) {
    for (ItemId j = 0; j < m; ++j) {
      Weight w = 0;
      switch (distribution) {
        case Distribution::kUniform:
          w = uniform(engine);
          break;
        case Distribution::kGeometric:
          w = std::min(geometric(engine), weight_max);
          break;
        case Distribution::kAdversarialTies:
          w = tiny(engine);
          break;
      }
      inst.set_weight(b, j, w);
    }
  }
  file.seed = seed;
  file.generator = std::string(distribution_name(distribution)) +
                   " weight_max=" + std::to_string(weight_max);
  return file;
}

json rational_json(const Rational& r) { return to_string(r); }

json to_json(const Matching& m) {
  json pairs = json::array();
  for (const Edge& e : m.pairs) pairs.push_back({e.bidder, e.item});
  return {{"pairs", pairs}, {"weight", m.weight}};
}

json to_json(const AuctionOutcome& outcome) {
  json out;
  out["variant"] = variant_name(outcome.variant);
  out["k"] = outcome.sample_size;
  out["order"] = outcome.order;
  out["matching"] = to_json(outcome.matching);
  out["welfare"] = outcome.welfare;
  json bidders = json::array();
  for (std::size_t b = 0; b < outcome.assignments.size(); ++b) {
    json entry = {{"bidder", b}, {"utility", outcome.utilities[b]}};
    if (const auto& a = outcome.assignments[b]) {
      entry["item"] = a->item;
      entry["price"] = a->price;
      entry["step"] = a->step;
    } else {
      entry["item"] = nullptr;
    }
    bidders.push_back(entry);
  }
  out["bidders"] = bidders;
  json prices = json::array();
  for (const PriceRecord& r : outcome.price_history) {
    prices.push_back({{"step", r.step}, {"prices", prices_json(r.prices)}});
  }
  out["price_history"] = prices;
  json trace = json::array();
  for (const MechanismState& s : outcome.trace) {
    trace.push_back({{"step", s.step},
                     {"arrived", s.arrived},
                     {"unassigned", s.unassigned},
                     {"matching", to_json(s.matching)}});
  }
  out["trace"] = trace;
  return out;
}

json to_json(const IndependencyReport& report) {
  json classes = json::array();
  for (const ClassVerdict& c : report.classes) {
    json entry = {{"t", c.t},
                  {"s", c.s},
                  {"mul", c.common},
                  {"reachable", c.reachable},
                  {"class_size", c.class_size},
                  {"entries", c.common * c.class_size},
                  {"ok", c.ok()}};
    if (!c.ok()) {
      entry["failure"] = c.failure == ClassVerdict::Failure::kUnequal
                             ? "unequal multiplicities"
                             : "unreached state";
      entry["first"] = to_string(*c.first);
      entry["first_mul"] = c.first_count;
      entry["second"] = to_string(*c.second);
      entry["second_mul"] = c.second_count;
    }
    classes.push_back(entry);
  }
  return {{"ok", report.ok()}, {"classes", classes}};
}

json to_json(const RecurrenceReport& report) {
  json failures = json::array();
  for (const RecurrenceCheck& c : report.failures) {
    failures.push_back({{"t", c.t},
                        {"s", c.s},
                        {"state", to_string(c.state)},
                        {"stay_predecessors", c.stay_predecessors},
                        {"sale_predecessors", c.sale_predecessors},
                        {"mul", c.multiplicity},
                        {"scaled_mul", c.scaled_multiplicity},
                        {"predecessor_sum", c.predecessor_sum},
                        {"class_form", rational_json(c.class_form)}});
  }
  return {{"ok", report.ok()},
          {"states_checked", report.states_checked},
          {"failures", failures}};
}

json to_json(const AvailabilityReport& report) {
  json rows = json::array();
  for (const AvailabilityCheck& c : report.checks) {
    json entry = {{"t", c.t},
                  {"quantity", c.quantity},
                  {"observed", rational_json(c.observed)},
                  {"expected", rational_json(c.expected)},
                  {"ok", c.ok()}};
    if (c.item >= 0) entry["item"] = c.item;
    rows.push_back(entry);
  }
  return {{"ok", report.ok()}, {"checks", rows}};
}

json to_json(const RatioReport& r) {
  json out = {{"seed", r.seed},
              {"trials", r.trials},
              {"n", r.n},
              {"m", r.m},
              {"k", r.k},
              {"opt", r.opt},
              {"mean_welfare", r.mean_welfare},
              {"standard_error", r.standard_error},
              {"optimal_runs", r.optimal_runs},
              {"floor", rational_json(r.floor)},
              {"floor_value", to_double(r.floor)}};
  out["ratio"] = r.ratio ? json(*r.ratio) : json(nullptr);
  return out;
}

json to_json(const Manipulation& w) {
  return {{"instance", w.instance.rows()},
          {"order", w.order},
          {"k", w.k},
          {"variant", variant_name(w.variant)},
          {"bidder", w.misreport.bidder},
          {"reported", w.misreport.reported},
          {"truthful_utility", w.truthful_utility},
          {"misreport_utility", w.misreport_utility}};
}

json to_json(const TruthfulnessVerdict& v) {
  json out = {{"ok", v.ok()},
              {"orders", v.orders},
              {"deviations", v.deviations},
              {"price_changes", v.price_changes},
              {"non_maximizing_runs", v.non_maximizing}};
  out["counterexample"] =
      v.counterexample ? to_json(*v.counterexample) : json(nullptr);
  return out;
}

json multiplicity_table_json(const StateTable& table) {
  json rows = json::array();
  for (int t = 0; t < static_cast<int>(table.rows.size()); ++t) {
    for (const auto& [key, count] : table.rows[t]) {
      rows.push_back({{"t", t},
                      {"bidders", ids_json(key.bidders)},
                      {"items", ids_json(key.items)},
                      {"mul", count}});
    }
  }
  return rows;
}

void write_report(const std::string& path, const json& report) {
  const std::string text = report.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out.flush()) throw std::runtime_error("cannot write '" + path + "'");
}

}  // namespace onlinematch
