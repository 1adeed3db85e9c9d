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

// Command-line front end: generate, run, verify, montecarlo.
//
// Exit status: 0 success, 1 a verification failed, 2 invalid input.

#include <chrono>
#include <ctime>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "onlinematch/baseline.h"
#include "onlinematch/enumeration.h"
#include "onlinematch/io.h"
#include "onlinematch/matching.h"
#include "onlinematch/mechanism.h"
#include "onlinematch/montecarlo.h"
#include "onlinematch/parallel.h"
#include "onlinematch/rng.h"
#include "onlinematch/strategy.h"

namespace om = onlinematch;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitInvalidInput = 2;

struct CommonFlags {
  std::string out = "-";
  bool no_timestamp = false;
};

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json envelope(const std::string& command, const json& config,
              const CommonFlags& common) {
  json report;
  report["command"] = command;
  report["config"] = config;
  report["format_version"] = om::kFormatVersion;
  if (!common.no_timestamp) report["generated_at"] = utc_timestamp();
  return report;
}

struct Prepared {
  om::Instance instance;
  int original_n = 0;
  int k = 0;
};

// Default k is choose_k of the padded bidder count. An explicit k is used as
// given; the instance is padded only if k would leave no online step.
Prepared prepare(const om::Instance& instance, std::optional<int> k,
                 bool force) {
  Prepared p;
  p.original_n = instance.num_bidders();
  const int m = instance.num_items();
  if (k) {
    if (*k < 0) throw om::InputError("--k must be nonnegative");
    if (*k < m) {
      if (!force) {
        throw om::InputError(
            "--k " + std::to_string(*k) + " is below the item count " +
            std::to_string(m) +
            "; the guarantees assume k >= m (use --force to run anyway)");
      }
      std::cerr << "warning: k = " << *k << " < m = " << m
                << "; sampling assumption violated\n";
    }
    p.instance = instance.num_bidders() > *k ? instance
                                              : om::pad_instance(instance, *k);
    p.k = *k;
  } else {
    p.instance = om::pad_instance(instance, std::max(m, 1));
    p.k = om::choose_k(p.instance.num_bidders());
  }
  return p;
}

json instance_summary(const std::string& path, const Prepared& p) {
  return {{"path", path},
          {"n", p.original_n},
          {"m", p.instance.num_items()},
          {"padded_n", p.instance.num_bidders()},
          {"k", p.k},
          {"opt", om::opt_value(p.instance, p.instance.all_bidders(),
                                p.instance.all_items())}};
}

std::vector<om::BidderId> parse_order(const std::string& text) {
  std::vector<om::BidderId> order;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      order.push_back(std::stoi(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw om::InputError("--order: '" + token + "' is not a bidder id");
    }
  }
  return order;
}

// --- verify helpers ---------------------------------------------------------

json check_equivalence(const om::Instance& instance, int k, bool force) {
  std::vector<om::BidderId> order = instance.all_bidders();
  om::RunOptions options;
  options.allow_undersampling = force;
  options.record_trace = false;
  std::int64_t orders = 0;
  json mismatch = nullptr;
  do {
    ++orders;
    const auto a = om::run_mechanism(instance, order, k,
                                     om::Variant::kPartialOptimum, options);
    const auto b = om::run_mechanism(instance, order, k,
                                     om::Variant::kPostedPrices, options);
    bool same = a.matching.pairs == b.matching.pairs;
    for (std::size_t i = 0; same && i < a.assignments.size(); ++i) {
      const auto& x = a.assignments[i];
      const auto& y = b.assignments[i];
      same = x.has_value() == y.has_value() &&
             (!x || (x->item == y->item && x->step == y->step));
    }
    if (!same) {
      mismatch = {{"order", order},
                  {"alg1", om::to_json(a.matching)},
                  {"alg2", om::to_json(b.matching)}};
      break;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {{"ok", mismatch.is_null()}, {"orders", orders},
          {"mismatch", mismatch}};
}

int cmd_generate(int n, int m, om::Weight weight_max,
                 const std::string& distribution, std::uint64_t seed,
                 const std::string& name, const CommonFlags& common) {
  om::InstanceFile file = om::generate_instance(
      n, m, weight_max, om::parse_distribution(distribution), seed);
  if (!name.empty()) file.name = name;
  if (common.out == "-") {
    om::write_instance(std::cout, file);
  } else {
    om::write_instance_file(common.out, file);
  }
  return kExitOk;
}

int cmd_run(const std::string& path, std::optional<int> k,
            const std::string& order_text, std::uint64_t seed,
            const std::string& variant_text, bool force,
            const CommonFlags& common) {
  const om::InstanceFile file = om::read_instance_file(path);
  const om::Variant variant = om::parse_variant(variant_text);
  const Prepared p = prepare(file.instance, k, force);
  std::vector<om::BidderId> order;
  json config = {{"instance", path},
                 {"variant", om::variant_name(variant)},
                 {"force", force}};
  if (k) config["k"] = *k;
  if (!order_text.empty()) {
    order = parse_order(order_text);
    config["order"] = order_text;
  } else {
    auto engine = om::stream_engine(seed, 0);
    order = om::random_permutation(p.instance.num_bidders(), engine);
    config["seed"] = seed;
  }
  om::RunOptions options;
  options.allow_undersampling = force;
  const om::AuctionOutcome outcome =
      om::run_mechanism(p.instance, order, p.k, variant, options);
  json report = envelope("run", config, common);
  report["instance"] = instance_summary(path, p);
  report["outcome"] = om::to_json(outcome);
  om::write_report(common.out, report);
  return kExitOk;
}

int cmd_verify(const std::string& path, std::vector<std::string> checks,
               std::optional<int> k, std::uint64_t seed, int threads,
               std::int64_t misreports, bool force,
               const CommonFlags& common) {
  static const std::set<std::string> kKnown = {
      "independency", "recurrence",   "availability", "welfare",
      "truthfulness", "equivalence", "all"};
  std::set<std::string> wanted;
  for (const auto& c : checks) {
    if (!kKnown.contains(c)) throw om::InputError("unknown check '" + c + "'");
    if (c == "all") {
      wanted.insert(kKnown.begin(), kKnown.end());
      wanted.erase("all");
    } else {
      wanted.insert(c);
    }
  }
  const om::InstanceFile file = om::read_instance_file(path);
  const Prepared p = prepare(file.instance, k, force);
  json config = {{"instance", path},
                 {"checks", std::vector<std::string>(wanted.begin(),
                                                     wanted.end())},
                 {"seed", seed},
                 {"misreports_per_order", misreports},
                 {"force", force}};
  if (k) config["k"] = *k;
  json report = envelope("verify", config, common);
  report["instance"] = instance_summary(path, p);

  bool ok = true;
  json results;
  const bool needs_table = wanted.contains("independency") ||
                           wanted.contains("recurrence") ||
                           wanted.contains("availability") ||
                           wanted.contains("welfare");
  if (needs_table) {
    om::EnumerationOptions eo;
    eo.threads = threads;
    eo.allow_undersampling = force;
    const om::StateTable table = om::enumerate_state_table(p.instance, p.k, eo);
    report["orders"] = table.num_orders;
    if (wanted.contains("independency")) {
      const auto r = om::check_independency(table);
      results["independency"] = om::to_json(r);
      ok = ok && r.ok();
    }
    if (wanted.contains("recurrence")) {
      const auto r = om::check_multiplicity_recurrence(table, p.instance, p.k);
      results["recurrence"] = om::to_json(r);
      ok = ok && r.ok();
    }
    if (wanted.contains("availability")) {
      const auto r = om::check_availability(table);
      results["availability"] = om::to_json(r);
      ok = ok && r.ok();
    }
    if (wanted.contains("welfare")) {
      const om::Weight opt = om::opt_value(
          p.instance, p.instance.all_bidders(), p.instance.all_items());
      const om::Rational expected = om::expected_welfare(table);
      const om::Rational floor =
          om::welfare_floor(p.instance.num_bidders(), p.k, opt);
      results["welfare"] = {{"ok", expected >= floor},
                            {"expected_welfare", om::rational_json(expected)},
                            {"floor", om::rational_json(floor)},
                            {"opt", opt}};
      ok = ok && expected >= floor;
    }
  }
  if (wanted.contains("equivalence")) {
    if (p.instance.num_bidders() > om::kEnumerationLimit) {
      throw om::SizeLimitError("equivalence check enumerates all orders; n <= " +
                               std::to_string(om::kEnumerationLimit));
    }
    results["equivalence"] = check_equivalence(p.instance, p.k, force);
    ok = ok && results["equivalence"]["ok"].get<bool>();
  }
  if (wanted.contains("truthfulness")) {
    om::TruthfulnessConfig tc;
    tc.misreports_per_order = misreports;
    tc.resume_at_arrival = false;
    const auto v = om::test_truthfulness(p.instance, p.k, tc, seed);
    results["truthfulness"] = om::to_json(v);
    ok = ok && v.ok();
  }
  report["results"] = results;
  report["ok"] = ok;
  om::write_report(common.out, report);
  return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_montecarlo(const std::string& path, std::optional<int> k,
                   std::int64_t trials, std::uint64_t seed, int threads,
                   const std::string& variant_text, const CommonFlags& common) {
  const om::InstanceFile file = om::read_instance_file(path);
  const Prepared p = prepare(file.instance, k, false);
  om::MonteCarloOptions mo;
  mo.threads = threads;
  mo.variant = om::parse_variant(variant_text);
  json config = {{"instance", path},
                 {"trials", trials},
                 {"seed", seed},
                 {"variant", variant_text}};
  if (k) config["k"] = *k;
  const om::RatioReport r =
      om::monte_carlo_welfare(p.instance, p.k, trials, seed, mo);
  json report = envelope("montecarlo", config, common);
  report["instance"] = instance_summary(path, p);
  report["result"] = om::to_json(r);
  // Theoretical floor at k = floor(n/e): (floor(n/e)/n) OPT >= (1/e - 1/n) OPT.
  const int n = p.instance.num_bidders();
  const int ke = om::choose_k(n);
  report["theoretical_floor"] = {
      {"k", ke},
      {"value", om::rational_json(om::Rational(ke, n) * r.opt)},
      {"value_float", om::to_double(om::Rational(ke, n) * r.opt)}};
  om::write_report(common.out, report);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truthful online bipartite matching: simulation and checks"};
  app.require_subcommand(1);

  CommonFlags common;
  int threads = om::default_thread_count();
  std::uint64_t seed = 1;
  std::optional<int> k;
  bool force = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Output path, '-' for stdout");
    sub->add_flag("--no-timestamp", common.no_timestamp,
                  "Omit the generation timestamp from reports");
  };

  auto* gen = app.add_subcommand("generate", "Write a random instance");
  int gen_n = 0, gen_m = 0;
  om::Weight weight_max = 10;
  std::string distribution = "uniform", name;
  gen->add_option("--n", gen_n, "Bidders")->required();
  gen->add_option("--m", gen_m, "Items")->required();
  gen->add_option("--weight-max", weight_max, "Largest weight");
  gen->add_option("--distribution", distribution,
                  "uniform | geometric | adversarial-ties");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--name", name, "Instance name");
  add_common(gen);

  auto* run = app.add_subcommand("run", "Run one auction");
  std::string path, order_text, variant = "alg2";
  run->add_option("instance", path, "Instance file")->required();
  run->add_option("--k", k, "Sampling length (default floor(n/e))");
  run->add_option("--order", order_text, "Comma-separated arrival order");
  run->add_option("--seed", seed, "Seed for a random arrival order");
  run->add_option("--variant", variant, "alg1 | alg2 | baseline");
  run->add_flag("--force", force, "Allow k < m");
  add_common(run);

  auto* verify = app.add_subcommand("verify", "Exhaustive checks");
  std::vector<std::string> checks = {"all"};
  std::int64_t misreports = 20;
  verify->add_option("instance", path, "Instance file")->required();
  verify->add_option("--checks", checks,
                     "independency, recurrence, availability, welfare, "
                     "truthfulness, equivalence, all")
      ->delimiter(',');
  verify->add_option("--k", k, "Sampling length (default floor(n/e))");
  verify->add_option("--seed", seed, "Seed for sampled misreports");
  verify->add_option("--misreports", misreports,
                     "Random misreports per arrival order");
  verify->add_option("--threads", threads, "Worker threads");
  verify->add_flag("--force", force, "Allow k < m");
  add_common(verify);

  auto* mc = app.add_subcommand("montecarlo", "Estimate expected welfare");
  std::int64_t trials = 10000;
  mc->add_option("instance", path, "Instance file")->required();
  mc->add_option("--k", k, "Sampling length (default floor(n/e))");
  mc->add_option("--trials", trials, "Random arrival orders");
  mc->add_option("--seed", seed, "Random seed");
  mc->add_option("--threads", threads, "Worker threads");
  mc->add_option("--variant", variant, "alg1 | alg2 | baseline");
  add_common(mc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*gen) {
      return cmd_generate(gen_n, gen_m, weight_max, distribution, seed, name,
                          common);
    }
    if (*run) {
      return cmd_run(path, k, order_text, seed, variant, force, common);
    }
    if (*verify) {
      return cmd_verify(path, checks, k, seed, threads, misreports, force,
                        common);
    }
    if (*mc) {
      if (trials < 1) throw om::InputError("--trials must be at least 1");
      return cmd_montecarlo(path, k, trials, seed, threads, variant, common);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
