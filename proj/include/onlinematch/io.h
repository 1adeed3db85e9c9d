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

#ifndef ONLINEMATCH_IO_H_
#define ONLINEMATCH_IO_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "onlinematch/enumeration.h"
#include "onlinematch/instance.h"
#include "onlinematch/mechanism.h"
#include "onlinematch/montecarlo.h"
#include "onlinematch/strategy.h"

namespace onlinematch {

inline constexpr int kFormatVersion = 1;

// Parse failure; the message names the line and field.
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// On-disk instance. Text format, one directive per line:
//
//   # comment
//   format_version 1
//   name <rest of line>          (optional)
//   seed <unsigned integer>      (optional)
//   generator <rest of line>     (optional)
//   n <bidders>
//   m <items>
//   weights
//   <n lines of m nonnegative decimal integers>
struct InstanceFile {
  int format_version = kFormatVersion;
  Instance instance;
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> generator;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

InstanceFile parse_instance(std::istream& in);
InstanceFile read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const InstanceFile& file);
// Throws std::runtime_error when the file cannot be written.
void write_instance_file(const std::string& path, const InstanceFile& file);

enum class Distribution { kUniform, kGeometric, kAdversarialTies };
std::string_view distribution_name(Distribution d);
Distribution parse_distribution(std::string_view name);

// Reproducible random instance. Uniform draws from [0, weight_max];
// geometric draws Geometric(1/2) clipped at weight_max; adversarial-ties
// draws from {0, 1, 2} clipped at weight_max so that ties are frequent.
InstanceFile generate_instance(int n, int m, Weight weight_max,
                               Distribution distribution, std::uint64_t seed);

// Report fragments. Rationals are emitted as exact "p/q" strings.
nlohmann::json rational_json(const Rational& r);
nlohmann::json to_json(const Matching& m);
nlohmann::json to_json(const AuctionOutcome& outcome);
nlohmann::json to_json(const IndependencyReport& report);
nlohmann::json to_json(const RecurrenceReport& report);
nlohmann::json to_json(const AvailabilityReport& report);
nlohmann::json to_json(const RatioReport& report);
nlohmann::json to_json(const TruthfulnessVerdict& verdict);
nlohmann::json to_json(const Manipulation& witness);
nlohmann::json multiplicity_table_json(const StateTable& table);

// Writes `report` as indented JSON with a trailing newline. "-" means stdout.
void write_report(const std::string& path, const nlohmann::json& report);

}  // namespace onlinematch

#endif  // ONLINEMATCH_IO_H_
