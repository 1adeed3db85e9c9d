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

#include <filesystem>
#include <string>

#include "cli_util.h"
#include "doctest.h"

namespace onlinematch {
namespace {

using testing::run_cli;
using testing::scratch_dir;
using testing::slurp;

namespace fs = std::filesystem;

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

struct Scratch {
  fs::path dir = scratch_dir("cli");
  ~Scratch() { fs::remove_all(dir); }
};

TEST_CASE("every command is byte-for-byte reproducible") {
  Scratch s;
  const fs::path inst = s.dir / "inst.txt";
  REQUIRE(run_cli("generate --n 6 --m 2 --weight-max 9 --seed 4 --no-timestamp --out " +
                  q(inst)) == 0);
  const std::string commands[] = {
      "generate --n 6 --m 2 --weight-max 9 --seed 4 --no-timestamp",
      "run " + q(inst) + " --seed 8 --no-timestamp",
      "run " + q(inst) + " --order 5,4,3,2,1,0 --variant alg1 --no-timestamp",
      "verify " + q(inst) + " --k 2 --seed 3 --checks all --no-timestamp",
      "montecarlo " + q(inst) + " --trials 500 --seed 2 --threads 3 --no-timestamp",
  };
  int index = 0;
  for (const std::string& command : commands) {
    const fs::path a = s.dir / ("a" + std::to_string(index));
    const fs::path b = s.dir / ("b" + std::to_string(index));
    ++index;
    REQUIRE_MESSAGE(run_cli(command + " --out " + q(a)) == 0, command);
    REQUIRE(run_cli(command + " --out " + q(b)) == 0);
    CHECK_MESSAGE(slurp(a) == slurp(b), command);
    CHECK(!slurp(a).empty());
  }
}

TEST_CASE("exit codes") {
  Scratch s;
  const fs::path inst = s.dir / "inst.txt";
  REQUIRE(run_cli("generate --n 5 --m 2 --seed 1 --out " + q(inst)) == 0);
  const fs::path out = s.dir / "out.json";
  const std::string o = " --out " + q(out);

  CHECK(run_cli("run " + q(inst) + " --order 0,1,2" + o) == 2);
  CHECK(run_cli("run " + q(inst) + " --order 0,1,2,3,3" + o) == 2);
  CHECK(run_cli("run " + q(inst) + " --k 1" + o) == 2);
  CHECK(run_cli("run " + q(s.dir / "missing.txt") + o) == 2);
  CHECK(run_cli("run " + q(inst) + " --variant alg9" + o) == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("verify " + q(inst) + " --checks nonsense" + o) == 2);

  // Undersampling breaks independency on this instance.
  const fs::path skewed = s.dir / "skewed.txt";
  {
    std::ofstream f(skewed);
    f << "format_version 1\nn 6\nm 3\nweights\n0 2 2\n2 0 1\n0 1 0\n0 0 3\n1 3 0\n1 1 2\n";
  }
  CHECK(run_cli("verify " + q(skewed) + " --k 1 --force --checks independency" + o) == 1);
  CHECK(run_cli("verify " + q(skewed) + " --k 3 --checks independency" + o) == 0);
}

}  // namespace
}  // namespace onlinematch
