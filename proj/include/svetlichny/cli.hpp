// Copyright 2026 The Svetlichny Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace svetlichny::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalidArguments = 2,
  kResourceLimit = 3,
  kInconsistency = 4,
};

enum class Command { generate, bound, quantum, visibility, facet, optimize };

struct RunConfig {
  Command command = Command::generate;
  int m = 3;
  int d = 2;
  std::string form;  ///< empty: correlator for d = 2, bracket otherwise
  std::string model = "bipartition";
  std::optional<std::string> partition;
  std::string scenario = "reference";
  std::optional<std::string> expr_path;
  std::optional<std::string> out_path;
  std::string format = "table";
  std::uint64_t cap = 10'000'000;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  bool sampled = false;
  std::uint64_t samples = 200'000;
  std::string family;
  int restarts = 10;
  bool verbose = false;
};

/// Runs one command. `args` includes the program name. Reports go to `out` (or
/// --out), diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace svetlichny::cli
