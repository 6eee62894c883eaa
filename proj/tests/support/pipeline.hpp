// Copyright 2026 The chipvuln Authors.
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
#pragma once

#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "chipvuln/cli.hpp"
#include "corpus.hpp"

namespace chipvuln::testing {

struct CliRun {
  int code = 0;
  std::string out, err;
};

inline cli::Environment fake_environment(std::map<std::string, std::string> vars = {}) {
  return [vars = std::move(vars)](const std::string& name) -> std::optional<std::string> {
    auto it = vars.find(name);
    if (it == vars.end()) return std::nullopt;
    return it->second;
  };
}

inline CliRun run_cli(const std::vector<std::string>& args, const cli::Environment& env = fake_environment()) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(args, out, err, env);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// ingest, augment and link the toyset into store; returns the first failing step.
inline CliRun build_toyset_store(const std::filesystem::path& store) {
  const std::vector<std::string> common = {"--data-dir", data_dir().string(), "--store", store.string()};
  auto with = [&](std::vector<std::string> args) {
    args.insert(args.begin(), common.begin(), common.end());
    return args;
  };
  CliRun r = run_cli(with({"ingest", "--retrieved-at", corpus_retrieved_at().iso(), toyset_dir().string()}));
  if (r.code != cli::kOk) return r;
  r = run_cli(with({"augment"}));
  if (r.code != cli::kOk) return r;
  return run_cli(with({"link"}));
}

inline std::filesystem::path toyset_report_golden() { return data_dir() / "golden" / "toyset-report.json"; }

}  // namespace chipvuln::testing
