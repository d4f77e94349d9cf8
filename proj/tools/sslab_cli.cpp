// Copyright 2026 The sslab Authors.
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

// Command-line runner for the registered experiments.
//
//   sslab_cli --list
//   sslab_cli --experiment haar-vs-subset --param d=32 --param s=8 --seed 1
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or schema error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "sslab/experiments.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

void print_listing(bool as_json) {
  using sslab::Json;
  Json all = Json::array();
  for (const auto& e : sslab::registry()) {
    Json schema = Json::array();
    for (const auto& p : e.schema)
      schema.push_back({{"key", p.key}, {"type", sslab::to_string(p.type)}, {"default", p.default_value}, {"help", p.help}});
    all.push_back({{"name", e.name}, {"description", e.description}, {"anchor", e.anchor}, {"stochastic", e.stochastic},
                   {"params", schema}});
  }
  if (as_json) {
    std::cout << all.dump(2) << "\n";
    return;
  }
  for (const auto& e : sslab::registry()) {
    std::cout << e.name << (e.stochastic ? "  [seeded]" : "") << "\n  " << e.description << "\n  anchor: " << e.anchor
              << "\n";
    for (const auto& p : e.schema) {
      std::cout << "    " << p.key << " (" << sslab::to_string(p.type) << ", default " << p.default_value << ")";
      if (!p.help.empty()) std::cout << "  " << p.help;
      std::cout << "\n";
    }
  }
}

// Writes through a temporary file in the target directory, then renames.
void write_atomic(const std::filesystem::path& path, const std::string& text) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << text;
    os.flush();
    if (!os) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run subset-state experiments and emit result tables."};
  std::string name;
  std::vector<std::string> raw_params;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  unsigned jobs = 1;
  bool list = false, timing = false;
  app.add_option("--experiment,-e", name, "experiment name");
  app.add_option("--param,-p", raw_params, "key=value, repeatable");
  app.add_option("--seed", seed, "64-bit seed, required for seeded experiments");
  app.add_option("--out,-o", out, "output file; defaults to $SSLAB_OUT_DIR/<name>.<format> or stdout");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs,-j", jobs, "worker threads; results do not depend on it")->check(CLI::Range(1u, 256u));
  app.add_flag("--list", list, "list experiments with their parameters");
  app.add_flag("--timing", timing, "record wall time (otherwise wall_ms is null)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (list) {
    print_listing(format == "json" && app.count("--format") > 0);
    return kExitPass;
  }
  if (name.empty()) {
    std::cerr << "error: --experiment is required (or --list)\nregistered: " << sslab::registered_names() << "\n";
    return kExitUsage;
  }
  const auto* exp = sslab::find_experiment(name);
  if (!exp) {
    std::cerr << "error: unknown experiment '" << name << "'\nregistered: " << sslab::registered_names() << "\n";
    return kExitUsage;
  }

  std::map<std::string, std::string> overrides;
  std::vector<std::string> malformed;
  for (const auto& kv : raw_params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      malformed.push_back(kv);
      continue;
    }
    const auto key = kv.substr(0, eq);
    if (overrides.count(key)) malformed.push_back(kv + " (repeated key)");
    overrides[key] = kv.substr(eq + 1);
  }
  if (!malformed.empty()) {
    std::cerr << "error: malformed --param values, expected key=value:";
    for (const auto& m : malformed) std::cerr << " " << m;
    std::cerr << "\n";
    return kExitUsage;
  }

  sslab::ExperimentResult result;
  try {
    result = sslab::run_experiment(*exp, overrides, seed, jobs, timing);
  } catch (const sslab::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string text = format == "csv" ? sslab::to_csv(result) : sslab::to_json(result).dump(2) + "\n";
  std::string target = out;
  if (target.empty()) {
    if (const char* dir = std::getenv("SSLAB_OUT_DIR"); dir && *dir)
      target = (std::filesystem::path(dir) / (name + "." + format)).string();
  }
  try {
    if (target.empty() || target == "-")
      std::cout << text;
    else
      write_atomic(target, text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!result.pass()) {
    for (const auto& c : result.checks)
      if (!c.pass) std::cerr << "check failed: " << c.id << " (lhs " << c.lhs << ", rhs " << c.rhs << ")\n";
    return kExitCheckFailed;
  }
  return kExitPass;
}
