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

// End-to-end acceptance run: one PASS/FAIL line per criterion, each with a
// wall-time limit. Exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "sslab/experiments.hpp"

#ifndef SSLAB_CLI_PATH
#error "SSLAB_CLI_PATH must name the CLI binary"
#endif

namespace {

using namespace sslab;

constexpr std::uint64_t kSeed = 20261015;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Runs a registered experiment in-process and summarizes failed checks.
Outcome via_experiment(const std::string& name, const std::map<std::string, std::string>& params,
                       const std::string& summary_metric = "") {
  const auto r = run_experiment(*find_experiment(name), params, kSeed, 1);
  Outcome o;
  o.pass = r.pass();
  int failed = 0;
  std::string first;
  for (const auto& c : r.checks)
    if (!c.pass && failed++ == 0) first = c.id + " lhs=" + fmt("%.6g", c.lhs) + " rhs=" + fmt("%.6g", c.rhs);
  o.detail = std::to_string(r.checks.size()) + " checks";
  if (!summary_metric.empty() && r.metrics.contains(summary_metric))
    o.detail += ", " + summary_metric + "=" + r.metrics.at(summary_metric).dump();
  if (failed) o.detail += ", " + std::to_string(failed) + " failed (first: " + first + ")";
  return o;
}

Outcome c1_haar_approximant() {
  double worst = 0;
  for (int d = 4; d <= 16; ++d)
    for (int k = 1; k <= 3; ++k) {
      const double v = trace_norm(haar_moment_exact(d, k).matrix - haar_moment_approx(d, k).matrix);
      worst = std::max(worst, std::abs(v - (1.0 - falling(d, k) / falling(d + k - 1, k))));
    }
  return {worst <= 1e-8, fmt("max |2 TD - closed form| = %.3g over d=4..16, k=1..3", worst)};
}

Outcome c2_moment_oracle() {
  double worst = 0;
  int cases = 0;
  for (int d = 1; d <= 8; ++d)
    for (int s = 1; s <= d; ++s)
      for (int k = 1; k <= 3; ++k) {
        const auto lib = subset_moment_exact(d, s, k);
        worst = std::max(worst, max_abs_diff(lib.matrix.matrix(), oracle::subset_moment(d, s, k)));
        ++cases;
      }
  return {worst <= 1e-12, fmt("%g cases, max entry diff %.3g", cases, worst)};
}

Outcome c3_haar_vs_subset() {
  double worst_ratio = 0, worst_cross = 0;
  int crossed = 0;
  for (int d : {16, 32, 64})
    for (int s : {4, 8})
      for (int k : {2, 3}) {
        const auto h = haar_subset_trace_norm(d, s, k);
        worst_ratio = std::max(worst_ratio, h.trace_norm / haar_subset_bound_shape(d, s, k));
        if (std::pow(d, k) <= 4096) {
          const double dense = trace_norm(haar_moment_exact(d, k).matrix - subset_moment_exact(d, s, k).matrix);
          worst_cross = std::max(worst_cross, std::abs(dense - h.trace_norm));
          ++crossed;
        }
      }
  return {worst_ratio <= 8 && worst_cross <= 1e-9,
          fmt("max norm/shape = %.4f (limit 8); %g points cross-checked densely, max diff %.2g", worst_ratio, crossed,
              worst_cross)};
}

Outcome c4_johnson() {
  double worst = 0, ones_dev = 0;
  int cases = 0;
  for (int d = 1; d <= 10; ++d)
    for (int k = 0; k <= std::min(d, 3); ++k) {
      const auto n = binomial(d, k);
      Matrix<double> sum(n, n);
      for (int t = 0; t <= k; ++t) {
        const JohnsonParams p{d, k, t};
        const auto m = johnson_matrix(p);
        sum += m.matrix();
        const auto brute = hermitian_eigenvalues(m);
        const auto closed = johnson_spectrum(p).eigenvalue_multiset();
        if (brute.size() != closed.size()) return {false, fmt("size mismatch at d=%g k=%g t=%g", d, k, t)};
        for (std::size_t i = 0; i < brute.size(); ++i) worst = std::max(worst, std::abs(brute[i] - closed[i]));
        ++cases;
      }
      for (double x : sum.data()) ones_dev = std::max(ones_dev, std::abs(x - 1));
    }
  return {worst <= 1e-8 && ones_dev == 0,
          fmt("%g (d,k,t) cases, max eigenvalue diff %.3g, sum_t D_t deviation %.3g", cases, worst, ones_dev)};
}

Outcome c16_reproducible() {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "sslab_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto run = [&](const std::string& args, const std::string& file) {
    const std::string cmd = "'" + std::string(SSLAB_CLI_PATH) + "' " + args + " --out '" + (dir / file).string() + "'";
    const int raw = std::system(cmd.c_str());
    std::ifstream is(dir / file, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return std::make_pair(WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, ss.str());
  };
  bool ok = true;
  int compared = 0;
  for (const std::string args :
       {"-e gapsupp-ip --param trials=300 --seed 5", "-e demerlin --param instances=20 --seed 5",
        "-e ma-bound --param N_max=6 --param min_partitions=1 --seed 5", "-e prs-attacks --param collision_trials=500 "
        "--param overlap_trials=500 --param max_null_advantage=1 --param min_overlap_advantage=0 --seed 5"}) {
    const auto a = run(args + " --jobs 1", "a.json");
    const auto b = run(args + " --jobs 1", "b.json");
    const auto c = run(args + " --jobs 4", "c.json");
    const auto d = run(args + " --jobs 2 --format csv", "d.csv");
    const auto e = run(args + " --jobs 1 --format csv", "e.csv");
    ok = ok && a.first == 0 && !a.second.empty() && a.second == b.second && a.second == c.second &&
         d.second == e.second && !d.second.empty();
    compared += 4;
  }
  fs::remove_all(dir);
  return {ok, fmt("%g experiment/format pairs byte-compared across runs and --jobs 1/2/4", compared)};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Haar approximant exactness", 10, c1_haar_approximant},
      {2, "subset moment equals brute-force enumeration", 30, c2_moment_oracle},
      {3, "Haar vs subset trace norm within 8x the shape bound", 120, c3_haar_vs_subset},
      {4, "Johnson spectra match brute force; D_t sum to all-ones", 20, c4_johnson},
      {5, "dense regime: flattened moments equal, Monte Carlo within 5 SE", 60,
       [] { return via_experiment("dense-regime", {{"d", "8,16"}, {"k", "2"}, {"trials", "10000"}}); }},
      {6, "support halving calibration, d <= 10", 30,
       [] { return via_experiment("halving-scan", {{"d_max", "10"}, {"delta", "0.001,0.0025,0.005,0.01,0.02"}},
                                  "measured_constant"); }},
      {7, "certification pipeline: honest accepted, adversaries rejected", 60,
       [] { return via_experiment("support-cert", {{"d_max", "16"}, {"m_sampled", "200"}, {"trials", "200"}}); }},
      {8, "symmetry test exactness", 1, [] { return via_experiment("symmetry-test", {{"trials", "1000"}}); }},
      {9, "divergence contraction and chain bound", 10,
       [] { return via_experiment("divergence-contraction", {{"N", "6"}, {"s", "3"}, {"trials", "100"}}); }},
      {10, "MA pipeline: exact TV within sqrt(tp/2s) on >= 200 partitions", 120,
       [] { return via_experiment("ma-bound", {}, "max_tv_over_bound"); }},
      {11, "interactive support-size tester", 30,
       [] { return via_experiment("gapsupp-ip", {{"N", "30000"}, {"k", "60"}, {"trials", "1000"}}, "gap"); }},
      {12, "de-Merlinization completeness and soundness", 60,
       [] { return via_experiment("demerlin", {{"instances", "200"}}); }},
      {13, "quantum union bound", 30, [] { return via_experiment("union-bound", {{"trials", "10000"}}); }},
      {14, "PRS attacks delimit the tight regime", 60, [] { return via_experiment("prs-attacks", {}); }},
      {15, "pseudoentanglement cap and near-maximal Haar entropy", 60,
       [] { return via_experiment("cut-entropy", {{"n", "8"}, {"keys", "50"}, {"haar_samples", "20"}}); }},
      {16, "byte-identical CLI output independent of --jobs", 60, c16_reproducible},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s  criterion %2d  %s  [%.2f s / %.0f s%s]  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.limit_s, in_time ? "" : " EXCEEDED", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
