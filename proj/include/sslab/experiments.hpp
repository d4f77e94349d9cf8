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

// Named, seeded experiments with parameter schemas and pass/fail checks.
// Every random draw comes from a stream derived from (seed, stream, unit),
// and partial results are combined in unit order, so the output does not
// depend on the worker count.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sslab/combinatorics.hpp"
#include "sslab/core.hpp"
#include "sslab/json_io.hpp"

namespace sslab {

// Bad experiment names or parameters; the runner maps this to a usage exit.
class SchemaError : public Error {
 public:
  using Error::Error;
};

enum class ParamType { kInt, kReal, kString, kIntList, kRealList };

inline const char* to_string(ParamType t) {
  switch (t) {
    case ParamType::kInt:
      return "int";
    case ParamType::kReal:
      return "real";
    case ParamType::kString:
      return "string";
    case ParamType::kIntList:
      return "int-list";
    case ParamType::kRealList:
      return "real-list";
  }
  return "unknown";
}

struct ParamSpec {
  std::string key;
  ParamType type = ParamType::kInt;
  std::string default_value;
  std::string help;
};

namespace detail {

inline bool parse_int(const std::string& s, std::int64_t& out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == s.size();
}

inline bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stod(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == s.size() && std::isfinite(out);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!s.empty() && s.back() == ',') out.push_back("");
  return out;
}

// Parses one value by type; nullopt when malformed.
inline std::optional<Json> parse_param(ParamType type, const std::string& raw) {
  std::int64_t i = 0;
  double x = 0;
  switch (type) {
    case ParamType::kInt:
      if (!parse_int(raw, i)) return std::nullopt;
      return Json(i);
    case ParamType::kReal:
      if (!parse_real(raw, x)) return std::nullopt;
      return Json(x);
    case ParamType::kString:
      return Json(raw);
    case ParamType::kIntList: {
      Json arr = Json::array();
      for (const auto& item : split_list(raw)) {
        if (!parse_int(item, i)) return std::nullopt;
        arr.push_back(i);
      }
      if (arr.empty()) return std::nullopt;
      return arr;
    }
    case ParamType::kRealList: {
      Json arr = Json::array();
      for (const auto& item : split_list(raw)) {
        if (!parse_real(item, x)) return std::nullopt;
        arr.push_back(x);
      }
      if (arr.empty()) return std::nullopt;
      return arr;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Resolved, typed parameter values.
class Params {
 public:
  Params() = default;
  explicit Params(Json values) : values_(std::move(values)) {}

  const Json& json() const { return values_; }
  int integer(const std::string& key) const {
    const auto v = values_.at(key).get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
      throw SchemaError("parameter out of range: " + key);
    return static_cast<int>(v);
  }
  double real(const std::string& key) const { return values_.at(key).get<double>(); }
  std::string str(const std::string& key) const { return values_.at(key).get<std::string>(); }
  std::vector<int> ints(const std::string& key) const {
    std::vector<int> out;
    for (const auto& v : values_.at(key)) out.push_back(static_cast<int>(v.get<std::int64_t>()));
    return out;
  }
  std::vector<double> reals(const std::string& key) const { return values_.at(key).get<std::vector<double>>(); }

 private:
  Json values_ = Json::object();
};

struct Check {
  std::string id;
  double lhs = 0, rhs = 0;
  bool pass = false;
};

// NaN never passes.
inline Check check_le(std::string id, double lhs, double rhs) { return {std::move(id), lhs, rhs, lhs <= rhs}; }
inline Check check_ge(std::string id, double lhs, double rhs) { return {std::move(id), lhs, rhs, lhs >= rhs}; }

struct RunContext {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

struct ExperimentResult {
  std::string name;
  Json config = Json::object();
  Json metrics = Json::object();  // metrics["grid"] holds one object per grid point
  std::vector<Check> checks;
  std::optional<double> wall_ms;

  bool pass() const {
    if (checks.empty()) return false;
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct Experiment {
  std::string name;
  std::string description;
  std::string anchor;  // the result the experiment exercises
  std::vector<ParamSpec> schema;
  bool stochastic = false;
  std::function<void(const Params&, const RunContext&, ExperimentResult&)> run;
};

namespace detail {

inline std::string grid_id(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    os << (first ? "" : ",") << k << "=" << v;
    first = false;
  }
  return os.str();
}

// Runs fn(i) for i < n on up to `jobs` workers; fn must write only slot i.
template <class T, class Fn>
std::vector<T> map_units(std::size_t n, unsigned jobs, Fn fn) {
  std::vector<T> out(n);
  parallel_for(n, jobs, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

// ---------------------------------------------------------------- moments

inline void run_haar_approximant(const Params& p, const RunContext&, ExperimentResult& r) {
  const int dmin = p.integer("d_min"), dmax = p.integer("d_max"), kmax = p.integer("k_max");
  if (dmin < 1 || dmax < dmin || kmax < 1) throw SchemaError("need 1 <= d_min <= d_max and k_max >= 1");
  double worst = 0;
  for (int d = dmin; d <= dmax; ++d)
    for (int k = 1; k <= kmax; ++k) {
      const double computed = trace_norm(haar_moment_exact(d, k).matrix - haar_moment_approx(d, k).matrix);
      const double closed = haar_approx_distance_closed_form(d, k);
      const double diff = std::abs(computed - closed);
      worst = std::max(worst, diff);
      r.metrics["grid"].push_back({{"d", d}, {"k", k}, {"twice_trace_distance", computed}, {"closed_form", closed},
                                   {"abs_diff", diff}});
      r.checks.push_back(check_le("closed-form:" + grid_id({{"d", d}, {"k", k}}), diff, 1e-8));
    }
  r.metrics["max_abs_diff"] = worst;
}

inline void run_haar_vs_subset(const Params& p, const RunContext&, ExperimentResult& r) {
  const auto ds = p.ints("d"), ss = p.ints("s"), ks = p.ints("k");
  const double factor = p.real("bound_factor");
  const auto dense_max = static_cast<std::size_t>(p.integer("dense_max"));
  double worst_ratio = 0, worst_td = 0;
  for (int d : ds)
    for (int s : ss)
      for (int k : ks) {
        if (s < 1 || s > d || k < 1) throw SchemaError("need 1 <= s <= d and k >= 1");
        const auto h = haar_subset_trace_norm(d, s, k);
        const double bound = haar_subset_bound_shape(d, s, k);
        const double ratio = h.trace_norm / bound;
        worst_ratio = std::max(worst_ratio, ratio);
        worst_td = std::max(worst_td, h.trace_norm / 2);
        const std::string id = grid_id({{"d", d}, {"s", s}, {"k", k}});
        Json row{{"d", d},
                 {"s", s},
                 {"k", k},
                 {"trace_norm", h.trace_norm},
                 {"trace_distance", h.trace_norm / 2},
                 {"bound", bound},
                 {"bound_ratio", ratio},
                 {"sym_dim", h.sym_dim},
                 {"rank", h.rank}};
        r.checks.push_back(check_le("shape-bound:" + id, h.trace_norm, factor * bound));
        const double dk = std::pow(static_cast<double>(d), k);
        if (dk <= static_cast<double>(dense_max)) {
          const double dense = trace_norm(haar_moment_exact(d, k).matrix - subset_moment_exact(d, s, k).matrix);
          row["dense_trace_norm"] = dense;
          r.checks.push_back(check_le("dense-route-agrees:" + id, std::abs(dense - h.trace_norm), 1e-9));
        }
        r.metrics["grid"].push_back(row);
      }
  r.metrics["trace_distance"] = worst_td;
  r.metrics["bound_ratio"] = worst_ratio;
}

inline void run_dense_regime(const Params& p, const RunContext& ctx, ExperimentResult& r) {
  const auto ds = p.ints("d");
  const int k = p.integer("k"), trials = p.integer("trials");
  const double pp = p.real("p_prime");
  if (!(pp > 0 && 10 * pp <= 1)) throw SchemaError("p_prime must lie in (0, 0.1]");
  if (k < 1 || trials < 2) throw SchemaError("need k >= 1 and trials >= 2");
  const double z = p.real("z");
  // Units: (d index, ensemble).
  const auto units = map_units<MonteCarloMoment>(2 * ds.size(), ctx.jobs, [&](std::size_t u) {
    const auto prm = DenseEnsembleParams::matched(ds[u / 2], 8 * pp, 2 * pp);
    Rng rng(derive_seed(ctx.seed, 1, u));
    const auto which = u % 2 == 0 ? DenseEnsemble::kE0 : DenseEnsemble::kE1;
    return dense_moment_monte_carlo(prm, which, k, trials, rng, DenseNormalization::kFlattened);
  });
  for (std::size_t di = 0; di < ds.size(); ++di) {
    const int d = ds[di];
    const auto prm = DenseEnsembleParams::matched(d, 8 * pp, 2 * pp);
    const std::string id = grid_id({{"d", d}, {"k", k}});
    const auto e0 = dense_flattened_moment(prm, DenseEnsemble::kE0, k);
    const auto e1 = dense_flattened_moment(prm, DenseEnsemble::kE1, k);
    const double gap = max_abs_diff(e0.matrix.matrix(), e1.matrix.matrix());
    r.checks.push_back(check_le("matched:" + id, prm.match_defect(), 1e-12));
    r.checks.push_back(check_le("flattened-equal:" + id, gap, 1e-12));
    Json row{{"d", d}, {"k", k}, {"p", prm.p}, {"s", prm.s}, {"t", prm.t}, {"flattened_max_diff", gap}};
    for (int w = 0; w < 2; ++w) {
      const auto& mc = units[2 * di + w];
      const char* name = w == 0 ? "E0" : "E1";
      double worst_z = 0;
      Json classes = Json::array();
      for (std::size_t c = 0; c < mc.class_l.size(); ++c) {
        const double ref = std::pow(prm.p, mc.class_l[c] - k) / std::pow(static_cast<double>(d), k);
        const double dev = std::abs(mc.class_mean[c] - ref);
        const double zc = mc.class_stderr[c] > 0 ? dev / mc.class_stderr[c] : (dev > 1e-12 ? INFINITY : 0.0);
        worst_z = std::max(worst_z, zc);
        classes.push_back({{"l", mc.class_l[c]}, {"mean", mc.class_mean[c]}, {"stderr", mc.class_stderr[c]},
                           {"flattened", ref}});
        r.checks.push_back(check_le(std::string("monte-carlo:") + name + ":" + id + ",l=" + std::to_string(mc.class_l[c]),
                                    dev, z * mc.class_stderr[c]));
      }
      row[std::string(name) + "_classes"] = classes;
      row[std::string(name) + "_max_z"] = num(worst_z);
    }
    r.metrics["grid"].push_back(row);
  }
  r.metrics["trials"] = trials;
}

// ---------------------------------------------------------------- johnson

inline void run_johnson_spectra(const Params& p, const RunContext&, ExperimentResult& r) {
  const JohnsonParams jp{p.integer("d"), p.integer("k"), p.integer("t")};
  jp.validate();
  const auto sp = johnson_spectrum(jp);
  const auto tn = johnson_trace_norm(jp);
  r.metrics = to_json(sp, tn);
  std::int64_t msum = 0;
  for (auto m : sp.mult) msum += m;
  r.checks.push_back(check_le("multiplicities-sum", std::abs(static_cast<double>(msum - binomial(jp.d, jp.k))), 0));
  if (binomial(jp.d, jp.k) <= p.integer("brute_max")) {
    const auto brute = hermitian_eigenvalues(johnson_matrix(jp));
    const auto closed = sp.eigenvalue_multiset();
    double worst = brute.size() == closed.size() ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < std::min(brute.size(), closed.size()); ++i)
      worst = std::max(worst, std::abs(brute[i] - closed[i]));
    r.checks.push_back(check_le("brute-force-multiset", worst, 1e-8));
    Matrix<double> sum(binomial(jp.d, jp.k), binomial(jp.d, jp.k));
    for (int t = 0; t <= jp.k; ++t) sum += johnson_matrix({jp.d, jp.k, t}).matrix();
    double dev = 0;
    for (double x : sum.data()) dev = std::max(dev, std::abs(x - 1.0));
    r.checks.push_back(check_le("basis-sums-to-all-ones", dev, 0));
  }
}

// ---------------------------------------------------------------- quantum protocols

inline void run_halving_scan(const Params& p, const RunContext& ctx, ExperimentResult& r) {
  const int dmax = p.integer("d_max");
  const double mu = p.real("mu"), w = p.real("width_const");
  const auto deltas = p.reals("delta");
  if (dmax < 1 || dmax > 12) throw SchemaError("d_max must lie in [1, 12]");
  const auto reps = map_units<HalvingScanReport>(deltas.size(), ctx.jobs,
                                                 [&](std::size_t i) { return halving_scan(dmax, mu, deltas[i], w); });
  double constant = 0;
  for (const auto& h : reps) {
    if (h.delta > 0) constant = std::max(constant, h.max_ratio_deviation / std::pow(h.delta, 0.25));
    r.metrics["grid"].push_back({{"delta", h.delta},
                                 {"width", h.width},
                                 {"region_vectors", h.region_vectors},
                                 {"literal_triples", h.literal_triples},
                                 {"accepted_triples", h.accepted_triples},
                                 {"counterexamples", h.counterexamples},
                                 {"max_ratio_deviation", h.max_ratio_deviation}});
    r.checks.push_back(check_le("no-counterexamples:" + grid_id({{"delta", h.delta}}), h.counterexamples, 0));
  }
  r.metrics["measured_constant"] = constant;
}

inline void run_symmetry_test(const Params& p, const RunContext& ctx, ExperimentResult& r) {
  const int d = p.integer("d"), trials = p.integer("trials");
  if (d < 2 || trials < 1) throw SchemaError("need d >= 2 and trials >= 1");
  Rng rng(derive_seed(ctx.seed, 1));
  for (int m : p.ints("m")) {
    if (m < 2 || m % 2 != 0 || m > 10) throw SchemaError("m must be even and in [2, 10]");
    const auto psi = haar_sample(d, rng);
    const auto tr = symmetry_test(StateCollection::copies(psi, m), rng, ProtocolMode::kExact);
    const double acc = tr.stats.at("accept_probability");
    r.metrics["grid"].push_back({{"m", m}, {"accept_probability", acc}, {"matchings", tr.stats.at("matchings")}});
    r.checks.push_back(check_le("zero-tilted-accepts:" + grid_id({{"m", m}}), std::abs(1 - acc), 1e-12));
  }
  const auto a = StateVector::basis(d, 0), b = StateVector::basis(d, 1);
  const StateCollection aabb({a, a, b, b});
  const double half = symmetry_test(aabb, rng, ProtocolMode::kExact).stats.at("accept_probability");
  r.metrics["aabb_accept_probability"] = half;
  r.checks.push_back(check_le("aabb-exact-half", std::abs(half - 0.5), 1e-12));
  int acc = 0;
  for (int i = 0; i < trials; ++i) {
    Rng ri(derive_seed(ctx.seed, 2, i));
    acc += symmetry_test(aabb, ri, ProtocolMode::kSampled).accept;
  }
  const double rate = static_cast<double>(acc) / trials;
  const double se = std::sqrt(0.25 / trials);
  r.metrics["aabb_sampled_rate"] = rate;
  r.checks.push_back(check_le("aabb-sampled-within-5se", std::abs(rate - 0.5), 5 * se));
}

// Targets in [d] of size s, at most `limit` of them spread evenly by rank.
inline std::vector<SubsetSpec> spread_targets(int d, int s, std::int64_t limit) {
  const SubsetIndexer idx(d, s);
  const std::int64_t n = idx.count();
  std::vector<SubsetSpec> out;
  const std::int64_t take = limit <= 0 ? n : std::min(n, limit);
  for (std::int64_t i = 0; i < take; ++i) out.emplace_back(d, idx.unrank(i * n / take));
  return out;
}

inline void run_support_cert(const Params& p, const RunContext& ctx, ExperimentResult& r) {
  const int dmax = p.integer("d_max");
  if (dmax < 2 || dmax > 16 || !is_power_of_two(dmax)) throw SchemaError("d_max must be a power of two in [2, 16]");
  CertParams exact;
  exact.m = p.integer("m_exact");
  exact.gamma = p.real("gamma");
  exact.mode = ProtocolMode::kExact;
  if (exact.m < 2 || exact.m % 2 != 0) throw SchemaError("m_exact must be even and >= 2");
  const std::int64_t per_size = p.integer("targets_per_size");

  // Honest proofs for every target with d <= d_max.
  std::vector<SubsetSpec> honest;
  for (int d = 2; d <= dmax; d *= 2)
    for (int s = 1; s <= d; s *= 2)
      for (auto& t : spread_targets(d, s, per_size)) honest.push_back(std::move(t));
  const auto ok = map_units<char>(honest.size(), ctx.jobs, [&](std::size_t i) -> char {
    Rng rng(derive_seed(ctx.seed, 1, i));
    return support_size_test(subset_state(honest[i]), honest_prover(honest[i], exact.m), exact, rng,
                             TestSelection::kRunAll)
        .accept;
  });
  std::int64_t accepted = 0;
  for (char c : ok) accepted += c;
  r.metrics["honest_targets"] = honest.size();
  r.metrics["honest_accepted"] = accepted;
  r.checks.push_back(check_ge("honest-all-accept", static_cast<double>(accepted), static_cast<double>(honest.size())));

  // Deterministic adversaries in exact mode, on targets at d = d_max.
  for (auto kind : {AdversaryKind::kWrongEll, AdversaryKind::kWrongFinal, AdversaryKind::kSkewedRatio}) {
    std::vector<SubsetSpec> targets;
    const int min_ell = kind == AdversaryKind::kSkewedRatio ? 2 : 1;
    for (int s = 1; s <= dmax >> min_ell; s *= 2)
      for (auto& t : spread_targets(dmax, s, per_size)) targets.push_back(std::move(t));
    const auto rej = map_units<char>(targets.size(), ctx.jobs, [&](std::size_t i) -> char {
      Rng rng(derive_seed(ctx.seed, 2 + static_cast<int>(kind), i));
      const auto pb = adversarial_prover(kind, targets[i], exact.m, rng);
      return !support_size_test(subset_state(targets[i]), pb, exact, rng, TestSelection::kRunAll).accept;
    });
    std::int64_t rejected = 0;
    for (char c : rej) rejected += c;
    const std::string name = to_string(kind);
    r.metrics["grid"].push_back({{"adversary", name},
                                 {"mode", "exact"},
                                 {"targets", targets.size()},
                                 {"rejected", rejected},
                                 {"rejection_rate", targets.empty() ? 0.0 : double(rejected) / targets.size()}});
    r.checks.push_back(check_ge(name + "-rejected", static_cast<double>(rejected), static_cast<double>(targets.size())));
  }

  // Non-tilted collections, sampled swap tests.
  CertParams sampled = exact;
  sampled.m = p.integer("m_sampled");
  sampled.mode = ProtocolMode::kSampled;
  if (sampled.m < 2 || sampled.m % 2 != 0) throw SchemaError("m_sampled must be even and >= 2");
  const int trials = p.integer("trials");
  if (trials < 1) throw SchemaError("trials must be positive");
  const SubsetSpec target(4, {0});
  const auto rej = map_units<char>(trials, ctx.jobs, [&](std::size_t i) -> char {
    Rng rng(derive_seed(ctx.seed, 9, i));
    const auto pb = adversarial_prover(AdversaryKind::kNonTilted, target, sampled.m, rng);
    return !support_size_test(subset_state(target), pb, sampled, rng, TestSelection::kRunAll).accept;
  });
  std::int64_t rejected = 0;
  for (char c : rej) rejected += c;
  const double rate = static_cast<double>(rejected) / trials;
  r.metrics["grid"].push_back({{"adversary", "non-tilted"},
                               {"mode", "sampled"},
                               {"targets", trials},
                               {"rejected", rejected},
                               {"rejection_rate", rate}});
  r.checks.push_back(check_ge("non-tilted-rejection", rate, p.real("min_rejection")));
}

inline void run_abs_distinguisher(const Params& p, const RunContext& ctx, ExperimentResult& r) {
  Rng rng(derive_seed(ctx.seed, 1));
  const auto rep = abs_transform_distinguisher(p.integer("d"), p.integer("trials"), rng);
  r.metrics = {{"d", rep.d},
               {"trials", rep.trials},
               {"subset_acceptance", rep.subset_acceptance},
               {"phase_acceptance", rep.phase_acceptance},
               {"phase_stderr", rep.phase_stderr},
               {"gap", rep.gap}};
  r.checks.push_back(check_le("subset-fixed-by-abs", std::abs(1 - rep.subset_acceptance), 1e-12));
  r.checks.push_back(check_ge("gap", rep.gap, p.real("min_gap")));
}

// ---------------------------------------------------------------- classical protocols

inline void run_gapsupp_ip(const Params& p, const RunContext& ctx, ExperimentResult& r) {
  const int N = p.integer("N"), k = p.integer("k"), trials = p.integer("trials");
  if (N < 3 || k < 1 || trials < 1) throw SchemaError("need N >= 3, k >= 1, trials >= 1");
  const GapSuppInstance inst{N, N / 3, 2 * N / 3};
  struct Arm {
    MerlinStrategy merlin;
    bool yes;
  };
  const std::vector<Arm> arms{{MerlinStrategy::kHonest, true},
                              {MerlinStrategy::kHonest, false},
                              {MerlinStrategy::kTruncate, false},
                              {MerlinStrategy::kRandomSubset, false}};
  double completeness = 0, soundness = 0;
  for (std::size_t a = 0; a < arms.size(); ++a) {
    const auto acc = map_units<char>(trials, ctx.jobs, [&](std::size_t i) -> char {
      Rng rng(derive_seed(ctx.seed, 1 + a, i));
      const auto mu = arms[a].yes ? inst.sample_yes(rng) : inst.sample_no(rng);
      return ip_gapsupp(mu, k, arms[a].merlin, rng).accept;
    });
    std::int64_t n = 0;
    for (char c : acc) n += c;
    const double rate = static_cast<double>(n) / trials;
    if (arms[a].yes)
      completeness = rate;
    else
      soundness = std::max(soundness, rate);
    r.metrics["grid"].push_back({{"merlin", to_string(arms[a].merlin)},
                                 {"instance", arms[a].yes ? "yes" : "no"},
                                 {"support", arms[a].yes ? inst.s : inst.ell},
                                 {"acceptance", rate}});
  }
  r.metrics["completeness"] = completeness;
  r.metrics["soundness"] = soundness;
  r.metrics["gap"] = completeness - soundness;
  r.checks.push_back(check_ge("completeness", completeness, p.real("min_completeness")));
  r.checks.push_back(check_le("soundness", soundness, p.real("max_soundness")));
  r.checks.push_back(check_ge("gap", completeness - soundness, p.real("min_gap")));
}

// Fiber families for the MA bound: hashed, membership bits, min-parity plus
// hashed bits, and a few tiny fibers against one huge one.
inline std::vector<CertificateFibers> ma_family(int N, int s, int pbits, int random_per_point, std::uint64_t seed) {
  std::vector<CertificateFibers> out;
  for (int i = 0; i < random_per_point; ++i)
    out.push_back(CertificateFibers::random(N, s, pbits, derive_seed(seed, 100 * N + 10 * s + pbits, i)));
  out.push_back(CertificateFibers::by_function(
      N, s, pbits,
      [&](const std::vector<int>& v) {
        int f = 0;
        for (int b = 0; b < pbits; ++b)
          if (std::binary_search(v.begin(), v.end(), b)) f |= 1 << b;
        return f;
      },
      "membership"));
  auto mp = CertificateFibers::min_parity(N, s);
  for (int b = 1; b < pbits; ++b) {
    const std::uint64_t h = derive_seed(seed, 7, b);
    mp = mp.refine(
        [h](const std::vector<int>& v) {
          std::uint64_t x = h;
          for (int e : v) x = splitmix64(x ^ static_cast<std::uint64_t>(e + 1));
          return static_cast<int>(x & 1);
        },
        "hash");
  }
  out.push_back(mp);
  out.push_back(CertificateFibers::by_function(
      N, s, pbits,
      [&](const std::vector<int>& v) {
        const auto rk = SubsetIndexer(N, s).rank(v);
        return rk < (std::int64_t{1} << pbits) - 1 ? static_cast<int>(rk) + 1 : 0;
      },
      "unbalanced"));
  return out;
}

inline void run_ma_bound(const Params& p, const RunContext& ctx, ExperimentResult& r) {
  const int nmin = p.integer("N_min"), nmax = p.integer("N_max");
  if (nmin < 2 || nmax > 8 || nmin > nmax) throw SchemaError("need 2 <= N_min <= N_max <= 8");
  std::vector<CertificateFibers> fam;
  std::vector<int> ts;
  for (int N = nmin; N <= nmax; ++N)
    for (int s : p.ints("s"))
      for (int t : p.ints("t"))
        for (int pb : p.ints("p")) {
          if (s < 1 || s >= N || t < 1 || t > s || pb < 0 || pb > 6) throw SchemaError("need 1 <= t <= s < N, 0 <= p <= 6");
          for (auto& f : ma_family(N, s, pb, p.integer("random_per_point"), ctx.seed)) {
            fam.push_back(std::move(f));
            ts.push_back(t);
          }
        }
  const auto reps = map_units<MaBoundReport>(fam.size(), ctx.jobs, [&](std::size_t i) {
    return ma_bound_pipeline(fam[i], ts[i]);
  });
  double worst = -INFINITY, worst_ratio = 0;
  int fail_pinsker = 0, fail_contraction = 0, fail_entropy = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& m = reps[i];
    worst = std::max(worst, m.tv - m.bound);
    if (m.bound > 0) worst_ratio = std::max(worst_ratio, m.tv / m.bound);
    fail_pinsker += !m.pinsker_ok;
    fail_contraction += !m.contraction_ok;
    fail_entropy += !m.entropy_ok;
    Json row = to_json(m);
    row["fibers"] = fam[i].label;
    r.metrics["grid"].push_back(row);
  }
  r.metrics["partitions"] = reps.size();
  r.metrics["max_tv_minus_bound"] = num(worst);
  r.metrics["max_tv_over_bound"] = worst_ratio;
  r.checks.push_back(check_ge("partitions", static_cast<double>(reps.size()), p.integer("min_partitions")));
  r.checks.push_back(check_le("tv-within-bound", worst, 0));
  r.checks.push_back(check_le("pinsker-failures", fail_pinsker, 0));
  r.checks.push_back(check_le("contraction-failures", fail_contraction, 0));
  r.checks.push_back(check_le("entropy-failures", fail_entropy, 0));
}

inline void run_divergence_contraction(const Params& p, const RunContext& ctx, ExperimentResult& r) {
  const int N = p.integer("N"), s = p.integer("s"), trials = p.integer("trials");
  if (s < 1 || s > N || N > 10 || trials < 1) throw SchemaError("need 1 <= s <= N <= 10 and trials >= 1");
  for (int t : p.ints("t")) {
    if (t < 1 || t > s) throw SchemaError("need 1 <= t <= s");
    const auto reps = map_units<ContractionReport>(trials, ctx.jobs, [&](std::size_t i) {
      Rng rng(derive_seed(ctx.seed, t, i));
      return divergence_contraction_check(SubsetDistribution::random(N, s, rng, i % 2 ? 0.3 : 1.0), t);
    });
    int violations = 0;
    double worst = 0;
    for (const auto& c : reps) {
      violations += !c.holds_tight;
      worst = std::max(worst, c.observed_ratio);
    }
    r.metrics["grid"].push_back({{"N", N}, {"s", s}, {"t", t}, {"trials", trials}, {"violations", violations},
                                 {"max_observed_ratio", worst}, {"factor", static_cast<double>(t) / s}});
    r.checks.push_back(check_le("contraction:" + grid_id({{"t", t}}), violations, 0));
  }
  // Point mass on {0, 1} in [4], one sample.
  const auto w = divergence_contraction_check(SubsetDistribution::point(4, {0, 1}), 1);
  r.metrics["worked_case"] = to_json(w);
  r.checks.push_back(check_le("worked-case", w.kl_lambda, 0.5 * std::log2(6.0)));
  r.checks.push_back(check_le("worked-case-one-bit", std::abs(w.kl_lambda - 1.0), 1e-12));

  const int cn = p.integer("chain_N"), cs = p.integer("chain_s");
  for (int i = 1; i < cs; ++i) {
    const auto reps = map_units<ChainClaimReport>(p.integer("chain_trials"), ctx.jobs, [&](std::size_t u) {
      Rng rng(derive_seed(ctx.seed, 50 + i, u));
      return chain_claim_check(SubsetDistribution::random(cn, cs, rng, u % 3 ? 0.6 : 1.0), i);
    });
    std::int64_t v = 0;
    double ex = -INFINITY;
    for (const auto& c : reps) {
      v += c.violations;
      ex = std::max(ex, c.max_excess);
    }
    r.metrics["grid"].push_back({{"chain_N", cn}, {"chain_s", cs}, {"i", i}, {"violations", v}, {"max_excess", num(ex)}});
    r.checks.push_back(check_le("chain-claim:" + grid_id({{"i", i}}), static_cast<double>(v), 0));
  }
}

// ---------------------------------------------------------------- de-Merlinization

inline std::vector<std::pair<int, int>> parse_configs(const std::string& s) {
  std::vector<std::pair<int, int>> out;
  for (const auto& item : split_list(s)) {
    const auto x = item.find('x');
    std::int64_t a = 0, b = 0;
    if (x == std::string::npos || !parse_int(item.substr(0, x), a) || !parse_int(item.substr(x + 1), b) || a < 1 ||
        b < 1 || a * b > 256)
      throw SchemaError("configs: expected a list like 4x2,8x4 with product <= 256");
    out.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  return out;
}

inline void run_demerlin(const Params& p, const RunContext& ctx, ExperimentResult& r) {
  const auto cfgs = parse_configs(p.str("configs"));
  const int n = p.integer("instances");
  const double emin = p.real("eps_min"), emax = p.real("eps_max");
  if (n < 1 || !(emin > 0 && emin <= emax && emax < 1)) throw SchemaError("need instances >= 1, 0 < eps_min <= eps_max < 1");
  struct Unit {
    DemerlinCheck comp, sound;
    double idem = 0, psd = INFINITY, comm = 0;
    std::string digest;
  };
  for (std::size_t c = 0; c < cfgs.size(); ++c) {
    const auto [ds, dp] = cfgs[c];
    const auto units = map_units<Unit>(n, ctx.jobs, [&](std::size_t i) {
      Unit u;
      Rng rng(derive_seed(ctx.seed, 1 + c, i));
      const double eps_c = emin + (emax - emin) * rng.uniform();
      const double eps_s = emin + (emax - emin) * rng.uniform();
      const auto sat = random_satisfiable_instance(ds, dp, eps_c, rng);
      const auto any = random_instance(ds, dp, rng);
      u.comp = demerlin_completeness_check(sat.verifier, eps_c, sat.rho, sat.witness);
      u.sound = demerlin_soundness_check(any.verifier, eps_s, any.rho);
      for (const auto* inst : {&sat, &any}) {
        const auto dm = demerlinize(inst->verifier, inst == &sat ? eps_c : eps_s);
        u.idem = std::max(u.idem, dm.idempotence_defect);
        u.comm = std::max(u.comm, dm.commutator_defect);
        u.psd = std::min(u.psd, dm.psd_margin);
      }
      std::uint64_t h = 0xcbf29ce484222325ULL;
      fnv_mix(h, sat.rho);
      fnv_mix(h, any.rho);
      u.digest = hex64(h);
      return u;
    });
    int comp_fail = 0, sound_fail = 0, skipped = 0;
    double comp_margin = INFINITY, sound_margin = INFINITY, idem = 0, psd = INFINITY, comm = 0;
    for (const auto& u : units) {
      comp_fail += !u.comp.pass;
      sound_fail += !u.sound.pass;
      skipped += u.comp.skipped;
      if (!u.comp.skipped) comp_margin = std::min(comp_margin, u.comp.margin);
      sound_margin = std::min(sound_margin, u.sound.margin);
      idem = std::max(idem, u.idem);
      comm = std::max(comm, u.comm);
      psd = std::min(psd, u.psd);
    }
    const std::string id = grid_id({{"d_state", ds}, {"d_proof", dp}});
    r.metrics["grid"].push_back({{"d_state", ds},
                                 {"d_proof", dp},
                                 {"instances", n},
                                 {"completeness_failures", comp_fail},
                                 {"completeness_skipped", skipped},
                                 {"min_completeness_margin", num(comp_margin)},
                                 {"soundness_failures", sound_fail},
                                 {"min_soundness_margin", num(sound_margin)},
                                 {"max_idempotence_defect", idem},
                                 {"max_commutator_defect", comm},
                                 {"min_psd_margin", psd},
                                 {"first_instance_digest", units.front().digest}});
    r.checks.push_back(check_le("completeness:" + id, comp_fail, 0));
    r.checks.push_back(check_le("completeness-hypothesis-met:" + id, skipped, 0));
    r.checks.push_back(check_le("soundness:" + id, sound_fail, 0));
    r.checks.push_back(check_le("idempotent:" + id, idem, 1e-8));
    r.checks.push_back(check_ge("psd-bound:" + id, psd, -1e-8));
  }
}

inline void run_union_bound(const Params& p, const RunContext& ctx, ExperimentResult& r) {
  const int nmax = p.integer("n_max"), dim = p.integer("dim"), trials = p.integer("trials");
  const auto epss = p.reals("eps");
  if (nmax < 1 || dim < 2 || dim > 64 || trials < 1) throw SchemaError("need n_max >= 1, 2 <= dim <= 64, trials >= 1");
  std::vector<std::pair<int, double>> grid;
  for (int n = 1; n <= nmax; ++n)
    for (double e : epss) {
      if (!(e >= 0 && e <= 1)) throw SchemaError("eps values must lie in [0, 1]");
      grid.emplace_back(n, e);
    }
  const auto reps = map_units<UnionBoundReport>(grid.size(), ctx.jobs, [&](std::size_t g) {
    const auto [n, e] = grid[g];
    Rng rng(derive_seed(ctx.seed, 1, g));
    const auto rho = haar_sample(dim, rng);
    std::vector<HermitianOperator<Cplx>> ms;
    for (int i = 0; i < n; ++i) {
      const auto u = random_unitary_with_first_column(rho, rng);
      std::vector<double> w(dim);
      w[0] = 1.0 - e;
      for (int j = 1; j < dim; ++j) w[j] = rng.uniform();
      ms.push_back(spectral_operator(u, w));
    }
    return union_bound_experiment(ms, rho, rng, trials);
  });
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto& u = reps[g];
    r.metrics["grid"].push_back(to_json(u));
    const std::string id = grid_id({{"n", grid[g].first}, {"eps", grid[g].second}});
    r.checks.push_back(check_le("empirical:" + id, u.empirical_reject, u.bound));
    r.checks.push_back(check_le("exact:" + id, u.exact_reject, u.bound + 1e-12));
  }
}

// ---------------------------------------------------------------- pseudorandom states

inline void run_prs_attacks(const Params& p, const RunContext& ctx, ExperimentResult& r) {
  const int dc = p.integer("collision_d"), sc = p.integer("collision_s"), copies = p.integer("copies");
  const int dov = p.integer("overlap_d"), ct = p.integer("collision_trials"), ot = p.integer("overlap_trials");
  if (!is_power_of_two(dc) || dc < 4) throw SchemaError("collision_d must be a power of two >= 4");
  if (sc < 1 || sc > dc || dov < 2 || dov % 2 != 0) throw SchemaError("need 1 <= collision_s <= collision_d, even overlap_d");
  const StateSource haar_c{SourceKind::kHaar, dc, 1}, haar_o{SourceKind::kHaar, dov, 1};
  const StateSource prs_small{SourceKind::kPrs, dc, sc}, prs_half{SourceKind::kPrs, dc, dc / 2};
  const StateSource sub_small{SourceKind::kSubset, dc, sc}, sub_dense{SourceKind::kSubset, dov, dov / 2};
  struct Job {
    std::string id;
    std::function<AttackReport(std::uint64_t)> run;
  };
  const std::vector<Job> jobs{
      {"collision:prs-vs-haar", [&](std::uint64_t sd) { return collision_attack(prs_small, haar_c, copies, sd, ct); }},
      {"collision:subset-vs-haar", [&](std::uint64_t sd) { return collision_attack(sub_small, haar_c, copies, sd, ct); }},
      {"collision:prs-half-vs-haar", [&](std::uint64_t sd) { return collision_attack(prs_half, haar_c, copies, sd, ct); }},
      {"collision:haar-vs-haar", [&](std::uint64_t sd) { return collision_attack(haar_c, haar_c, copies, sd, ct); }},
      {"overlap:subset-vs-haar", [&](std::uint64_t sd) { return overlap_attack(sub_dense, haar_o, sd, ot); }},
      {"overlap:haar-vs-haar", [&](std::uint64_t sd) { return overlap_attack(haar_o, haar_o, sd, ot); }},
  };
  const auto reps = map_units<AttackReport>(jobs.size(), ctx.jobs,
                                            [&](std::size_t i) { return jobs[i].run(derive_seed(ctx.seed, 10 + i)); });
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    Json row = to_json(reps[i]);
    row["id"] = jobs[i].id;
    r.metrics["grid"].push_back(row);
  }
  r.metrics["subset_collision_probability"] = subset_collision_probability(sc, copies);
  r.metrics["haar_collision_probability"] = haar_collision_probability(dc, copies);
  r.checks.push_back(check_ge("collision-advantage", reps[0].advantage, p.real("min_collision_advantage")));
  r.checks.push_back(check_ge("overlap-advantage", reps[4].advantage, p.real("min_overlap_advantage")));
  r.checks.push_back(check_le("collision-null", std::abs(reps[3].advantage), p.real("max_null_advantage")));
  r.checks.push_back(check_le("overlap-null", std::abs(reps[5].advantage), p.real("max_null_advantage")));
  r.checks.push_back(check_ge("tight-range-dichotomy", reps[0].advantage - reps[2].advantage, 0.5));
}

inline void run_cut_entropy(const Params& p, const RunContext& ctx, ExperimentResult& r) {
  const int n = p.integer("n"), keys = p.integer("keys"), samples = p.integer("haar_samples");
  if (n < 2 || n > 12 || keys < 1 || samples < 1) throw SchemaError("need 2 <= n <= 12, keys >= 1, haar_samples >= 1");
  for (int s : p.ints("s")) {
    if (s < 1 || s > (1 << n)) throw SchemaError("s must lie in [1, 2^n]");
    const auto profiles = map_units<CutEntropyProfile>(keys, ctx.jobs, [&](std::size_t i) {
      const auto key = FeistelKey::from_seed(n, derive_seed(ctx.seed, 1000 + s, i));
      return cut_entropy_profile(prs_state(key, s), n);
    });
    double worst = 0;
    for (const auto& pr : profiles)
      for (double e : pr.entropies) worst = std::max(worst, e);
    const double cap = std::log2(static_cast<double>(s));
    r.metrics["grid"].push_back({{"source", "prs"}, {"s", s}, {"keys", keys}, {"max_entropy", worst}, {"cap", cap}});
    r.checks.push_back(check_le("prs-cap:" + grid_id({{"s", s}}), worst, cap + 1e-9));
  }
  const auto haar = map_units<CutEntropyProfile>(samples, ctx.jobs, [&](std::size_t i) {
    Rng rng(derive_seed(ctx.seed, 2, i));
    return cut_entropy_profile(haar_sample(1 << n, rng), n);
  });
  const double frac = p.real("haar_fraction");
  for (int c = 1; c < n; ++c) {
    double mean = 0;
    for (const auto& pr : haar) mean += pr.entropies[c - 1];
    mean /= samples;
    const double mx = haar.front().max_at(c);
    const std::int64_t a = std::int64_t{1} << std::min(c, n - c), b = std::int64_t{1} << std::max(c, n - c);
    r.metrics["grid"].push_back(
        {{"source", "haar"}, {"cut", c}, {"mean_entropy", mean}, {"max", mx}, {"page_mean", page_entropy(a, b)}});
    r.checks.push_back(check_ge("haar-near-max:" + grid_id({{"cut", c}}), mean, frac * mx));
  }
}

}  // namespace detail

inline const std::vector<Experiment>& registry() {
  using T = ParamType;
  static const std::vector<Experiment> reg = [] {
    std::vector<Experiment> v{
        {"abs-distinguisher",
         "Swap test of a state against its entrywise absolute value: subset states pass, binary-phase states fail.",
         "entrywise absolute value as a distinguisher for subset states",
         {{"d", T::kInt, "64", "dimension, at least 16"},
          {"trials", T::kInt, "2000", "random states per family"},
          {"min_gap", T::kReal, "0.4", "required acceptance gap"}},
         true,
         detail::run_abs_distinguisher},
        {"cut-entropy",
         "Entanglement entropy across every cut of keyed subset states and of Haar states.",
         "pseudoentanglement: Schmidt rank of a subset state is at most its support size",
         {{"n", T::kInt, "8", "qubits"},
          {"s", T::kIntList, "1,2,4,8", "support sizes"},
          {"keys", T::kInt, "50", "keys per support size"},
          {"haar_samples", T::kInt, "20", "Haar samples"},
          {"haar_fraction", T::kReal, "0.9", "required mean entropy as a fraction of the maximum"}},
         true,
         detail::run_cut_entropy},
        {"demerlin",
         "Projector built from the averaged verifier: completeness and soundness bounds on random instances.",
         "removing the proof from a verifier with a fixed witness dimension",
         {{"configs", T::kString, "4x2,8x4,16x4", "state x proof dimensions"},
          {"instances", T::kInt, "200", "instances per configuration and side"},
          {"eps_min", T::kReal, "0.05", "smallest eps"},
          {"eps_max", T::kReal, "0.95", "largest eps"}},
         true,
         detail::run_demerlin},
        {"dense-regime",
         "Flattened moments of the two dense ensembles agree; Monte Carlo matches them.",
         "dense regime: matched pair of subset ensembles",
         {{"d", T::kIntList, "8,16", "dimensions"},
          {"k", T::kInt, "2", "moment order"},
          {"p_prime", T::kReal, "0.05", "density p'; s = 8p', t = 2p'"},
          {"trials", T::kInt, "10000", "Monte Carlo draws per ensemble"},
          {"z", T::kReal, "5", "allowed standard errors"}},
         true,
         detail::run_dense_regime},
        {"divergence-contraction",
         "KL divergence of t-sample down walks against (t/s) times the set divergence, plus the per-coordinate chain bound.",
         "divergence contraction under sampling without replacement",
         {{"N", T::kInt, "6", "universe size"},
          {"s", T::kInt, "3", "set size"},
          {"t", T::kIntList, "1,2", "samples"},
          {"trials", T::kInt, "100", "random distributions per t"},
          {"chain_N", T::kInt, "5", "universe for the chain bound"},
          {"chain_s", T::kInt, "3", "set size for the chain bound"},
          {"chain_trials", T::kInt, "50", "random distributions per prefix length"}},
         true,
         detail::run_divergence_contraction},
        {"gapsupp-ip",
         "Interactive support-size tester with honest and cheating provers.",
         "interactive proof for the support-size gap problem",
         {{"N", T::kInt, "30000", "universe size; yes support N/3, no support 2N/3"},
          {"k", T::kInt, "60", "samples"},
          {"trials", T::kInt, "1000", "runs per prover and instance type"},
          {"min_completeness", T::kReal, "0.95", ""},
          {"max_soundness", T::kReal, "0.05", ""},
          {"min_gap", T::kReal, "0.9", ""}},
         true,
         detail::run_gapsupp_ip},
        {"haar-approximant",
         "Trace distance between the Haar moment and its collision-free approximant against the closed form.",
         "Haar moment approximant",
         {{"d_min", T::kInt, "4", ""}, {"d_max", T::kInt, "16", ""}, {"k_max", T::kInt, "3", ""}},
         false,
         detail::run_haar_approximant},
        {"haar-vs-subset",
         "Trace norm between Haar and subset-state moments against k^2/d + k/sqrt(s) + sk/d.",
         "subset states form an approximate design",
         {{"d", T::kIntList, "32", "dimensions"},
          {"s", T::kIntList, "8", "subset sizes"},
          {"k", T::kIntList, "2", "moment orders"},
          {"bound_factor", T::kReal, "8", "allowed multiple of the bound shape"},
          {"dense_max", T::kInt, "1024", "cross-check against dense operators when d^k is at most this"}},
         false,
         detail::run_haar_vs_subset},
        {"halving-scan",
         "Exhaustive scan of subset triples: accepted halving steps have ratio near 1/2.",
         "support halving test calibration",
         {{"d_max", T::kInt, "10", ""},
          {"mu", T::kReal, "0.5", "target ratio"},
          {"delta", T::kRealList, "0.0025,0.005,0.01,0.02", "tolerances"},
          {"width_const", T::kReal, "4", "accepted window is mu +- width_const delta^(1/4)"}},
         false,
         detail::run_halving_scan},
        {"johnson-spectra",
         "Closed-form eigenvalues and multiplicities of one Johnson-scheme matrix.",
         "Johnson association scheme eigenvalues",
         {{"d", T::kInt, "6", ""},
          {"k", T::kInt, "2", ""},
          {"t", T::kInt, "0", "intersection size"},
          {"brute_max", T::kInt, "500", "brute-force check when C(d,k) is at most this"}},
         false,
         detail::run_johnson_spectra},
        {"ma-bound",
         "Exact TV between the two transcript laws for every fiber partition in a generated family.",
         "sample lower bound for certified support size with a classical proof",
         {{"N_min", T::kInt, "5", ""},
          {"N_max", T::kInt, "8", ""},
          {"s", T::kIntList, "2,3", ""},
          {"t", T::kIntList, "1,2", ""},
          {"p", T::kIntList, "1,2,3", "proof bits"},
          {"random_per_point", T::kInt, "2", "hashed partitions per grid point"},
          {"min_partitions", T::kInt, "200", ""}},
         true,
         detail::run_ma_bound},
        {"prs-attacks",
         "Collision and overlap attacks on subset-state sources against Haar null runs.",
         "attacks outside the tight support-size range",
         {{"collision_d", T::kInt, "1024", ""},
          {"collision_s", T::kInt, "16", ""},
          {"copies", T::kInt, "8", ""},
          {"collision_trials", T::kInt, "4000", ""},
          {"overlap_d", T::kInt, "256", "dense subset states use s = d/2"},
          {"overlap_trials", T::kInt, "10000", ""},
          {"min_collision_advantage", T::kReal, "0.5", ""},
          {"min_overlap_advantage", T::kReal, "0.2", ""},
          {"max_null_advantage", T::kReal, "0.05", ""}},
         true,
         detail::run_prs_attacks},
        {"support-cert",
         "Support-size certification from a halving chain: honest proofs and three adversaries.",
         "support-size certification protocol",
         {{"d_max", T::kInt, "16", ""},
          {"m_exact", T::kInt, "4", "collection size in exact mode"},
          {"m_sampled", T::kInt, "200", "collection size for the non-tilted adversary"},
          {"gamma", T::kReal, "0.05", "subset test tolerance"},
          {"targets_per_size", T::kInt, "0", "targets per (d, |T|); 0 means all"},
          {"trials", T::kInt, "200", "non-tilted runs"},
          {"min_rejection", T::kReal, "0.9", ""}},
         true,
         detail::run_support_cert},
        {"symmetry-test",
         "Exact acceptance of the pairwise swap-test symmetry check.",
         "symmetry test on tilted collections",
         {{"d", T::kInt, "8", ""},
          {"m", T::kIntList, "2,4,6,8,10", "collection sizes"},
          {"trials", T::kInt, "10000", "sampled runs of the {a,a,b,b} case"}},
         true,
         detail::run_symmetry_test},
        {"union-bound",
         "Sequential two-outcome measurements: rejection against n sqrt(eps).",
         "quantum union bound",
         {{"n_max", T::kInt, "5", ""},
          {"eps", T::kRealList, "0,0.01,0.04", ""},
          {"dim", T::kInt, "4", ""},
          {"trials", T::kInt, "10000", ""}},
         true,
         detail::run_union_bound},
    };
    std::stable_sort(v.begin(), v.end(), [](const Experiment& a, const Experiment& b) { return a.name < b.name; });
    return v;
  }();
  return reg;
}

inline const Experiment* find_experiment(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return &e;
  return nullptr;
}

inline std::string registered_names() {
  std::string out;
  for (const auto& e : registry()) out += (out.empty() ? "" : ", ") + e.name;
  return out;
}

// Applies overrides to the defaults; every offending key is reported at once.
inline Params resolve_params(const Experiment& e, const std::map<std::string, std::string>& overrides) {
  Json values = Json::object();
  std::vector<std::string> bad;
  for (const auto& [k, v] : overrides) {
    bool known = false;
    for (const auto& s : e.schema) known = known || s.key == k;
    if (!known) bad.push_back(k + " (unknown)");
  }
  for (const auto& s : e.schema) {
    const auto it = overrides.find(s.key);
    const std::string raw = it == overrides.end() ? s.default_value : it->second;
    const auto parsed = detail::parse_param(s.type, raw);
    if (!parsed)
      bad.push_back(s.key + " (expected " + to_string(s.type) + ", got '" + raw + "')");
    else
      values[s.key] = *parsed;
  }
  if (!bad.empty()) {
    std::string msg = "invalid parameters for " + e.name + ":";
    for (const auto& b : bad) msg += " " + b + ";";
    msg.pop_back();
    throw SchemaError(msg);
  }
  return Params(values);
}

inline ExperimentResult run_experiment(const Experiment& e, const std::map<std::string, std::string>& overrides,
                                       std::optional<std::uint64_t> seed, unsigned jobs, bool timing = false) {
  if (e.stochastic && !seed) throw SchemaError("experiment " + e.name + " is stochastic and needs --seed");
  const auto params = resolve_params(e, overrides);
  ExperimentResult r;
  r.name = e.name;
  r.config = {{"params", params.json()}, {"seed", seed ? Json(*seed) : Json(nullptr)}};
  r.metrics["grid"] = Json::array();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    e.run(params, RunContext{seed.value_or(0), std::max(1u, jobs)}, r);
  } catch (const SchemaError&) {
    throw;
  } catch (const PreconditionError& ex) {
    throw SchemaError(e.name + ": " + ex.what());
  } catch (const DimensionError& ex) {
    throw SchemaError(e.name + ": " + ex.what());
  } catch (const BudgetError& ex) {
    throw SchemaError(e.name + ": " + ex.what());
  }
  if (r.metrics["grid"].empty()) r.metrics.erase("grid");
  if (timing)
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline Json to_json(const ExperimentResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"id", c.id}, {"lhs", num(c.lhs)}, {"rhs", num(c.rhs)}, {"pass", c.pass}});
  return {{"name", r.name},
          {"config", r.config},
          {"metrics", r.metrics},
          {"checks", checks},
          {"pass", r.pass()},
          {"wall_ms", r.wall_ms ? Json(*r.wall_ms) : Json(nullptr)}};
}

namespace detail {

inline std::string csv_cell(const Json& v) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_array()) {
    for (const auto& x : v) s += (s.empty() ? "" : ";") + (x.is_string() ? x.get<std::string>() : x.dump());
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

}  // namespace detail

// One row per grid point; nested values are serialized as JSON text. Without
// a grid the scalar metrics form a single row.
inline std::string to_csv(const ExperimentResult& r) {
  std::vector<Json> rows;
  if (r.metrics.contains("grid")) {
    for (const auto& g : r.metrics.at("grid")) rows.push_back(g);
  } else {
    Json row = Json::object();
    for (const auto& [k, v] : r.metrics.items()) row[k] = v;
    rows.push_back(row);
  }
  std::vector<std::string> cols;
  for (const auto& row : rows)
    for (const auto& [k, v] : row.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  std::string out = "experiment";
  for (const auto& c : cols) out += "," + detail::csv_cell(c);
  out += "\n";
  for (const auto& row : rows) {
    out += r.name;
    for (const auto& c : cols) {
      out += ",";
      if (!row.contains(c)) continue;
      const auto& v = row.at(c);
      out += v.is_object() ? detail::csv_cell(v.dump()) : detail::csv_cell(v);
    }
    out += "\n";
  }
  return out;
}

}  // namespace sslab
