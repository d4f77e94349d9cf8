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

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"

#include "sslab/cprotocols.hpp"
#include "sslab/demerlin.hpp"
#include "sslab/ensembles.hpp"
#include "sslab/johnson.hpp"
#include "sslab/prs.hpp"
#include "sslab/qprotocols.hpp"
#include "sslab/transcript.hpp"

namespace sslab {

using Json = nlohmann::json;

// Non-finite values have no JSON spelling; they become null.
inline Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

// {d, k, label, exactness, entries: [[re, im], ...]} with entries row-major.
inline Json to_json(const MomentOperator& m) {
  Json entries = Json::array();
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) entries.push_back(Json::array({m.matrix.matrix()(i, j), 0.0}));
  return {{"d", m.d}, {"k", m.k}, {"label", m.label}, {"exactness", to_string(m.exactness)}, {"entries", entries}};
}

inline MomentOperator moment_from_json(const Json& j) {
  MomentOperator m;
  m.d = j.at("d").get<int>();
  m.k = j.at("k").get<int>();
  m.label = j.at("label").get<std::string>();
  const auto ex = j.at("exactness").get<std::string>();
  if (ex != "exact" && ex != "approximant") throw PreconditionError("moment_from_json: unknown exactness " + ex);
  m.exactness = ex == "exact" ? Exactness::kExact : Exactness::kApproximant;
  const std::size_t n = detail::checked_power(m.d, m.k);
  const auto& e = j.at("entries");
  if (e.size() != n * n) throw DimensionError("moment_from_json: entry count is not (d^k)^2");
  Matrix<double> a(n, n);
  for (std::size_t i = 0; i < n * n; ++i) {
    if (std::abs(e[i].at(1).get<double>()) > kStructTol)
      throw PreconditionError("moment_from_json: moment operators here are real");
    a(i / n, i % n) = e[i].at(0).get<double>();
  }
  m.matrix = HermitianOperator<double>(std::move(a));
  return m;
}

inline Json to_json(const JohnsonSpectrum& sp, const JohnsonTraceNorm& tn) {
  return {{"d", sp.params.d}, {"k", sp.params.k},         {"t", sp.params.t},         {"lambda", sp.lambda},
          {"mult", sp.mult},  {"trace_norm", tn.trace_norm}, {"bound", tn.bound}, {"ratio", tn.ratio}};
}

inline Json to_json(const ProtocolTranscript& t) {
  Json params = Json::object(), stats = Json::object(), lists = Json::object();
  for (const auto& [k, v] : t.params) params[k] = num(v);
  for (const auto& [k, v] : t.stats) stats[k] = num(v);
  for (const auto& [k, v] : t.lists) lists[k] = v;
  Json j{{"protocol", t.protocol}, {"seed", t.seed},  {"inputs_digest", t.inputs_digest},
         {"params", params},       {"stats", stats},  {"verdict", t.accept ? "accept" : "reject"},
         {"reason", t.reason}};
  if (!t.lists.empty()) j["lists"] = lists;
  if (!t.children.empty()) {
    Json c = Json::array();
    for (const auto& ch : t.children) c.push_back(to_json(ch));
    j["children"] = c;
  }
  return j;
}

// Proof bundles carry the set chain; the states are rebuilt from it.
inline Json to_json(const ProofBundle& pb) {
  Json chain = Json::array();
  for (const auto& s : pb.chain) chain.push_back({{"d", s.d()}, {"indices", s.indices()}});
  return {{"kind", pb.kind}, {"ell", pb.ell}, {"m", pb.phi.empty() ? 0 : pb.phi[0].size()}, {"chain", chain}};
}

inline Json to_json(const MaBoundReport& r) {
  return {{"instance", {{"N", r.N}, {"s", r.s}, {"t", r.t}, {"p", r.p}, {"ell", r.ell}}},
          {"tv", r.tv},
          {"tv_exact", r.tv_exact},
          {"bound", r.bound},
          {"collision_term", r.collision_term},
          {"tv_with_replacement", num(r.tv_with_replacement)},
          {"kl_chain",
           {{"kl_transcripts_bits", r.kl_transcripts},
            {"kl_proof_marginal_bits", r.kl_proof_marginal},
            {"expected_kl_samples_bits", r.expected_kl_samples},
            {"contraction_rhs_bits", r.contraction_rhs},
            {"mutual_information_bits", r.mutual_information},
            {"pinsker_lhs_nats", r.pinsker_lhs_nats}}},
          {"pass", r.pass()}};
}

inline Json to_json(const ContractionReport& r) {
  return {{"N", r.N},
          {"s", r.s},
          {"t", r.t},
          {"kl_mu_bits", r.kl_mu},
          {"kl_lambda_bits", r.kl_lambda},
          {"factor_tight", r.factor_tight},
          {"factor_weak", r.factor_weak},
          {"observed_ratio", r.observed_ratio},
          {"holds_tight", r.holds_tight},
          {"holds_weak", r.holds_weak}};
}

inline Json to_json(const DemerlinCheck& c, const std::string& digest) {
  return {{"instance_digest", digest}, {"skipped", c.skipped}, {"hypothesis", c.hypothesis}, {"lhs", c.lhs},
          {"rhs", c.rhs},              {"margin", c.margin},   {"pass", c.pass}};
}

inline Json to_json(const AttackReport& r) {
  auto src = [](const StateSource& s) { return Json{{"kind", to_string(s.kind)}, {"d", s.d}, {"s", s.s}}; };
  return {{"attack", r.attack},
          {"params", {{"a", src(r.a)}, {"b", src(r.b)}, {"copies", r.copies}}},
          {"rate_a", r.rate_a},
          {"rate_b", r.rate_b},
          {"advantage", r.advantage},
          {"stderr", r.stderr_},
          {"trials", r.trials}};
}

inline Json to_json(const UnionBoundReport& r) {
  return {{"n", r.n},
          {"eps", r.eps},
          {"bound", r.bound},
          {"exact_reject", r.exact_reject},
          {"empirical_reject", r.empirical_reject},
          {"stderr", r.stderr_},
          {"trials", r.trials},
          {"pass", r.pass}};
}

}  // namespace sslab
