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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "sslab/combinatorics.hpp"
#include "sslab/core.hpp"
#include "sslab/ensembles.hpp"
#include "sslab/linalg.hpp"
#include "sslab/transcript.hpp"

namespace sslab {

// m pure states of equal dimension.
struct StateCollection {
  std::vector<StateVector> states;
  std::string label;

  StateCollection() = default;
  StateCollection(std::vector<StateVector> s, std::string l = {}) : states(std::move(s)), label(std::move(l)) {
    if (states.empty()) throw PreconditionError("StateCollection: empty collection");
    for (const auto& x : states)
      if (x.dim() != states[0].dim()) throw DimensionError("StateCollection: unequal dimensions");
  }

  static StateCollection copies(const StateVector& psi, int m, std::string l = {}) {
    require(m >= 1, "StateCollection::copies: m must be positive");
    return StateCollection(std::vector<StateVector>(m, psi), std::move(l));
  }

  std::size_t size() const { return states.size(); }
  std::size_t dim() const { return states.at(0).dim(); }
};

enum class ProtocolMode {
  kExact,    // swap outcomes replaced by their acceptance probabilities
  kSampled,  // Bernoulli outcomes
};

inline const char* to_string(ProtocolMode m) { return m == ProtocolMode::kExact ? "exact" : "sampled"; }

// Exact-mode tests whose verdict is "every swap test accepts" accept iff the
// acceptance probability is 1 up to this slack.
inline constexpr double kCertainAcceptSlack = 1e-9;

inline double swap_test_prob(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("swap_test_prob: dimension mismatch");
  return 0.5 * (1.0 + std::min(1.0, overlap(a, b)));
}

inline bool swap_test_sample(const StateVector& a, const StateVector& b, Rng& rng) {
  return rng.uniform() < swap_test_prob(a, b);
}

namespace detail {

inline void fnv_mix(std::uint64_t& h, const StateVector& v) {
  for (const auto& a : v.amps()) {
    const double parts[2] = {a.real(), a.imag()};
    const auto* bytes = reinterpret_cast<const unsigned char*>(parts);
    for (std::size_t i = 0; i < sizeof(parts); ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  }
}

inline std::string hex64(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 15U];
  return out;
}

inline std::string digest(std::initializer_list<const StateCollection*> cs, const StateVector* extra = nullptr) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  if (extra) fnv_mix(h, *extra);
  for (const auto* c : cs)
    for (const auto& s : c->states) fnv_mix(h, s);
  return hex64(h);
}

inline double matching_accept_prob(const StateCollection& c, const Matching& mt) {
  double p = 1.0;
  for (auto [i, j] : mt) p *= swap_test_prob(c.states[i], c.states[j]);
  return p;
}

}  // namespace detail

// Largest collection size for which exact mode averages over every matching.
inline constexpr int kSymmetryExactEnumerationMax = 10;

// Pairs the states by a uniformly random perfect matching and swap-tests each
// pair; accepts iff every swap test accepts.
inline ProtocolTranscript symmetry_test(const StateCollection& c, Rng& rng, ProtocolMode mode) {
  const int m = static_cast<int>(c.size());
  if (m % 2 != 0) throw PreconditionError("symmetry_test: collection size must be even");
  ProtocolTranscript tr;
  tr.protocol = "symmetry-test";
  tr.inputs_digest = detail::digest({&c});
  tr.params["m"] = m;
  tr.params["exact"] = mode == ProtocolMode::kExact;
  if (mode == ProtocolMode::kExact && m <= kSymmetryExactEnumerationMax) {
    double total = 0.0;
    std::int64_t count = 0;
    for_each_perfect_matching(m, [&](const Matching& mt) {
      total += detail::matching_accept_prob(c, mt);
      ++count;
    });
    tr.stats["matchings"] = static_cast<double>(count);
    tr.stats["accept_probability"] = total / static_cast<double>(count);
  } else {
    const Matching mt = random_perfect_matching(m, rng);
    if (mode == ProtocolMode::kExact) {
      tr.stats["matchings"] = 1;
      tr.stats["accept_probability"] = detail::matching_accept_prob(c, mt);
    } else {
      int rejected = 0;
      for (auto [i, j] : mt)
        if (!swap_test_sample(c.states[i], c.states[j], rng)) ++rejected;
      tr.stats["rejected_pairs"] = rejected;
      tr.accept = rejected == 0;
      tr.reason = tr.accept ? "all-swaps-accept" : "swap-rejected";
      return tr;
    }
  }
  tr.accept = tr.stats["accept_probability"] >= 1.0 - kCertainAcceptSlack;
  tr.reason = tr.accept ? "accept-probability-one" : "accept-probability-below-one";
  return tr;
}

// Result of searching for a representative set R.
struct TiltedReport {
  double delta = 0;
  bool tilted = false;
  bool heuristic = false;  // greedy search, no optimality certificate
  std::vector<int> representative_indices;
  double max_pairwise_td_in_R = 0;
};

inline constexpr int kTiltedExactMax = 24;

namespace detail {

// Maximum clique by Bron-Kerbosch with pivoting over bitmask adjacency.
inline std::uint32_t max_clique(const std::vector<std::uint32_t>& adj) {
  std::uint32_t best = 0;
  std::function<void(std::uint32_t, std::uint32_t, std::uint32_t)> bk = [&](std::uint32_t r, std::uint32_t p,
                                                                            std::uint32_t x) {
    if (p == 0 && x == 0) {
      if (std::popcount(r) > std::popcount(best)) best = r;
      return;
    }
    if (std::popcount(r) + std::popcount(p) <= std::popcount(best)) return;
    const std::uint32_t px = p | x;
    int pivot = std::countr_zero(px);
    int most = -1;
    for (std::uint32_t q = px; q; q &= q - 1) {
      const int u = std::countr_zero(q);
      const int c = std::popcount(p & adj[u]);
      if (c > most) {
        most = c;
        pivot = u;
      }
    }
    for (std::uint32_t cand = p & ~adj[pivot]; cand; cand &= cand - 1) {
      const int v = std::countr_zero(cand);
      const std::uint32_t bit = std::uint32_t{1} << v;
      bk(r | bit, p & adj[v], x & adj[v]);
      p &= ~bit;
      x |= bit;
    }
  };
  const int n = static_cast<int>(adj.size());
  bk(0, n == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1), 0);
  return best;
}

}  // namespace detail

// Searches for R with |R| >= (1-delta) m and pairwise trace distance at most
// sqrt(delta) inside R. Exact (maximum clique) up to 24 states; beyond that
// only with allow_heuristic, which uses a greedy clique.
inline TiltedReport tilted_check(const StateCollection& c, double delta, bool allow_heuristic = false) {
  require(delta >= 0.0 && delta <= 1.0, "tilted_check: delta outside [0,1]");
  const int m = static_cast<int>(c.size());
  TiltedReport rep;
  rep.delta = delta;
  const double radius = std::sqrt(delta) + 1e-12;
  // Pure-state trace distance sqrt(1 - overlap); squared distances below
  // 1e-12 are rounding noise from identical states and count as zero.
  std::vector<std::vector<double>> td(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double sq = 1.0 - overlap(c.states[i], c.states[j]);
      td[i][j] = td[j][i] = sq < 1e-12 ? 0.0 : std::sqrt(sq);
    }
  std::vector<int> members;
  if (m <= kTiltedExactMax) {
    std::vector<std::uint32_t> adj(m, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j && td[i][j] <= radius) adj[i] |= std::uint32_t{1} << j;
    const std::uint32_t best = detail::max_clique(adj);
    for (int i = 0; i < m; ++i)
      if (best >> i & 1U) members.push_back(i);
  } else {
    if (!allow_heuristic) throw PreconditionError("tilted_check: exact search limited to 24 states");
    rep.heuristic = true;
    // Greedy: seed at every vertex, keep the largest clique found.
    for (int seed = 0; seed < m; ++seed) {
      std::vector<int> cl{seed};
      for (int v = 0; v < m; ++v) {
        if (v == seed) continue;
        bool ok = true;
        for (int u : cl) ok = ok && td[u][v] <= radius;
        if (ok) cl.push_back(v);
      }
      if (cl.size() > members.size()) members = cl;
    }
    std::sort(members.begin(), members.end());
  }
  rep.representative_indices = members;
  for (int i : members)
    for (int j : members) rep.max_pairwise_td_in_R = std::max(rep.max_pairwise_td_in_R, td[i][j]);
  rep.tilted = static_cast<double>(members.size()) >= (1.0 - delta) * m - 1e-9;
  return rep;
}

// Pairwise tensor product of two equal-length collections.
inline StateCollection tensor_tilted(const StateCollection& a, const StateCollection& b) {
  if (a.size() != b.size()) throw DimensionError("tensor_tilted: collection lengths differ");
  std::vector<StateVector> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(kron(a.states[i], b.states[i]));
  return StateCollection(std::move(out), a.label + "(x)" + b.label);
}

// |A n B|^2 / (|A| |B|), the squared overlap of two subset states.
inline double subset_overlap(const std::vector<int>& a, const std::vector<int>& b) {
  const double c = intersection_size(a, b);
  return c * c / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

// Default constant C in the precondition delta < C mu^4.
inline constexpr double kHalvingConstant = 1.0;

// Accepts iff ov(S,S') <= delta, |ov(H,S) - mu| <= delta and
// |ov(H,S') - (1-mu)| <= delta.
inline bool halving_decision(double ov_ss, double ov_hs, double ov_hs2, double mu, double delta,
                             double c = kHalvingConstant) {
  for (double ov : {ov_ss, ov_hs, ov_hs2})
    if (!(ov >= -1e-12 && ov <= 1.0 + 1e-12)) throw PreconditionError("halving_decision: overlap outside [0,1]");
  if (!(mu > 0.0 && mu < 1.0)) throw PreconditionError("halving_decision: mu outside (0,1)");
  if (!(delta >= 0.0 && delta < c * std::pow(mu, 4)))
    throw PreconditionError("halving_decision: need 0 <= delta < C mu^4");
  const double slack = 1e-12;
  return ov_ss <= delta + slack && std::abs(ov_hs - mu) <= delta + slack &&
         std::abs(ov_hs2 - (1.0 - mu)) <= delta + slack;
}

struct HalvingScanReport {
  int d_max = 0;
  double mu = 0, delta = 0, width = 0;  // accepted ratios must lie in mu +- width
  double region_vectors = 0;            // distinct Venn-count classes examined
  double literal_triples = 0;           // (H,S,S') triples they stand for
  double accepted_triples = 0;
  double counterexamples = 0;
  double max_ratio_deviation = 0;  // over accepted triples
};

// Exhaustive scan over all triples of nonempty subsets of [d], d <= d_max.
// The three overlaps depend only on the sizes of the 7 Venn regions, so each
// region-count vector is evaluated once and weighted by the number of
// literal triples realizing it.
inline HalvingScanReport halving_scan(int d_max, double mu, double delta, double width_const = 4.0) {
  require(d_max >= 1 && d_max <= 20, "halving_scan: need 1 <= d_max <= 20");
  HalvingScanReport rep;
  rep.d_max = d_max;
  rep.mu = mu;
  rep.delta = delta;
  rep.width = width_const * std::pow(delta, 0.25);
  // Region r in 1..7 is the membership pattern (bit0 = H, bit1 = S, bit2 = S').
  std::vector<int> cnt(8, 0);
  std::function<void(int, int)> rec = [&](int r, int used) {
    if (r == 8) {
      int h = 0, s = 0, s2 = 0, hs = 0, hs2 = 0, ss2 = 0;
      for (int q = 1; q < 8; ++q) {
        const int c = cnt[q];
        if (q & 1) h += c;
        if (q & 2) s += c;
        if (q & 4) s2 += c;
        if ((q & 3) == 3) hs += c;
        if ((q & 5) == 5) hs2 += c;
        if ((q & 6) == 6) ss2 += c;
      }
      if (h == 0 || s == 0 || s2 == 0) return;
      rep.region_vectors += 1;
      // Literal triples over [d] for every d in 1..d_max.
      double weight = 0.0;
      for (int d = used; d <= d_max; ++d) {
        double w = std::tgamma(d + 1.0) / std::tgamma(d - used + 1.0);
        for (int q = 1; q < 8; ++q) w /= std::tgamma(cnt[q] + 1.0);
        weight += w;
      }
      rep.literal_triples += weight;
      const double ov_ss = static_cast<double>(ss2) * ss2 / (static_cast<double>(s) * s2);
      const double ov_hs = static_cast<double>(hs) * hs / (static_cast<double>(h) * s);
      const double ov_hs2 = static_cast<double>(hs2) * hs2 / (static_cast<double>(h) * s2);
      if (!halving_decision(ov_ss, ov_hs, ov_hs2, mu, delta)) return;
      rep.accepted_triples += weight;
      const double dev = std::abs(static_cast<double>(s) / h - mu);
      rep.max_ratio_deviation = std::max(rep.max_ratio_deviation, dev);
      if (dev > rep.width + 1e-12) rep.counterexamples += weight;
      return;
    }
    for (int c = 0; used + c <= d_max; ++c) {
      cnt[r] = c;
      rec(r + 1, used + c);
    }
    cnt[r] = 0;
  };
  rec(1, 0);
  return rep;
}

// Three overlaps estimated by swap tests on halves of the collections:
// alpha from (Phi1', Phi2'), beta from (Phi1'', Psi2'), zeta from
// (Phi2'', Psi2''). Halves are first and second half.
inline ProtocolTranscript subset_test(const StateCollection& phi1, const StateCollection& phi2,
                                      const StateCollection& psi2, double mu, double gamma, Rng& rng,
                                      ProtocolMode mode) {
  const std::size_t m = phi1.size();
  if (phi2.size() != m || psi2.size() != m) throw DimensionError("subset_test: collection sizes differ");
  if (m % 2 != 0) throw PreconditionError("subset_test: collection size must be even");
  if (phi2.dim() != phi1.dim() || psi2.dim() != phi1.dim()) throw DimensionError("subset_test: dimensions differ");
  const std::size_t h = m / 2;
  auto estimate = [&](const StateCollection& a, std::size_t oa, const StateCollection& b, std::size_t ob) {
    double acc = 0.0;
    for (std::size_t i = 0; i < h; ++i) {
      const auto& x = a.states[oa + i];
      const auto& y = b.states[ob + i];
      if (mode == ProtocolMode::kExact) {
        acc += swap_test_prob(x, y);
      } else {
        acc += swap_test_sample(x, y, rng) ? 1.0 : 0.0;
      }
    }
    return acc / static_cast<double>(h);
  };
  ProtocolTranscript tr;
  tr.protocol = "subset-test";
  tr.inputs_digest = detail::digest({&phi1, &phi2, &psi2});
  tr.params["m"] = static_cast<double>(m);
  tr.params["mu"] = mu;
  tr.params["gamma"] = gamma;
  tr.params["exact"] = mode == ProtocolMode::kExact;
  const double alpha = estimate(phi1, 0, phi2, 0);
  const double beta = estimate(phi1, h, psi2, 0);
  const double zeta = estimate(phi2, h, psi2, h);
  tr.stats["alpha"] = alpha;
  tr.stats["beta"] = beta;
  tr.stats["zeta"] = zeta;
  const double slack = 1e-12;
  const bool ok_a = std::abs((2 * alpha - 1) - mu) <= gamma + slack;
  const bool ok_b = std::abs((2 * beta - 1) - (1 - mu)) <= gamma + slack;
  const bool ok_z = std::abs(2 * zeta - 1) <= gamma + slack;
  tr.accept = ok_a && ok_b && ok_z;
  tr.reason = tr.accept ? "all-overlaps-in-range" : (!ok_a ? "alpha-out-of-range" : (!ok_b ? "beta-out-of-range" : "zeta-out-of-range"));
  return tr;
}

// Protocol parameters. delta is the tiltedness tolerance, gamma the subset
// test tolerance, m the collection size.
struct CertParams {
  double eps = 0.5;
  double delta = 1e-4;
  double gamma = 0.1;
  int m = 20;
  ProtocolMode mode = ProtocolMode::kExact;
  bool overridden = true;  // false only for the asymptotic schedule

  // delta = eps^16 / (320^2 n^8), gamma = eps^8 / (80 n^4).
  static CertParams asymptotic_schedule(double eps, int n, int m) {
    CertParams p;
    p.eps = eps;
    p.delta = std::pow(eps, 16) / (320.0 * 320.0 * std::pow(n, 8));
    p.gamma = std::pow(eps, 8) / (80.0 * std::pow(n, 4));
    p.m = m;
    p.overridden = false;
    return p;
  }

  // gamma <= kappa^4 - 16 sqrt(delta) and kappa^4 >= 17 sqrt(delta) with
  // kappa = eps^2 / (2 ell).
  bool relations_hold(int ell) const {
    if (ell <= 0) return true;
    const double kappa4 = std::pow(eps * eps / (2.0 * ell), 4);
    // The schedule meets the first relation with equality at ell = n.
    const double slack = 1e-12 * kappa4;
    return gamma <= kappa4 - 16 * std::sqrt(delta) + slack && kappa4 + slack >= 17 * std::sqrt(delta);
  }
};

// Claimed chain: Phi_0..Phi_ell supposedly phi_{S_i}, Psi_1..Psi_ell
// supposedly phi_{S_{i-1} \ S_i}. The sets are carried for diagnostics.
struct ProofBundle {
  int ell = 0;
  std::vector<StateCollection> phi;  // ell + 1 collections
  std::vector<StateCollection> psi;  // ell collections, psi[i-1] is Psi_i
  std::vector<SubsetSpec> chain;     // S_0..S_ell as built by the prover
  std::string kind = "honest";
};

inline bool is_power_of_two(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

namespace detail {

// S_{i+1}: T plus the lowest-index elements of S_i \ T, |S_i|/2 in total.
inline std::vector<SubsetSpec> halving_chain(const SubsetSpec& t) {
  const int d = t.d();
  std::vector<SubsetSpec> chain{SubsetSpec::full(d)};
  while (chain.back().size() > t.size()) {
    const auto& prev = chain.back();
    const int target = prev.size() / 2;
    std::vector<int> next = t.indices();
    for (int x : prev.indices()) {
      if (static_cast<int>(next.size()) >= target) break;
      if (!t.contains(x)) next.push_back(x);
    }
    chain.push_back(SubsetSpec::from_unsorted(d, next));
  }
  return chain;
}

inline std::vector<int> set_difference(const SubsetSpec& a, const SubsetSpec& b) {
  std::vector<int> out;
  for (int x : a.indices())
    if (!b.contains(x)) out.push_back(x);
  return out;
}

inline ProofBundle bundle_from_chain(const std::vector<SubsetSpec>& chain, int m, std::string kind) {
  ProofBundle pb;
  pb.kind = std::move(kind);
  pb.ell = static_cast<int>(chain.size()) - 1;
  pb.chain = chain;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    pb.phi.push_back(StateCollection::copies(subset_state(chain[i]), m, "Phi" + std::to_string(i)));
    if (i == 0) continue;
    const auto comp = set_difference(chain[i - 1], chain[i]);
    if (comp.empty()) throw PreconditionError("proof chain: consecutive sets are equal");
    pb.psi.push_back(
        StateCollection::copies(subset_state(SubsetSpec(chain[i].d(), comp)), m, "Psi" + std::to_string(i)));
  }
  return pb;
}

}  // namespace detail

// Nested halving chain [d] = S_0 > S_1 > ... > S_ell = T with lowest-index
// choices, m copies of every state.
inline ProofBundle honest_prover(const SubsetSpec& t, int m) {
  if (!is_power_of_two(t.d()) || !is_power_of_two(t.size()))
    throw PreconditionError("honest_prover: d and |T| must be powers of two");
  require(m >= 2 && m % 2 == 0, "honest_prover: m must be even and positive");
  return detail::bundle_from_chain(detail::halving_chain(t), m, "honest");
}

enum class AdversaryKind { kNonTilted, kWrongEll, kWrongFinal, kSkewedRatio };

inline const char* to_string(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::kNonTilted:
      return "non-tilted";
    case AdversaryKind::kWrongEll:
      return "wrong-ell";
    case AdversaryKind::kWrongFinal:
      return "wrong-final";
    case AdversaryKind::kSkewedRatio:
      return "skewed-ratio";
  }
  return "unknown";
}

inline AdversaryKind parse_adversary(const std::string& name) {
  for (auto k : {AdversaryKind::kNonTilted, AdversaryKind::kWrongEll, AdversaryKind::kWrongFinal,
                 AdversaryKind::kSkewedRatio})
    if (name == to_string(k)) return k;
  throw PreconditionError("unknown adversary kind: " + name);
}

// Cheating proofs, each aimed at one branch of the soundness analysis.
//  non-tilted:   Phi_1 alternates phi_{S_1} with a state of overlap 1/4.
//  wrong-ell:    claims ell - 1 by jumping from S_{ell-2} straight to T.
//  wrong-final:  an honest chain for a different set T' with |T'| = |T|.
//  skewed-ratio: S_1 replaced by a superset of S_2 with |S_1| = 3|S_0|/4.
// The rng is reserved for randomized variants; the built-in kinds are fixed.
inline ProofBundle adversarial_prover(AdversaryKind kind, const SubsetSpec& t, int m, Rng& /*rng*/) {
  if (!is_power_of_two(t.d()) || !is_power_of_two(t.size()))
    throw PreconditionError("adversarial_prover: d and |T| must be powers of two");
  require(m >= 2 && m % 2 == 0, "adversarial_prover: m must be even and positive");
  const int d = t.d();
  auto chain = detail::halving_chain(t);
  const int ell = static_cast<int>(chain.size()) - 1;
  switch (kind) {
    case AdversaryKind::kNonTilted: {
      if (ell < 1) throw PreconditionError("adversarial_prover: non-tilted needs ell >= 1");
      auto pb = detail::bundle_from_chain(chain, m, to_string(kind));
      // b shares half of S_1: shift S_1 by |S_1|/2 positions cyclically.
      const auto& s1 = chain[1].indices();
      std::vector<int> other;
      const int half = static_cast<int>(s1.size()) / 2;
      if (half == 0) throw PreconditionError("adversarial_prover: non-tilted needs |S_1| >= 2");
      for (int i = 0; i < static_cast<int>(s1.size()); ++i) other.push_back((s1[i] + half) % d);
      std::sort(other.begin(), other.end());
      other.erase(std::unique(other.begin(), other.end()), other.end());
      const auto b = subset_state(SubsetSpec(d, other));
      for (int i = 1; i < m; i += 2) pb.phi[1].states[i] = b;
      pb.phi[1].label = "Phi1-non-tilted";
      return pb;
    }
    case AdversaryKind::kWrongEll: {
      if (ell < 1) throw PreconditionError("adversarial_prover: wrong-ell needs ell >= 1");
      std::vector<SubsetSpec> bad(chain.begin(), chain.end() - 2);
      bad.push_back(t);
      if (bad.size() == 1) bad[0] = SubsetSpec::full(d);  // ell = 1 claims ell = 0
      return detail::bundle_from_chain(bad, m, to_string(kind));
    }
    case AdversaryKind::kWrongFinal: {
      if (t.size() == d) throw PreconditionError("adversarial_prover: wrong-final needs |T| < d");
      std::vector<int> other;
      for (int x = 0; x < d && static_cast<int>(other.size()) < t.size(); ++x)
        if (!t.contains(x)) other.push_back(x);
      return detail::bundle_from_chain(detail::halving_chain(SubsetSpec(d, other)), m, to_string(kind));
    }
    case AdversaryKind::kSkewedRatio: {
      if (ell < 2) throw PreconditionError("adversarial_prover: skewed-ratio needs ell >= 2");
      std::vector<int> s1 = chain[2].indices();
      for (int x = 0; x < d && static_cast<int>(s1.size()) < 3 * d / 4; ++x)
        if (!chain[2].contains(x)) s1.push_back(x);
      chain[1] = SubsetSpec::from_unsorted(d, s1);
      return detail::bundle_from_chain(chain, m, to_string(kind));
    }
  }
  throw PreconditionError("adversarial_prover: unknown kind");
}

enum class TestSelection {
  kRandomGroup,  // one of the four groups uniformly at random
  kRunAll,       // every group; accept iff all accept
};

inline constexpr int kSupportGroups = 4;

inline const char* support_group_name(int g) {
  static const char* names[] = {"symmetry", "even-subset", "odd-subset", "final-swap"};
  return names[g];
}

namespace detail {

inline ProtocolTranscript run_support_group(int group, const StateVector& rho, const ProofBundle& pb,
                                           const CertParams& prm, Rng& rng) {
  ProtocolTranscript tr;
  tr.protocol = std::string("support-group-") + support_group_name(group);
  tr.accept = true;
  tr.reason = "all-accept";
  auto absorb = [&](ProtocolTranscript child) {
    if (!child.accept && tr.accept) {
      tr.accept = false;
      tr.reason = child.protocol + ":" + child.reason;
    }
    tr.children.push_back(std::move(child));
  };
  if (group == 0) {
    for (const auto& c : pb.phi) {
      auto t = symmetry_test(c, rng, prm.mode);
      t.params["collection_phi"] = static_cast<double>(&c - pb.phi.data());
      absorb(std::move(t));
    }
    for (const auto& c : pb.psi) {
      auto t = symmetry_test(c, rng, prm.mode);
      t.params["collection_psi"] = static_cast<double>(&c - pb.psi.data()) + 1;
      absorb(std::move(t));
    }
  } else if (group == 1 || group == 2) {
    // Step (j, j+1) uses Phi_j, Phi_{j+1}, Psi_{j+1}; even groups take j even.
    for (int j = group - 1; j + 1 <= pb.ell; j += 2) {
      auto t = subset_test(pb.phi[j], pb.phi[j + 1], pb.psi[j], 0.5, prm.gamma, rng, prm.mode);
      t.params["step"] = j;
      absorb(std::move(t));
    }
    if (tr.children.empty()) tr.reason = "no-tests-in-group";
  } else {
    const auto& fin = pb.phi[pb.ell];
    ProtocolTranscript t;
    t.protocol = "final-swap-test";
    if (prm.mode == ProtocolMode::kExact) {
      double p = 0.0;
      for (const auto& s : fin.states) p += swap_test_prob(rho, s);
      p /= static_cast<double>(fin.size());
      t.stats["accept_probability"] = p;
      t.accept = p >= 1.0 - kCertainAcceptSlack;
      t.reason = t.accept ? "accept-probability-one" : "accept-probability-below-one";
    } else {
      const auto pick = rng.below(fin.size());
      t.stats["picked"] = static_cast<double>(pick);
      t.accept = swap_test_sample(rho, fin.states[pick], rng);
      t.reason = t.accept ? "swap-accepted" : "swap-rejected";
    }
    absorb(std::move(t));
  }
  return tr;
}

}  // namespace detail

// Support-size certification of rho from a claimed halving chain. The
// certified size is d / 2^ell.
inline ProtocolTranscript support_size_test(const StateVector& rho, const ProofBundle& pb, const CertParams& prm,
                                            Rng& rng, TestSelection sel = TestSelection::kRandomGroup) {
  ProtocolTranscript tr;
  tr.protocol = "support-size-test";
  {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    detail::fnv_mix(h, rho);
    for (const auto* group : {&pb.phi, &pb.psi})
      for (const auto& c : *group)
        for (const auto& s : c.states) detail::fnv_mix(h, s);
    tr.inputs_digest = detail::hex64(h);
  }
  tr.params["m"] = prm.m;
  tr.params["delta"] = prm.delta;
  tr.params["gamma"] = prm.gamma;
  tr.params["eps"] = prm.eps;
  tr.params["exact"] = prm.mode == ProtocolMode::kExact;
  tr.params["run_all"] = sel == TestSelection::kRunAll;
  tr.stats["ell"] = pb.ell;
  tr.stats["claimed_size"] = std::ldexp(static_cast<double>(rho.dim()), -pb.ell);
  tr.stats["relations_hold"] = prm.relations_hold(pb.ell);

  const std::size_t d = rho.dim();
  for (const auto* group : {&pb.phi, &pb.psi})
    for (const auto& c : *group)
      if (c.dim() != d) throw DimensionError("support_size_test: proof state dimension differs from rho");

  auto malformed = [&](const std::string& why) {
    tr.accept = false;
    tr.reason = "malformed-proof:" + why;
    return tr;
  };
  if (pb.ell < 0) return malformed("negative-ell");
  if (static_cast<int>(pb.phi.size()) != pb.ell + 1) return malformed("phi-count");
  if (static_cast<int>(pb.psi.size()) != pb.ell) return malformed("psi-count");
  if (std::ldexp(1.0, pb.ell) > static_cast<double>(d)) return malformed("ell-exceeds-dimension");
  for (const auto* group : {&pb.phi, &pb.psi})
    for (const auto& c : *group)
      if (static_cast<int>(c.size()) != prm.m || c.size() % 2 != 0) return malformed("collection-size");

  if (sel == TestSelection::kRandomGroup) {
    const int g = static_cast<int>(rng.below(kSupportGroups));
    tr.stats["group"] = g;
    auto child = detail::run_support_group(g, rho, pb, prm, rng);
    tr.accept = child.accept;
    tr.reason = child.reason;
    tr.children.push_back(std::move(child));
    return tr;
  }
  tr.accept = true;
  tr.reason = "all-accept";
  for (int g = 0; g < kSupportGroups; ++g) {
    auto child = detail::run_support_group(g, rho, pb, prm, rng);
    if (!child.accept && tr.accept) {
      tr.accept = false;
      tr.reason = child.reason;
    }
    tr.children.push_back(std::move(child));
  }
  return tr;
}

struct AbsTransformReport {
  int d = 0, trials = 0;
  double subset_acceptance = 0;  // swap test of psi against |psi| for subset states
  double phase_acceptance = 0;   // same for random binary-phase states
  double phase_stderr = 0;
  double gap = 0;
};

// Subset states are fixed by the entrywise absolute value; random binary
// phase states are nearly orthogonal to theirs. A swap test between psi and
// a claimed |psi| separates the two.
inline AbsTransformReport abs_transform_distinguisher(int d, int trials, Rng& rng) {
  require(d >= 16, "abs_transform_distinguisher: need d >= 16");
  require(trials >= 1, "abs_transform_distinguisher: trials must be positive");
  AbsTransformReport rep;
  rep.d = d;
  rep.trials = trials;
  double sub = 0, ph = 0, ph2 = 0;
  for (int i = 0; i < trials; ++i) {
    const int s = 1 + static_cast<int>(rng.below(d));
    const auto psi = subset_state(SubsetSpec(d, random_subset(d, s, rng)));
    sub += swap_test_prob(psi, absolute_state(psi));
    std::vector<int> signs(d);
    for (auto& x : signs) x = rng.bernoulli(0.5) ? 1 : -1;
    const auto phi = binary_phase_state(d, signs);
    const double p = swap_test_prob(phi, absolute_state(phi));
    ph += p;
    ph2 += p * p;
  }
  rep.subset_acceptance = sub / trials;
  rep.phase_acceptance = ph / trials;
  const double var = trials > 1 ? std::max(0.0, (ph2 - trials * rep.phase_acceptance * rep.phase_acceptance) /
                                                    (trials - 1.0))
                                : 0.0;
  rep.phase_stderr = std::sqrt(var / trials);
  rep.gap = rep.subset_acceptance - rep.phase_acceptance;
  return rep;
}

}  // namespace sslab
