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
#include <string>
#include <vector>

#include "sslab/combinatorics.hpp"
#include "sslab/core.hpp"
#include "sslab/ensembles.hpp"
#include "sslab/linalg.hpp"

namespace sslab {

// Keyed toy permutation of [0, 2^n): an (un)balanced Feistel network. It is
// deterministic and invertible, and makes no security claim.
//
// x splits into L = the high ceil(n/2) bits and R = the low floor(n/2) bits.
// Round i maps (L, R) to (R, L ^ F(R, rk_i, |L|)), so the half widths swap
// every round. F(h, rk, w) takes x = (h ^ rk) * 0x9E3779B97F4A7C15 mod 2^64,
// folds y = x ^ rotl(x, 23) ^ rotl(x, 41) and returns the high w bits of y.
struct FeistelKey {
  int n = 0;
  int rounds = 8;
  std::vector<std::uint64_t> round_keys;

  // rk_i = splitmix64(seed + i * 0x9E3779B97F4A7C15).
  static FeistelKey from_seed(int n, std::uint64_t seed, int rounds = 8) {
    FeistelKey k{n, rounds, {}};
    for (int i = 0; i < rounds; ++i) k.round_keys.push_back(splitmix64(seed + static_cast<std::uint64_t>(i) * 0x9E3779B97F4A7C15ULL));
    k.validate();
    return k;
  }
  static FeistelKey zero(int n, int rounds = 8) {
    FeistelKey k{n, rounds, std::vector<std::uint64_t>(rounds, 0)};
    k.validate();
    return k;
  }

  void validate() const {
    if (n < 2 || n > 62) throw PreconditionError("FeistelKey: need 2 <= n <= 62");
    if (rounds < 4) throw PreconditionError("FeistelKey: need at least 4 rounds");
    if (static_cast<int>(round_keys.size()) != rounds) throw PreconditionError("FeistelKey: one round key per round");
  }
};

namespace detail {

inline std::uint64_t feistel_round(std::uint64_t h, std::uint64_t rk, int width) {
  const std::uint64_t x = (h ^ rk) * 0x9E3779B97F4A7C15ULL;
  const std::uint64_t y = x ^ std::rotl(x, 23) ^ std::rotl(x, 41);
  return y >> (64 - width);
}

inline std::uint64_t low_mask(int w) { return (std::uint64_t{1} << w) - 1; }

}  // namespace detail

inline std::uint64_t prp_eval(const FeistelKey& key, std::uint64_t x) {
  key.validate();
  if (x >> key.n) throw PreconditionError("prp_eval: input out of range");
  int wl = (key.n + 1) / 2, wr = key.n / 2;
  std::uint64_t l = x >> wr, r = x & detail::low_mask(wr);
  for (int i = 0; i < key.rounds; ++i) {
    const std::uint64_t nr = l ^ detail::feistel_round(r, key.round_keys[i], wl);
    l = r;
    r = nr;
    std::swap(wl, wr);
  }
  return (l << wr) | r;
}

inline std::uint64_t prp_invert(const FeistelKey& key, std::uint64_t y) {
  key.validate();
  if (y >> key.n) throw PreconditionError("prp_invert: input out of range");
  // Widths after an even/odd number of rounds.
  int wl = (key.n + 1) / 2, wr = key.n / 2;
  if (key.rounds % 2) std::swap(wl, wr);
  std::uint64_t l = y >> wr, r = y & detail::low_mask(wr);
  for (int i = key.rounds - 1; i >= 0; --i) {
    // (l, r) = (R, L ^ F(R)) with |L| = wr.
    const std::uint64_t prev_l = r ^ detail::feistel_round(l, key.round_keys[i], wr);
    r = l;
    l = prev_l;
    std::swap(wl, wr);
  }
  return (l << wr) | r;
}

inline constexpr int kPrsMaxQubits = 20;

// Image of [s] under the permutation, sorted.
inline std::vector<int> prs_support(const FeistelKey& key, std::int64_t s) {
  if (s < 1 || s > (std::int64_t{1} << key.n)) throw PreconditionError("prs_support: need 1 <= s <= 2^n");
  if (key.n > 30) throw BudgetError("prs_support: index type limited to n <= 30");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(s));
  for (std::int64_t x = 0; x < s; ++x) out.push_back(static_cast<int>(prp_eval(key, static_cast<std::uint64_t>(x))));
  std::sort(out.begin(), out.end());
  return out;
}

inline StateVector prs_state(const FeistelKey& key, std::int64_t s) {
  if (key.n > kPrsMaxQubits) throw BudgetError("prs_state: dense states limited to n <= 20");
  return subset_state(SubsetSpec(1 << key.n, prs_support(key, s)));
}

enum class SourceKind {
  kSubset,  // fresh uniformly random s-subset per trial
  kPrs,     // support of the keyed permutation, fresh key per trial
  kHaar,    // fresh Haar state per trial
};

inline const char* to_string(SourceKind k) {
  switch (k) {
    case SourceKind::kSubset:
      return "subset";
    case SourceKind::kPrs:
      return "prs";
    case SourceKind::kHaar:
      return "haar";
  }
  return "unknown";
}

// A family of states on [d]; s is ignored for Haar.
struct StateSource {
  SourceKind kind = SourceKind::kHaar;
  int d = 2;
  int s = 1;
};

// 1 - d_(k) / (d + k - 1)_(k): chance that k computational-basis measurements
// of k copies of a Haar state are not all distinct.
inline double haar_collision_probability(int d, int copies) {
  double all_distinct = 1.0;
  for (int i = 0; i < copies; ++i) all_distinct *= static_cast<double>(d - i) / (d + copies - 1 - i);
  return 1.0 - all_distinct;
}

// Same for a flat distribution on s points.
inline double subset_collision_probability(int s, int copies) {
  double all_distinct = 1.0;
  for (int i = 0; i < copies; ++i) all_distinct *= std::max(0.0, static_cast<double>(s - i) / s);
  return 1.0 - all_distinct;
}

namespace detail {

inline bool is_power_of_two_int(int d) { return d > 0 && (d & (d - 1)) == 0; }

// Measures `copies` copies of one freshly drawn state; true on a repeated outcome.
inline bool sample_collision(const StateSource& src, int copies, Rng& rng) {
  std::vector<int> outcomes;
  outcomes.reserve(copies);
  if (src.kind == SourceKind::kHaar) {
    const auto psi = haar_sample(src.d, rng);
    std::vector<double> cdf(src.d);
    double acc = 0.0;
    for (int i = 0; i < src.d; ++i) cdf[i] = acc += std::norm(psi[i]);
    for (int c = 0; c < copies; ++c) {
      const double u = rng.uniform() * acc;
      outcomes.push_back(static_cast<int>(std::min<std::ptrdiff_t>(
          std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin(), src.d - 1)));
    }
  } else {
    std::vector<int> support;
    if (src.kind == SourceKind::kSubset) {
      support = random_subset(src.d, src.s, rng);
    } else {
      const int n = std::countr_zero(static_cast<unsigned>(src.d));
      const auto key = FeistelKey::from_seed(n, rng.bits());
      for (int c = 0; c < copies; ++c)
        outcomes.push_back(static_cast<int>(prp_eval(key, rng.below(src.s))));
    }
    if (src.kind == SourceKind::kSubset)
      for (int c = 0; c < copies; ++c) outcomes.push_back(support[rng.below(support.size())]);
  }
  std::sort(outcomes.begin(), outcomes.end());
  return std::adjacent_find(outcomes.begin(), outcomes.end()) != outcomes.end();
}

// |<u|psi>|^2 for u the uniform superposition on [d].
inline double uniform_overlap(const StateSource& src, Rng& rng) {
  if (src.kind != SourceKind::kHaar) return static_cast<double>(src.s) / src.d;
  const auto psi = haar_sample(src.d, rng);
  Cplx acc = 0.0;
  for (int i = 0; i < src.d; ++i) acc += psi[i];
  return std::norm(acc) / src.d;
}

inline void validate_source(const StateSource& src) {
  require(src.d >= 2, "StateSource: need d >= 2");
  if (src.kind != SourceKind::kHaar) require(src.s >= 1 && src.s <= src.d, "StateSource: need 1 <= s <= d");
  if (src.kind == SourceKind::kPrs) require(is_power_of_two_int(src.d), "StateSource: prs needs d a power of two");
}

}  // namespace detail

struct AttackReport {
  std::string attack;
  StateSource a, b;
  int copies = 0;
  int trials = 0;
  double rate_a = 0, rate_b = 0;  // flag / acceptance rates
  double advantage = 0;           // rate_a - rate_b
  double stderr_ = 0;
};

namespace detail {

inline void finish(AttackReport& r, int hits_a, int hits_b) {
  r.rate_a = static_cast<double>(hits_a) / r.trials;
  r.rate_b = static_cast<double>(hits_b) / r.trials;
  r.advantage = r.rate_a - r.rate_b;
  auto var = [&](double p) { return std::max(p * (1 - p), 1.0 / r.trials) / r.trials; };
  r.stderr_ = std::sqrt(var(r.rate_a) + var(r.rate_b));
}

}  // namespace detail

// Measures copies of a state in the computational basis and flags a repeated
// outcome. Advantage is Pr[flag | a] - Pr[flag | b]. Each trial t draws from
// the stream derived from (seed, source, t).
inline AttackReport collision_attack(const StateSource& a, const StateSource& b, int copies, std::uint64_t seed,
                                     int trials) {
  require(copies >= 2, "collision_attack: need at least 2 copies");
  require(trials >= 1, "collision_attack: trials must be positive");
  detail::validate_source(a);
  detail::validate_source(b);
  AttackReport r{"collision", a, b, copies, trials};
  int ha = 0, hb = 0;
  for (int t = 0; t < trials; ++t) {
    Rng ra(derive_seed(seed, 1, t)), rb(derive_seed(seed, 2, t));
    ha += detail::sample_collision(a, copies, ra);
    hb += detail::sample_collision(b, copies, rb);
  }
  detail::finish(r, ha, hb);
  return r;
}

// Swap test of the state against the uniform superposition; subset states of
// size s accept with probability (1 + s/d)/2.
inline AttackReport overlap_attack(const StateSource& a, const StateSource& b, std::uint64_t seed, int trials) {
  require(trials >= 1, "overlap_attack: trials must be positive");
  detail::validate_source(a);
  detail::validate_source(b);
  AttackReport r{"overlap", a, b, 1, trials};
  int ha = 0, hb = 0;
  for (int t = 0; t < trials; ++t) {
    Rng ra(derive_seed(seed, 3, t)), rb(derive_seed(seed, 4, t));
    ha += ra.uniform() < 0.5 * (1 + detail::uniform_overlap(a, ra));
    hb += rb.uniform() < 0.5 * (1 + detail::uniform_overlap(b, rb));
  }
  detail::finish(r, ha, hb);
  return r;
}

// Entanglement entropy (bits) across each cut after the first c qubits,
// c = 1..n-1, with qubit 0 the most significant bit.
struct CutEntropyProfile {
  int n = 0;
  std::vector<double> entropies;  // entropies[c-1] for cut c

  double max_at(int c) const { return std::min(c, n - c); }
};

inline CutEntropyProfile cut_entropy_profile(const StateVector& psi, int n) {
  if (n < 1 || n > 30 || psi.dim() != (std::size_t{1} << n))
    throw DimensionError("cut_entropy_profile: dimension is not 2^n");
  CutEntropyProfile p;
  p.n = n;
  for (int c = 1; c < n; ++c) p.entropies.push_back(entanglement_entropy(psi, std::size_t{1} << c));
  return p;
}

// Mean entanglement entropy (bits) of a Haar state on C^a (x) C^b, a <= b:
// (sum_{k=b+1}^{ab} 1/k - (a-1)/(2b)) / ln 2.
inline double page_entropy(std::int64_t a, std::int64_t b) {
  if (a > b) std::swap(a, b);
  double h = 0.0;
  for (std::int64_t k = b + 1; k <= a * b; ++k) h += 1.0 / static_cast<double>(k);
  return (h - static_cast<double>(a - 1) / (2.0 * b)) / std::log(2.0);
}

}  // namespace sslab
