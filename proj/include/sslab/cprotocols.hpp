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
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "sslab/combinatorics.hpp"
#include "sslab/core.hpp"
#include "sslab/transcript.hpp"

namespace sslab {

// Largest number of subsets any exhaustive routine here will enumerate.
inline constexpr std::int64_t kSubsetEnumerationBudget = 100000;

// Largest domain for which transcript distributions are also kept as exact
// rationals.
inline constexpr int kExactRationalMaxN = 8;

using Rational = boost::rational<std::int64_t>;

// Uniform distribution over a support inside [N].
struct FlatDistribution {
  int N = 0;
  std::vector<int> support;  // sorted, distinct

  FlatDistribution() = default;
  FlatDistribution(int n, std::vector<int> s) : N(n), support(std::move(s)) {
    if (N < 1) throw PreconditionError("FlatDistribution: N must be positive");
    if (support.empty()) throw PreconditionError("FlatDistribution: empty support");
    std::sort(support.begin(), support.end());
    if (std::adjacent_find(support.begin(), support.end()) != support.end())
      throw PreconditionError("FlatDistribution: repeated support element");
    if (support.front() < 0 || support.back() >= N) throw PreconditionError("FlatDistribution: element out of range");
  }

  int size() const { return static_cast<int>(support.size()); }
};

inline std::vector<int> sample_flat(const FlatDistribution& mu, int t, Rng& rng) {
  require(t >= 0, "sample_flat: t must be nonnegative");
  std::vector<int> out(t);
  for (auto& x : out) x = mu.support[rng.below(mu.support.size())];
  return out;
}

// Number of unordered pairs i < j with samples[i] == samples[j].
inline std::int64_t collision_statistic(const std::vector<int>& samples) {
  std::vector<int> v = samples;
  std::sort(v.begin(), v.end());
  std::int64_t pairs = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const std::int64_t c = static_cast<std::int64_t>(j - i);
    pairs += c * (c - 1) / 2;
    i = j;
  }
  return pairs;
}

// YES instances are flat on s elements, NO instances flat on ell elements.
struct GapSuppInstance {
  int N = 0, s = 0, ell = 0;

  void validate() const {
    if (!(s >= 1 && ell >= 1 && s <= N && ell <= N)) throw PreconditionError("GapSuppInstance: need 1 <= s, ell <= N");
  }
  FlatDistribution sample_yes(Rng& rng) const {
    validate();
    return FlatDistribution(N, random_subset(N, s, rng));
  }
  FlatDistribution sample_no(Rng& rng) const {
    validate();
    return FlatDistribution(N, random_subset(N, ell, rng));
  }
};

// Probability vector over a finite outcome set.
struct DiscreteDistribution {
  std::vector<double> p;

  void validate(double tol = 1e-12) const {
    double total = 0.0;
    for (double x : p) {
      if (!(x >= 0.0)) throw PreconditionError("DiscreteDistribution: negative or NaN probability");
      total += x;
    }
    if (std::abs(total - 1.0) > tol * std::max<double>(1.0, static_cast<double>(p.size())))
      throw PreconditionError("DiscreteDistribution: probabilities do not sum to 1");
  }
};

// Distribution over the s-subsets of [N], indexed by combinadic rank.
struct SubsetDistribution {
  int N = 0, s = 0;
  std::vector<double> p;

  static SubsetDistribution uniform(int n, int s) {
    const auto count = checked_subset_count(n, s);
    return {n, s, std::vector<double>(static_cast<std::size_t>(count), 1.0 / static_cast<double>(count))};
  }
  static SubsetDistribution point(int n, const std::vector<int>& set) {
    const SubsetIndexer idx(n, static_cast<int>(set.size()));
    SubsetDistribution d{n, static_cast<int>(set.size()),
                         std::vector<double>(static_cast<std::size_t>(checked_subset_count(n, set.size())), 0.0)};
    d.p[idx.rank(set)] = 1.0;
    return d;
  }
  // Dirichlet(1,...,1) weights, optionally restricted to a random fraction of the subsets.
  static SubsetDistribution random(int n, int s, Rng& rng, double keep = 1.0) {
    auto d = uniform(n, s);
    double total = 0.0;
    for (auto& x : d.p) {
      x = rng.uniform() < keep ? -std::log(1.0 - rng.uniform()) : 0.0;
      total += x;
    }
    if (total == 0.0) {
      d.p[0] = 1.0;
      total = 1.0;
    }
    for (auto& x : d.p) x /= total;
    return d;
  }

  static std::int64_t checked_subset_count(std::int64_t n, std::int64_t s) {
    if (n < 1 || s < 0 || s > n) throw PreconditionError("SubsetDistribution: need 0 <= s <= N");
    const std::int64_t c = binomial(n, s);
    if (c > kSubsetEnumerationBudget) throw BudgetError("subset enumeration exceeds budget");
    return c;
  }
};

// T uniform among the t-subsets of S ~ mu.
inline SubsetDistribution down_walk(const SubsetDistribution& mu, int t) {
  if (t < 0 || t > mu.s) throw PreconditionError("down_walk: need 0 <= t <= s");
  SubsetDistribution::checked_subset_count(mu.N, mu.s);
  SubsetDistribution out{mu.N, t,
                         std::vector<double>(static_cast<std::size_t>(SubsetDistribution::checked_subset_count(mu.N, t)),
                                             0.0)};
  const SubsetIndexer big(mu.N, mu.s), small(mu.N, t), pick(mu.s, t);
  const auto picks = pick.all();
  const double w = 1.0 / static_cast<double>(binomial(mu.s, t));
  std::vector<int> sub(t);
  for (std::int64_t r = 0; r < big.count(); ++r) {
    if (mu.p[r] == 0.0) continue;
    const auto set = big.unrank(r);
    for (const auto& pk : picks) {
      for (int i = 0; i < t; ++i) sub[i] = set[pk[i]];
      out.p[small.rank(sub)] += mu.p[r] * w;
    }
  }
  return out;
}

struct KlResult {
  double bits = 0.0;
  bool support_ok = true;  // false: mu0 puts mass where mu1 has none, bits = +inf
  double nats() const { return bits * std::log(2.0); }
};

// KL(mu0 || mu1) in bits.
inline KlResult kl_divergence(const std::vector<double>& mu0, const std::vector<double>& mu1) {
  if (mu0.size() != mu1.size()) throw DimensionError("kl_divergence: length mismatch");
  KlResult r;
  double acc = 0.0;
  for (std::size_t i = 0; i < mu0.size(); ++i) {
    if (mu0[i] <= 0.0) continue;
    if (mu1[i] <= 0.0) {
      r.support_ok = false;
      r.bits = std::numeric_limits<double>::infinity();
      return r;
    }
    acc += mu0[i] * std::log2(mu0[i] / mu1[i]);
  }
  r.bits = std::max(0.0, acc);
  return r;
}

inline KlResult kl_divergence(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  return kl_divergence(a.p, b.p);
}

struct ContractionReport {
  int N = 0, s = 0, t = 0;
  double kl_mu = 0, kl_lambda = 0;  // bits
  double factor_tight = 0;          // t / s
  double factor_weak = 0;           // t / (s - t + 1)
  double observed_ratio = 0;        // kl_lambda / kl_mu, 0 when kl_mu = 0
  bool holds_tight = false, holds_weak = false;
};

// KL(lambda1 || lambda0) against (t/s) KL(mu1 || mu0), mu0 uniform, lambda_i
// the t-level down walks.
inline ContractionReport divergence_contraction_check(const SubsetDistribution& mu1, int t) {
  const auto mu0 = SubsetDistribution::uniform(mu1.N, mu1.s);
  ContractionReport rep;
  rep.N = mu1.N;
  rep.s = mu1.s;
  rep.t = t;
  rep.kl_mu = kl_divergence(mu1.p, mu0.p).bits;
  rep.kl_lambda = kl_divergence(down_walk(mu1, t).p, down_walk(mu0, t).p).bits;
  rep.factor_tight = static_cast<double>(t) / mu1.s;
  rep.factor_weak = static_cast<double>(t) / (mu1.s - t + 1);
  rep.observed_ratio = rep.kl_mu > 0 ? rep.kl_lambda / rep.kl_mu : 0.0;
  const double slack = 1e-12;
  rep.holds_tight = rep.kl_lambda <= rep.factor_tight * rep.kl_mu + slack;
  rep.holds_weak = rep.kl_lambda <= rep.factor_weak * rep.kl_mu + slack;
  return rep;
}

struct ChainClaimReport {
  int N = 0, s = 0, i = 0;
  std::int64_t prefixes = 0;  // prefixes with positive probability
  std::int64_t violations = 0;
  double max_excess = -std::numeric_limits<double>::infinity();  // max of lhs - rhs
};

// Per-coordinate chain bound: for every ordered prefix x_{<i} of distinct
// elements, KL(X_i | prefix || Y_i | prefix) <= KL(tail | prefix) / (s-i+1),
// where X orders S ~ mu1 uniformly at random and Y does so for mu0 uniform.
// Orders are uniform on both sides, so the tail divergence equals the
// divergence of the sets conditioned on containing the prefix.
inline ChainClaimReport chain_claim_check(const SubsetDistribution& mu1, int i) {
  const int N = mu1.N, s = mu1.s;
  if (i < 1 || i > s) throw PreconditionError("chain_claim_check: need 1 <= i <= s");
  SubsetDistribution::checked_subset_count(N, s);
  const SubsetIndexer idx(N, s);
  const auto sets = idx.all();
  ChainClaimReport rep;
  rep.N = N;
  rep.s = s;
  rep.i = i;
  const int plen = i - 1;
  // Conditionals depend only on the prefix as a set.
  const SubsetIndexer pidx(N, plen);
  for (std::int64_t pr = 0; pr < pidx.count(); ++pr) {
    const auto prefix = pidx.unrank(pr);
    std::vector<double> x_tail, y_tail;
    std::vector<double> x_next(N, 0.0), y_next(N, 0.0);
    double xm = 0.0, ym = 0.0;
    for (std::size_t r = 0; r < sets.size(); ++r) {
      if (intersection_size(sets[r], prefix) != plen) continue;
      xm += mu1.p[r];
      ym += 1.0;
      x_tail.push_back(mu1.p[r]);
      y_tail.push_back(1.0);
      for (int a : sets[r]) {
        if (std::binary_search(prefix.begin(), prefix.end(), a)) continue;
        x_next[a] += mu1.p[r];
        y_next[a] += 1.0;
      }
    }
    if (xm <= 0.0) continue;
    ++rep.prefixes;
    const double rem = s - plen;
    for (auto& v : x_tail) v /= xm;
    for (auto& v : y_tail) v /= ym;
    for (auto& v : x_next) v /= xm * rem;
    for (auto& v : y_next) v /= ym * rem;
    const double lhs = kl_divergence(x_next, y_next).bits;
    const double rhs = kl_divergence(x_tail, y_tail).bits / (s - i + 1);
    rep.max_excess = std::max(rep.max_excess, lhs - rhs);
    if (lhs > rhs + 1e-12) ++rep.violations;
  }
  return rep;
}

// Partition of all s-subsets of [N] into proof fibers F_Pi, Pi in [0, 2^p).
struct CertificateFibers {
  int N = 0, s = 0, p = 0;
  std::vector<int> fiber_of;  // indexed by combinadic rank
  std::string label;

  int num_fibers() const { return 1 << p; }

  void validate() const {
    require(p >= 0 && p <= 20, "CertificateFibers: p outside [0, 20]");
    if (static_cast<std::int64_t>(fiber_of.size()) != SubsetDistribution::checked_subset_count(N, s))
      throw DimensionError("CertificateFibers: fiber map does not cover every s-subset");
    for (int f : fiber_of)
      if (f < 0 || f >= num_fibers()) throw PreconditionError("CertificateFibers: fiber id exceeds 2^p");
  }

  std::vector<std::int64_t> sizes() const {
    std::vector<std::int64_t> out(num_fibers(), 0);
    for (int f : fiber_of) ++out[f];
    return out;
  }

  static CertificateFibers by_function(int n, int s, int p, const std::function<int(const std::vector<int>&)>& fn,
                                       std::string label) {
    CertificateFibers f{n, s, p, {}, std::move(label)};
    const SubsetIndexer idx(n, s);
    SubsetDistribution::checked_subset_count(n, s);
    f.fiber_of.resize(static_cast<std::size_t>(idx.count()));
    for (std::int64_t r = 0; r < idx.count(); ++r) f.fiber_of[r] = fn(idx.unrank(r));
    f.validate();
    return f;
  }
  static CertificateFibers single(int n, int s) {
    return by_function(n, s, 0, [](const std::vector<int>&) { return 0; }, "single");
  }
  static CertificateFibers min_parity(int n, int s) {
    return by_function(n, s, 1, [](const std::vector<int>& v) { return v.front() % 2; }, "min-parity");
  }
  // Proof = the p low bits of a hash of S; different seeds give unrelated partitions.
  static CertificateFibers random(int n, int s, int p, std::uint64_t seed) {
    return by_function(
        n, s, p,
        [&](const std::vector<int>& v) {
          std::uint64_t h = seed;
          for (int x : v) h = splitmix64(h ^ static_cast<std::uint64_t>(x + 1));
          return static_cast<int>(h & ((std::uint64_t{1} << p) - 1));
        },
        "random");
  }
  // One more proof bit: Pi' = 2 Pi + bit(S).
  CertificateFibers refine(const std::function<int(const std::vector<int>&)>& bit, const std::string& what) const {
    CertificateFibers f{N, s, p + 1, fiber_of, label + "+" + what};
    const SubsetIndexer idx(N, s);
    for (std::int64_t r = 0; r < idx.count(); ++r) f.fiber_of[r] = 2 * fiber_of[r] + (bit(idx.unrank(r)) & 1);
    f.validate();
    return f;
  }
};

struct MaBoundReport {
  int N = 0, s = 0, t = 0, p = 0, ell = 0;
  double tv = 0;                  // TV between the two collision-free transcript laws
  std::string tv_exact;           // "num/den" when N <= 8
  double bound = 0;               // sqrt(t p / (2 s))
  double collision_term = 0;      // t^2 / s
  double tv_with_replacement = -1;  // TV of the laws with i.i.d. samples; -1 if not computed
  // Chain quantities, bits unless noted.
  double kl_transcripts = 0;      // KL(nu0~ || nu1~), the Pinsker right-hand side
  double kl_proof_marginal = 0;   // KL(Pi || Pi') = 0
  double expected_kl_samples = 0;  // E_pi KL(T | pi || T'), equals kl_transcripts
  double contraction_rhs = 0;     // (t/s) E_pi KL(S | pi || S')
  double mutual_information = 0;  // I(S; Pi) = E_pi KL(S | pi || S), at most p
  double pinsker_lhs_nats = 0;    // 2 TV^2
  bool pinsker_ok = false, contraction_ok = false, entropy_ok = false, bound_ok = false;
  bool pass() const { return pinsker_ok && contraction_ok && entropy_ok && bound_ok; }
};

namespace detail {

// Number of maps from t labelled samples onto a u-element set.
inline double surjections(int t, int u) {
  double total = 0.0;
  for (int j = 0; j <= u; ++j)
    total += ((u - j) % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(binomial(u, j)) * std::pow(j, t);
  return total;
}

}  // namespace detail

// Exact transcript laws of the collision-free YES process (Pi by fiber mass,
// S uniform in F_Pi, T a uniform t-subset of S) and of the adversary process
// (Pi independent of a uniform t-subset T'). The uniform order of the samples
// is common to both and drops out. ell is the NO support size used only for
// the i.i.d.-sample comparison (0 means 2s).
inline MaBoundReport ma_bound_pipeline(const CertificateFibers& fib, int t, int ell = 0) {
  fib.validate();
  const int N = fib.N, s = fib.s;
  if (t < 1 || t > s) throw PreconditionError("ma_bound_pipeline: need 1 <= t <= s");
  if (ell == 0) ell = std::min(N, 2 * s);
  require(ell >= s && ell <= N, "ma_bound_pipeline: need s <= ell <= N");
  const std::int64_t cs = binomial(N, s), ct = SubsetDistribution::checked_subset_count(N, t), cst = binomial(s, t);
  const int F = fib.num_fibers();
  if (static_cast<double>(F) * static_cast<double>(ct) > 4e7) throw BudgetError("ma_bound_pipeline: transcript space too large");
  const auto fsize = fib.sizes();
  const SubsetIndexer big(N, s), small(N, t), pick(s, t);
  const auto picks = pick.all();

  // counts[Pi][T] = #{S in F_Pi : T subset of S}
  std::vector<std::vector<std::int64_t>> counts(F, std::vector<std::int64_t>(static_cast<std::size_t>(ct), 0));
  std::vector<int> sub(t);
  for (std::int64_t r = 0; r < cs; ++r) {
    const auto set = big.unrank(r);
    for (const auto& pk : picks) {
      for (int i = 0; i < t; ++i) sub[i] = set[pk[i]];
      ++counts[fib.fiber_of[r]][small.rank(sub)];
    }
  }

  MaBoundReport rep;
  rep.N = N;
  rep.s = s;
  rep.t = t;
  rep.p = fib.p;
  rep.ell = ell;
  rep.bound = std::sqrt(static_cast<double>(t) * fib.p / (2.0 * s));
  rep.collision_term = static_cast<double>(t) * t / s;

  std::vector<double> nu1, nu0;
  nu1.reserve(static_cast<std::size_t>(F * ct));
  nu0.reserve(static_cast<std::size_t>(F * ct));
  const bool exact = N <= kExactRationalMaxN;
  Rational tv_exact(0);
  for (int f = 0; f < F; ++f) {
    double kl_t = 0.0;
    const double pf = static_cast<double>(fsize[f]) / cs;
    for (std::int64_t q = 0; q < ct; ++q) {
      const double a = static_cast<double>(counts[f][q]) / (static_cast<double>(cs) * cst);
      const double b = pf / static_cast<double>(ct);
      nu1.push_back(a);
      nu0.push_back(b);
      if (exact) {
        const Rational ra(counts[f][q], cs * cst);
        const Rational rb(fsize[f], cs * ct);
        tv_exact += ra > rb ? ra - rb : rb - ra;
      }
      if (fsize[f] > 0 && counts[f][q] > 0) {
        const double cond = static_cast<double>(counts[f][q]) / (static_cast<double>(fsize[f]) * cst);
        kl_t += cond * std::log2(cond * static_cast<double>(ct));
      }
    }
    if (fsize[f] == 0) continue;
    rep.expected_kl_samples += pf * kl_t;
    rep.mutual_information += pf * std::log2(static_cast<double>(cs) / static_cast<double>(fsize[f]));
  }
  rep.tv = 0.0;
  for (std::size_t i = 0; i < nu0.size(); ++i) rep.tv += 0.5 * std::abs(nu0[i] - nu1[i]);
  if (exact) {
    tv_exact /= 2;
    rep.tv_exact = std::to_string(tv_exact.numerator()) + "/" + std::to_string(tv_exact.denominator());
  }
  rep.kl_transcripts = kl_divergence(nu1, nu0).bits;
  rep.kl_proof_marginal = 0.0;
  rep.contraction_rhs = static_cast<double>(t) / s * rep.mutual_information;
  rep.pinsker_lhs_nats = 2.0 * rep.tv * rep.tv;
  const double slack = 1e-12;
  rep.pinsker_ok = rep.pinsker_lhs_nats <= rep.kl_transcripts * std::log(2.0) + slack;
  rep.contraction_ok = rep.expected_kl_samples <= rep.contraction_rhs + slack;
  rep.entropy_ok = rep.mutual_information <= fib.p + slack;
  rep.bound_ok = rep.tv <= rep.bound + slack;

  // i.i.d. samples: the law of a sample sequence depends only on its set U.
  if (ell <= N && binomial(N, ell) <= kSubsetEnumerationBudget) {
    double tv = 0.0;
    for (int u = 1; u <= t; ++u) {
      const SubsetIndexer uidx(N, u);
      if (uidx.count() > kSubsetEnumerationBudget) {
        tv = -2.0;
        break;
      }
      std::vector<std::vector<std::int64_t>> cover(F, std::vector<std::int64_t>(static_cast<std::size_t>(uidx.count()), 0));
      const SubsetIndexer upick(s, u);
      if (u <= s) {
        const auto ups = upick.all();
        std::vector<int> us(u);
        for (std::int64_t r = 0; r < cs; ++r) {
          const auto set = big.unrank(r);
          for (const auto& pk : ups) {
            for (int i = 0; i < u; ++i) us[i] = set[pk[i]];
            ++cover[fib.fiber_of[r]][uidx.rank(us)];
          }
        }
      }
      const double seqs = detail::surjections(t, u);
      const double yes_seq = std::pow(1.0 / s, t) / cs;
      const double no_seq = std::pow(1.0 / ell, t) * static_cast<double>(binomial(N - u, ell - u)) / binomial(N, ell);
      for (int f = 0; f < F; ++f) {
        const double pf = static_cast<double>(fsize[f]) / cs;
        for (std::int64_t q = 0; q < uidx.count(); ++q)
          tv += seqs * std::abs(static_cast<double>(cover[f][q]) * yes_seq - pf * no_seq);
      }
    }
    if (tv >= 0) rep.tv_with_replacement = 0.5 * tv;
  }
  return rep;
}

enum class MerlinStrategy {
  kHonest,        // M intersected with the support
  kTruncate,      // honest answer with random elements dropped down to floor(1.5k)
  kRandomSubset,  // uniformly random floor(1.5k)-subset of M
};

inline const char* to_string(MerlinStrategy m) {
  switch (m) {
    case MerlinStrategy::kHonest:
      return "honest";
    case MerlinStrategy::kTruncate:
      return "truncate";
    case MerlinStrategy::kRandomSubset:
      return "random-subset";
  }
  return "unknown";
}

inline MerlinStrategy parse_merlin(const std::string& name) {
  for (auto m : {MerlinStrategy::kHonest, MerlinStrategy::kTruncate, MerlinStrategy::kRandomSubset})
    if (name == to_string(m)) return m;
  throw PreconditionError("unknown Merlin strategy: " + name);
}

// Private-coin tester: Arthur draws k samples S from mu and k uniform points
// R, sends M = S u R in random order; Merlin answers M'; accept iff
// |M'| <= 1.5k and S is contained in M'.
inline ProtocolTranscript ip_gapsupp(const FlatDistribution& mu, int k, MerlinStrategy merlin, Rng& rng,
                                     bool record_sets = false) {
  require(k >= 1, "ip_gapsupp: k must be positive");
  const int N = mu.N;
  auto S = sample_flat(mu, k, rng);
  std::vector<int> M = S;
  for (int i = 0; i < k; ++i) M.push_back(static_cast<int>(rng.below(N)));
  std::sort(M.begin(), M.end());
  M.erase(std::unique(M.begin(), M.end()), M.end());
  rng.shuffle(M.begin(), M.end());

  const int cap = static_cast<int>(std::floor(1.5 * k));
  std::vector<int> answer;
  if (merlin == MerlinStrategy::kRandomSubset) {
    answer = M;
    rng.shuffle(answer.begin(), answer.end());
    if (static_cast<int>(answer.size()) > cap) answer.resize(cap);
  } else {
    for (int x : M)
      if (std::binary_search(mu.support.begin(), mu.support.end(), x)) answer.push_back(x);
    if (merlin == MerlinStrategy::kTruncate && static_cast<int>(answer.size()) > cap) {
      rng.shuffle(answer.begin(), answer.end());
      answer.resize(cap);
    }
  }
  std::sort(answer.begin(), answer.end());
  bool covered = true;
  for (int x : S) covered = covered && std::binary_search(answer.begin(), answer.end(), x);
  const bool small = static_cast<int>(answer.size()) <= cap;

  ProtocolTranscript tr;
  tr.protocol = "ip-gapsupp";
  tr.params["N"] = N;
  tr.params["k"] = k;
  tr.params["support_size"] = mu.size();
  tr.stats["m_size"] = static_cast<double>(M.size());
  tr.stats["answer_size"] = static_cast<double>(answer.size());
  tr.stats["cap"] = cap;
  tr.accept = small && covered;
  tr.reason = tr.accept ? "accept" : (!small ? "answer-too-large" : "sample-missing");
  tr.lists["merlin"] = {static_cast<int>(merlin)};
  if (record_sets) {
    tr.lists["M"] = M;
    tr.lists["M_prime"] = answer;
  }
  return tr;
}

}  // namespace sslab
