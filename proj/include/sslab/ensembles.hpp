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
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "sslab/combinatorics.hpp"
#include "sslab/core.hpp"
#include "sslab/linalg.hpp"

namespace sslab {

// A domain size d and a strictly increasing index list S in [0, d).
class SubsetSpec {
 public:
  SubsetSpec(int d, std::vector<int> s) : d_(d), s_(std::move(s)) {
    if (d_ < 1) throw PreconditionError("SubsetSpec: d must be positive");
    if (s_.empty()) throw PreconditionError("SubsetSpec: S must be nonempty");
    for (std::size_t i = 0; i < s_.size(); ++i) {
      if (s_[i] < 0 || s_[i] >= d_) throw PreconditionError("SubsetSpec: index out of range");
      if (i > 0 && s_[i] <= s_[i - 1]) throw PreconditionError("SubsetSpec: indices must be strictly increasing");
    }
  }

  // Sorts and deduplicates before validating.
  static SubsetSpec from_unsorted(int d, std::vector<int> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return SubsetSpec(d, std::move(s));
  }

  static SubsetSpec full(int d) {
    std::vector<int> s(d);
    std::iota(s.begin(), s.end(), 0);
    return SubsetSpec(d, std::move(s));
  }

  int d() const { return d_; }
  int size() const { return static_cast<int>(s_.size()); }
  const std::vector<int>& indices() const { return s_; }
  bool contains(int x) const { return std::binary_search(s_.begin(), s_.end(), x); }

  friend bool operator==(const SubsetSpec& a, const SubsetSpec& b) { return a.d_ == b.d_ && a.s_ == b.s_; }

 private:
  int d_;
  std::vector<int> s_;
};

inline StateVector subset_state(const SubsetSpec& spec) {
  std::vector<Cplx> a(spec.d());
  const double amp = 1.0 / std::sqrt(static_cast<double>(spec.size()));
  for (int i : spec.indices()) a[i] = amp;
  return StateVector(std::move(a), 1e-9);
}

inline StateVector binary_phase_state(int d, const std::vector<int>& signs) {
  if (d < 1 || static_cast<int>(signs.size()) != d) throw DimensionError("binary_phase_state: need d signs");
  std::vector<Cplx> a(d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw PreconditionError("binary_phase_state: signs must be +1 or -1");
    a[i] = amp * signs[i];
  }
  return StateVector(std::move(a), 1e-9);
}

// |psi| taken entrywise and renormalized (a no-op on the norm).
inline StateVector absolute_state(const StateVector& psi) {
  std::vector<Cplx> a(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) a[i] = std::abs(psi[i]);
  return StateVector(std::move(a), 1e-9);
}

// Amplitude 1/sqrt(2|S|) on S and -1/sqrt(2|T|) on T.
inline StateVector two_mode_state(const SubsetSpec& s, const SubsetSpec& t) {
  if (s.d() != t.d()) throw DimensionError("two_mode_state: domain sizes differ");
  if (intersection_size(s.indices(), t.indices()) != 0) throw PreconditionError("two_mode_state: S and T overlap");
  std::vector<Cplx> a(s.d());
  const double as = 1.0 / std::sqrt(2.0 * s.size()), at = -1.0 / std::sqrt(2.0 * t.size());
  for (int i : s.indices()) a[i] = as;
  for (int i : t.indices()) a[i] = at;
  return StateVector(std::move(a), 1e-9);
}

inline StateVector haar_sample(int d, Rng& rng) {
  require(d >= 1, "haar_sample: d must be positive");
  std::vector<Cplx> a(d);
  for (auto& x : a) {
    const double re = rng.normal();
    const double im = rng.normal();
    x = Cplx(re, im);
  }
  return StateVector::normalized(std::move(a));
}

enum class Exactness { kExact, kApproximant };

inline const char* to_string(Exactness e) { return e == Exactness::kExact ? "exact" : "approximant"; }

// Dense operators are limited to d^k <= this many rows.
inline constexpr std::size_t kMomentBudget = 4096;

// k-th moment operator on (C^d)^{(x)k} in the row-major tuple basis. All
// ensembles here have real moments, so entries are stored as doubles.
struct MomentOperator {
  int d = 0;
  int k = 0;
  std::string label;
  Exactness exactness = Exactness::kExact;
  HermitianOperator<double> matrix;

  std::size_t dim() const { return matrix.dim(); }

  // Trace and PSD invariants; returns an empty string when they hold.
  std::string invariant_violation() const {
    const double tr = matrix.trace();
    if (exactness == Exactness::kExact && std::abs(tr - 1.0) > 1e-9) return "trace is not 1";
    if (exactness == Exactness::kApproximant && tr > 1.0 + 1e-9) return "trace exceeds 1";
    if (!is_psd(matrix, 1e-8)) return "matrix is not PSD";
    return {};
  }
};

namespace detail {

inline std::size_t checked_power(int d, int k) {
  require(d >= 1 && k >= 1, "moment operator: need d >= 1 and k >= 1");
  std::size_t n = 1;
  for (int i = 0; i < k; ++i) {
    n *= static_cast<std::size_t>(d);
    if (n > kMomentBudget) throw BudgetError("moment operator: d^k exceeds the dense budget of 4096");
  }
  return n;
}

// Per-tuple data for fast distinct-count queries.
struct TupleTable {
  TupleIndexer idx;
  std::vector<std::vector<int>> tuples;
  std::vector<std::uint64_t> masks;  // used when d <= 64
  std::vector<bool> collision_free;

  TupleTable(int d, int k) : idx(d, k) {
    const std::size_t n = idx.size();
    tuples.resize(n);
    masks.resize(n, 0);
    collision_free.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      tuples[i] = idx.decode(i);
      if (d <= 64)
        for (int v : tuples[i]) masks[i] |= std::uint64_t{1} << v;
      collision_free[i] = is_collision_free(tuples[i]);
    }
  }

  int distinct(std::size_t i, std::size_t j) const {
    if (idx.d() <= 64) return std::popcount(masks[i] | masks[j]);
    return distinct_in_union(tuples[i], tuples[j]);
  }

  std::size_t size() const { return tuples.size(); }
};

// Fills a symmetric matrix from f(i, j, l) where l is the distinct count.
template <class F>
Matrix<double> fill_by_distinct(const TupleTable& tt, bool collision_free_only, F f) {
  const std::size_t n = tt.size();
  Matrix<double> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (collision_free_only && !tt.collision_free[i]) continue;
    for (std::size_t j = i; j < n; ++j) {
      if (collision_free_only && !tt.collision_free[j]) continue;
      const double v = f(tt.distinct(i, j));
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

}  // namespace detail

// E psi^{(x)k} over Haar psi: the normalized projector onto the symmetric
// subspace.
inline MomentOperator haar_moment_exact(int d, int k) {
  const std::size_t n = detail::checked_power(d, k);
  const TupleIndexer idx(d, k);
  const double dsym = static_cast<double>(binomial(d + k - 1, k));
  const double kfact = factorial(k);
  Matrix<double> m(n, n);
  std::vector<int> t, perm;
  for (std::size_t i = 0; i < n; ++i) {
    idx.decode_into(i, t);
    perm = t;
    std::sort(perm.begin(), perm.end());
    // #{pi : pi(i) = j} is the product of multiplicity factorials.
    double stab = 1.0;
    for (std::size_t a = 0; a < perm.size();) {
      std::size_t b = a;
      while (b < perm.size() && perm[b] == perm[a]) ++b;
      stab *= factorial(static_cast<int>(b - a));
      a = b;
    }
    const double v = stab / (kfact * dsym);
    do {
      m(i, idx.encode(perm)) = v;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return {d, k, "haar", Exactness::kExact, HermitianOperator<double>::unchecked(std::move(m))};
}

// E phi_S^{(x)k} over uniformly random |S| = s. Entry s_(l) / (s^k d_(l)),
// l the number of distinct values in the row and column tuples.
inline MomentOperator subset_moment_exact(int d, int s, int k) {
  require(s >= 1 && s <= d, "subset_moment_exact: need 1 <= s <= d");
  detail::checked_power(d, k);
  const detail::TupleTable tt(d, k);
  const double sk = std::pow(static_cast<double>(s), k);
  auto m = detail::fill_by_distinct(tt, false, [&](int l) { return falling(s, l) / (sk * falling(d, l)); });
  return {d, k, "subset", Exactness::kExact, HermitianOperator<double>::unchecked(std::move(m))};
}

// Haar moment restricted to collision-free row and column tuples.
inline MomentOperator haar_moment_approx(int d, int k) {
  require(k <= d, "haar_moment_approx: need k <= d");
  const auto exact = haar_moment_exact(d, k);
  const detail::TupleTable tt(d, k);
  Matrix<double> m = exact.matrix.matrix();
  for (std::size_t i = 0; i < tt.size(); ++i)
    for (std::size_t j = 0; j < tt.size(); ++j)
      if (!tt.collision_free[i] || !tt.collision_free[j]) m(i, j) = 0.0;
  return {d, k, "haar-approx", Exactness::kApproximant, HermitianOperator<double>::unchecked(std::move(m))};
}

// Subset approximant: s_(l) / (s_(k) d_(l)) on collision-free tuples, 0 elsewhere.
inline MomentOperator subset_moment_approx(int d, int s, int k) {
  require(s >= 1 && s <= d, "subset_moment_approx: need 1 <= s <= d");
  if (k > s) throw PreconditionError("subset_moment_approx: need k <= s");
  detail::checked_power(d, k);
  const detail::TupleTable tt(d, k);
  const double sk = falling(s, k);
  auto m = detail::fill_by_distinct(tt, true, [&](int l) { return falling(s, l) / (sk * falling(d, l)); });
  return {d, k, "subset-approx", Exactness::kApproximant, HermitianOperator<double>::unchecked(std::move(m))};
}

// Closed form of ||Psi - Psi~||_1.
inline double haar_approx_distance_closed_form(int d, int k) {
  return 1.0 - falling(d, k) / falling(d + k - 1, k);
}

// Densities of the two dense-regime ensembles. E1 puts each element in S
// with probability p; E0 puts it in S with probability s, else in T with
// probability t.
struct DenseEnsembleParams {
  int d = 0;
  double p = 0, s = 0, t = 0;

  // p = (sqrt(s/2) - sqrt(t/2))^2, so the pair has equal overlap with the
  // uniform superposition.
  static DenseEnsembleParams matched(int d, double s, double t) {
    const double r = std::sqrt(s / 2) - std::sqrt(t / 2);
    return {d, r * r, s, t};
  }

  double match_defect() const { return std::abs(std::sqrt(s / 2) - std::sqrt(t / 2) - std::sqrt(p)); }
  bool is_matched() const { return match_defect() <= 1e-12; }
};

enum class DenseEnsemble { kE0, kE1 };

inline const char* to_string(DenseEnsemble e) { return e == DenseEnsemble::kE0 ? "E0" : "E1"; }

namespace detail {

inline void check_density(double x, const char* name, bool allow_one = false) {
  if (!(x > 0.0 && (x < 1.0 || (allow_one && x == 1.0))))
    throw PreconditionError(std::string("dense ensemble: density ") + name + " outside (0,1)");
}

}  // namespace detail

// Flattened, collision-free approximants of the dense-regime moments. The E1
// entry is p^{l-k}/d^k. The E0 entry multiplies, per distinct element, the
// expected amplitude (appearing once) or squared amplitude (appearing in both
// tuples): (sqrt(s/2d) - sqrt(t/2d))^{2(l-k)} (1/d)^{2k-l}.
inline MomentOperator dense_flattened_moment(const DenseEnsembleParams& prm, DenseEnsemble which, int k) {
  const int d = prm.d;
  detail::checked_power(d, k);
  const detail::TupleTable tt(d, k);
  Matrix<double> m;
  if (which == DenseEnsemble::kE1) {
    detail::check_density(prm.p, "p");
    const double dk = std::pow(static_cast<double>(d), k);
    m = detail::fill_by_distinct(tt, true, [&](int l) { return std::pow(prm.p, l - k) / dk; });
  } else {
    detail::check_density(prm.s, "s");
    detail::check_density(prm.t, "t");
    require(prm.s + prm.t <= 1.0, "dense ensemble: need s + t <= 1");
    const double once = std::sqrt(prm.s / (2.0 * d)) - std::sqrt(prm.t / (2.0 * d));
    const double both = 1.0 / d;
    m = detail::fill_by_distinct(tt, true, [&](int l) {
      return std::pow(once, 2 * (l - k)) * std::pow(both, 2 * k - l);
    });
  }
  return {d, k, std::string("dense-flattened-") + to_string(which), Exactness::kApproximant,
          HermitianOperator<double>::unchecked(std::move(m))};
}

enum class DenseNormalization {
  kActual,     // amplitudes 1/sqrt(|S|), empty draws resampled
  kFlattened,  // amplitudes 1/sqrt(pd), projected onto collision-free tuples
};

struct MonteCarloMoment {
  MomentOperator mean;
  Matrix<double> stderr_;  // per-entry standard error of the mean
  // Per distinct-count class l over collision-free entry pairs: the mean
  // entry and the standard error of that mean across trials.
  std::vector<int> class_l;
  std::vector<double> class_mean;
  std::vector<double> class_stderr;
  int trials = 0;
  int resamples = 0;
};

namespace detail {

// Real amplitude vector of one draw; false if the draw must be resampled.
inline bool dense_draw(const DenseEnsembleParams& prm, DenseEnsemble which, DenseNormalization norm, Rng& rng,
                       std::vector<double>& amp) {
  const int d = prm.d;
  amp.assign(d, 0.0);
  if (which == DenseEnsemble::kE1) {
    int count = 0;
    std::vector<bool> in(d);
    for (int i = 0; i < d; ++i) {
      in[i] = rng.uniform() < prm.p;
      count += in[i];
    }
    if (norm == DenseNormalization::kActual && count == 0) return false;
    const double a = norm == DenseNormalization::kActual ? 1.0 / std::sqrt(static_cast<double>(count))
                                                         : 1.0 / std::sqrt(prm.p * d);
    for (int i = 0; i < d; ++i)
      if (in[i]) amp[i] = a;
    return true;
  }
  std::vector<int> side(d, 0);
  int cs = 0, ct = 0;
  for (int i = 0; i < d; ++i) {
    const double r = rng.uniform();
    if (r < prm.s) {
      side[i] = 1;
      ++cs;
    } else if (r < prm.s + prm.t) {
      side[i] = -1;
      ++ct;
    }
  }
  double as, at;
  if (norm == DenseNormalization::kActual) {
    if (cs == 0 || ct == 0) return false;
    as = 1.0 / std::sqrt(2.0 * cs);
    at = -1.0 / std::sqrt(2.0 * ct);
  } else {
    as = 1.0 / std::sqrt(2.0 * prm.s * d);
    at = -1.0 / std::sqrt(2.0 * prm.t * d);
  }
  for (int i = 0; i < d; ++i) amp[i] = side[i] == 1 ? as : (side[i] == -1 ? at : 0.0);
  return true;
}

}  // namespace detail

// Empirical E phi^{(x)k} over sampled dense-regime states.
inline MonteCarloMoment dense_moment_monte_carlo(const DenseEnsembleParams& prm, DenseEnsemble which, int k,
                                                 int trials, Rng& rng,
                                                 DenseNormalization norm = DenseNormalization::kActual) {
  require(trials >= 1, "dense_moment_monte_carlo: trials must be positive");
  if (which == DenseEnsemble::kE1) {
    detail::check_density(prm.p, "p", true);
  } else {
    detail::check_density(prm.s, "s");
    detail::check_density(prm.t, "t");
    require(prm.s + prm.t <= 1.0, "dense ensemble: need s + t <= 1");
  }
  const std::size_t n = detail::checked_power(prm.d, k);
  const detail::TupleTable tt(prm.d, k);
  const bool project = norm == DenseNormalization::kFlattened;

  // Collision-free pairs (i <= j) grouped by distinct count.
  std::vector<int> class_of_l(2 * k + 1, -1);
  MonteCarloMoment out;
  for (int l = k; l <= 2 * k; ++l) {
    class_of_l[l] = static_cast<int>(out.class_l.size());
    out.class_l.push_back(l);
  }
  std::vector<double> class_count(out.class_l.size(), 0.0);
  std::vector<std::int8_t> cls(n * n, -1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (tt.collision_free[i] && tt.collision_free[j]) {
        cls[i * n + j] = static_cast<std::int8_t>(class_of_l[tt.distinct(i, j)]);
        class_count[cls[i * n + j]] += 1.0;
      }

  std::vector<double> sum(n * n, 0.0), sumsq(n * n, 0.0);
  std::vector<double> csum(out.class_l.size(), 0.0), csumsq(out.class_l.size(), 0.0);
  std::vector<double> amp, vec(n), cacc(out.class_l.size());
  int rejects = 0;
  for (int trial = 0; trial < trials; ++trial) {
    while (!detail::dense_draw(prm, which, norm, rng, amp)) {
      ++out.resamples;
      if (++rejects >= 100) throw Error("dense_moment_monte_carlo: 100 consecutive degenerate draws");
    }
    rejects = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double v = 1.0;
      for (int x : tt.tuples[i]) v *= amp[x];
      vec[i] = (project && !tt.collision_free[i]) ? 0.0 : v;
    }
    std::fill(cacc.begin(), cacc.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double vi = vec[i];
      double* srow = &sum[i * n];
      double* qrow = &sumsq[i * n];
      for (std::size_t j = 0; j < n; ++j) {
        const double e = vi * vec[j];
        srow[j] += e;
        qrow[j] += e * e;
      }
      if (!tt.collision_free[i] || vi == 0.0) continue;
      const std::int8_t* crow = &cls[i * n];
      for (std::size_t j = 0; j < n; ++j)
        if (crow[j] >= 0) cacc[crow[j]] += vi * vec[j];
    }
    for (std::size_t c = 0; c < cacc.size(); ++c) {
      const double mean_c = class_count[c] > 0 ? cacc[c] / class_count[c] : 0.0;
      csum[c] += mean_c;
      csumsq[c] += mean_c * mean_c;
    }
  }

  const double nt = trials;
  Matrix<double> mean(n, n), se(n, n);
  for (std::size_t e = 0; e < n * n; ++e) {
    const double mu = sum[e] / nt;
    mean.data()[e] = mu;
    const double var = trials > 1 ? std::max(0.0, (sumsq[e] - nt * mu * mu) / (nt - 1)) : 0.0;
    se.data()[e] = std::sqrt(var / nt);
  }
  for (std::size_t c = 0; c < csum.size(); ++c) {
    const double mu = csum[c] / nt;
    const double var = trials > 1 ? std::max(0.0, (csumsq[c] - nt * mu * mu) / (nt - 1)) : 0.0;
    out.class_mean.push_back(mu);
    out.class_stderr.push_back(std::sqrt(var / nt));
  }
  out.mean = {prm.d, k, std::string("dense-mc-") + to_string(which), Exactness::kExact,
              HermitianOperator<double>::unchecked(std::move(mean))};
  if (project) out.mean.exactness = Exactness::kApproximant;
  out.stderr_ = std::move(se);
  out.trials = trials;
  return out;
}

// Outcome distribution of measuring every copy in the computational basis:
// the diagonal of the moment, indexed by tuple.
inline std::vector<double> classical_shadow_channel(const MomentOperator& rho) {
  if (rho.exactness != Exactness::kExact) throw PreconditionError("classical_shadow_channel: need an exact moment");
  if (std::abs(rho.matrix.trace() - 1.0) > 1e-9)
    throw PreconditionError("classical_shadow_channel: input is not normalized");
  std::vector<double> p(rho.dim());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::max(0.0, rho.matrix(i, i));
  return p;
}

inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw DimensionError("total_variation: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return 0.5 * acc;
}

// Orthonormal basis of the symmetric subspace: one vector per multiset m,
// the uniform superposition of the c_m^2 = k!/prod(m_i!) tuples carrying it.
struct SymmetricBasis {
  int d = 0, k = 0;
  std::vector<std::vector<int>> multisets;  // sorted, lexicographic
  std::vector<double> coeff;                // c_m

  SymmetricBasis(int d_, int k_) : d(d_), k(k_) {
    require(d >= 1 && k >= 1, "SymmetricBasis: need d >= 1 and k >= 1");
    std::vector<int> cur(k, 0);
    while (true) {
      multisets.push_back(cur);
      double denom = 1.0;
      for (std::size_t a = 0; a < cur.size();) {
        std::size_t b = a;
        while (b < cur.size() && cur[b] == cur[a]) ++b;
        denom *= factorial(static_cast<int>(b - a));
        a = b;
      }
      coeff.push_back(std::sqrt(factorial(k) / denom));
      int i = k - 1;
      while (i >= 0 && cur[i] == d - 1) --i;
      if (i < 0) break;
      ++cur[i];
      for (int j = i + 1; j < k; ++j) cur[j] = cur[i];
    }
  }

  std::size_t size() const { return multisets.size(); }
};

// W^T M W for the isometry W onto the symmetric subspace. Trace norms of
// operators supported there are preserved.
inline HermitianOperator<double> compress_to_symmetric(const MomentOperator& m) {
  const SymmetricBasis basis(m.d, m.k);
  const TupleIndexer idx(m.d, m.k);
  const std::size_t ns = basis.size();
  std::vector<std::vector<std::size_t>> members(ns);
  for (std::size_t b = 0; b < ns; ++b) {
    auto perm = basis.multisets[b];
    do {
      members[b].push_back(idx.encode(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  Matrix<double> out(ns, ns);
  for (std::size_t a = 0; a < ns; ++a)
    for (std::size_t b = 0; b < ns; ++b) {
      double acc = 0.0;
      for (std::size_t i : members[a])
        for (std::size_t j : members[b]) acc += m.matrix(i, j);
      out(a, b) = acc / (basis.coeff[a] * basis.coeff[b]);
    }
  return HermitianOperator<double>::unchecked(std::move(out));
}

// The subset moment written directly in the symmetric basis:
// c_m c_m' s_(l) / (s^k d_(l)). Needs no d^k-sized object.
inline HermitianOperator<double> subset_moment_symmetric(int d, int s, int k) {
  require(s >= 1 && s <= d, "subset_moment_symmetric: need 1 <= s <= d");
  const SymmetricBasis basis(d, k);
  const std::size_t ns = basis.size();
  if (ns > 6000) throw BudgetError("subset_moment_symmetric: symmetric dimension too large");
  const double sk = std::pow(static_cast<double>(s), k);
  std::vector<double> table(2 * k + 1);
  for (int l = 0; l <= 2 * k; ++l) table[l] = falling(s, l) / (sk * falling(d, l));
  Matrix<double> out(ns, ns);
  for (std::size_t a = 0; a < ns; ++a)
    for (std::size_t b = a; b < ns; ++b) {
      const int l = distinct_in_union(basis.multisets[a], basis.multisets[b]);
      const double v = basis.coeff[a] * basis.coeff[b] * table[l];
      out(a, b) = v;
      out(b, a) = v;
    }
  return HermitianOperator<double>::unchecked(std::move(out));
}

}  // namespace sslab
