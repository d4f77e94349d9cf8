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
#include <cstdint>
#include <string>
#include <vector>

#include "sslab/combinatorics.hpp"
#include "sslab/core.hpp"
#include "sslab/ensembles.hpp"
#include "sslab/linalg.hpp"

namespace sslab {

// Ground set [d], level k (the k-subsets), intersection size t.
struct JohnsonParams {
  int d = 0, k = 0, t = 0;

  void validate() const {
    if (!(0 <= t && t <= k && k <= d)) throw PreconditionError("JohnsonParams: need 0 <= t <= k <= d");
  }
};

inline constexpr std::int64_t kJohnsonMatrixBudget = 3000;

// D_t: 0/1 matrix over k-subsets in lexicographic order, 1 iff |A n B| = t.
inline HermitianOperator<double> johnson_matrix(const JohnsonParams& p) {
  p.validate();
  if (binomial(p.d, p.k) > kJohnsonMatrixBudget) throw BudgetError("johnson_matrix: C(d,k) exceeds 3000");
  const auto sets = SubsetIndexer(p.d, p.k).all();
  const std::size_t n = sets.size();
  Matrix<double> m(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      if (intersection_size(sets[a], sets[b]) == p.t) m(a, b) = m(b, a) = 1.0;
  return HermitianOperator<double>::unchecked(std::move(m));
}

// Distinct eigenvalues of D_t on the common eigenspaces V_0..V_r of the
// scheme, r = min(k, d-k), with dim V_j = C(d,j) - C(d,j-1).
struct JohnsonSpectrum {
  JohnsonParams params;
  std::vector<std::int64_t> lambda;
  std::vector<std::int64_t> mult;

  std::vector<double> eigenvalue_multiset() const {
    std::vector<double> w;
    for (std::size_t j = 0; j < lambda.size(); ++j)
      for (std::int64_t c = 0; c < mult[j]; ++c) w.push_back(static_cast<double>(lambda[j]));
    std::sort(w.begin(), w.end(), std::greater<>());
    return w;
  }
};

// Eigenvalue of D_t on V_j when 2k <= d.
inline std::int64_t johnson_eigenvalue(int d, int k, int t, int j) {
  __int128 acc = 0;
  const int lo = std::max(0, j - t), hi = std::min(j, k - t);
  for (int l = lo; l <= hi; ++l) {
    const __int128 term = static_cast<__int128>(binomial(j, l)) * binomial(k - j, k - t - l) *
                          binomial(d - k - j, k - t - l);
    acc += (l % 2 == 0) ? term : -term;
  }
  return static_cast<std::int64_t>(acc);
}

inline JohnsonSpectrum johnson_spectrum(const JohnsonParams& p) {
  p.validate();
  JohnsonSpectrum out{p, {}, {}};
  // Complementation identifies level k with level d-k and shifts the
  // intersection size by d-2k. Eigenspaces keep their index j.
  int k = p.k, t = p.t;
  if (2 * k > p.d) {
    t = p.d - 2 * k + t;
    k = p.d - k;
  }
  for (int j = 0; j <= k; ++j) {
    out.mult.push_back(binomial(p.d, j) - binomial(p.d, j - 1));
    out.lambda.push_back(t < 0 ? 0 : johnson_eigenvalue(p.d, k, t, j));
  }
  return out;
}

struct JohnsonTraceNorm {
  double trace_norm = 0;  // exact sum of m_j |lambda_j|
  double bound = 0;       // C(d-k, k-t) C(d, t) 2^{k-t}
  double ratio = 0;
};

inline JohnsonTraceNorm johnson_trace_norm(const JohnsonParams& p) {
  const auto sp = johnson_spectrum(p);
  JohnsonTraceNorm out;
  for (std::size_t j = 0; j < sp.lambda.size(); ++j)
    out.trace_norm += static_cast<double>(sp.mult[j]) * std::abs(static_cast<double>(sp.lambda[j]));
  out.bound = static_cast<double>(binomial(p.d - p.k, p.k - p.t)) * static_cast<double>(binomial(p.d, p.t)) *
              std::ldexp(1.0, p.k - p.t);
  out.ratio = out.bound > 0 ? out.trace_norm / out.bound : 0.0;
  return out;
}

// Simplified magnitude estimates for |lambda_j| (j >= 1) valid for k small
// against sqrt(d). Diagnostics only; the exact formula is authoritative.
inline std::vector<double> johnson_simplified_bounds(const JohnsonParams& p) {
  p.validate();
  const double l0 = static_cast<double>(binomial(p.k, p.t)) * static_cast<double>(binomial(p.d - p.k, p.k - p.t));
  const double ckt = static_cast<double>(binomial(p.k, p.t));
  std::vector<double> out{l0};
  for (int j = 1; j <= p.k; ++j) {
    if (j <= p.t) {
      out.push_back(static_cast<double>(binomial(p.k - j, p.t - j)) / ckt * l0);
    } else {
      out.push_back(static_cast<double>(binomial(j, p.t)) * factorial(p.k - p.t) /
                    (ckt * factorial(p.k - j)) / std::pow(static_cast<double>(p.d), j - p.t) * l0);
    }
  }
  return out;
}

// Coefficients alpha_0..alpha_{k-1} with
// Phi~ - ((d+k-1)_(k) / d_(k)) Psi~ = (sum_t alpha_t D_t) (x) J on the
// collision-free block, alpha_t = (s-k)_(k-t) / d_(2k-t). A coefficient is
// 0 when no pair of k-sets meets in t points or when the product vanishes.
inline std::vector<double> decompose_D(int d, int s, int k) {
  require(k >= 1 && k <= d, "decompose_D: need 1 <= k <= d");
  if (k > s) throw PreconditionError("decompose_D: need k <= s");
  require(s <= d, "decompose_D: need s <= d");
  std::vector<double> alpha(k, 0.0);
  for (int t = 0; t < k; ++t) {
    if (2 * k - t > d) continue;
    alpha[t] = falling(s - k, k - t) / falling(d, 2 * k - t);
  }
  return alpha;
}

// Rebuilds the collision-free part of Phi~ - ((d+k-1)_(k)/d_(k)) Psi~ in the
// tuple basis from the alpha_t.
inline Matrix<double> reconstruct_from_johnson(int d, int s, int k) {
  const auto alpha = decompose_D(d, s, k);
  detail::checked_power(d, k);
  const detail::TupleTable tt(d, k);
  return detail::fill_by_distinct(tt, true, [&](int l) {
    const int t = 2 * k - l;
    return t >= k ? 0.0 : alpha[t];
  });
}

// ||Phi~ - Psi~||_1 from the scheme spectra:
// k! sum_j m_j |sum_t f_t lambda_j(t) - 1/(d+k-1)_(k)|, f_t = s_(2k-t)/(s_(k) d_(2k-t)).
inline double approximant_difference_trace_norm(int d, int s, int k) {
  require(k >= 1 && k <= s && s <= d, "approximant_difference_trace_norm: need 1 <= k <= s <= d");
  std::vector<JohnsonSpectrum> sp;
  for (int t = 0; t <= k; ++t) sp.push_back(johnson_spectrum({d, k, t}));
  const double shift = 1.0 / falling(d + k - 1, k);
  double acc = 0.0;
  for (std::size_t j = 0; j < sp[0].lambda.size(); ++j) {
    double v = -shift;
    for (int t = 0; t <= k; ++t) {
      if (2 * k - t > d) continue;
      const double f = falling(s, 2 * k - t) / (falling(s, k) * falling(d, 2 * k - t));
      v += f * static_cast<double>(sp[t].lambda[j]);
    }
    acc += static_cast<double>(sp[0].mult[j]) * std::abs(v);
  }
  return factorial(k) * acc;
}

struct HaarSubsetNorm {
  double trace_norm = 0;
  std::int64_t sym_dim = 0;  // C(d+k-1, k)
  std::int64_t rank = 0;     // rank of the subset moment
  std::vector<double> gram_eigenvalues;
  std::vector<std::int64_t> gram_mult;
};

// ||Psi - Phi||_1 without forming either operator. Phi = V V^T with columns
// phi_S^{(x)k} / sqrt(C(d,s)), so its nonzero spectrum is that of the Gram
// matrix G(S,S') = (|S n S'|/s)^k / C(d,s) = sum_u (u/s)^k D_u / C(d,s),
// which the Johnson scheme J(d,s) diagonalizes. Psi is the normalized
// symmetric projector and commutes with Phi.
inline HaarSubsetNorm haar_subset_trace_norm(int d, int s, int k) {
  require(1 <= s && s <= d && k >= 1, "haar_subset_trace_norm: need 1 <= s <= d and k >= 1");
  std::vector<JohnsonSpectrum> sp;
  for (int u = 0; u <= s; ++u) sp.push_back(johnson_spectrum({d, s, u}));
  HaarSubsetNorm out;
  out.sym_dim = binomial(d + k - 1, k);
  const double inv_sym = 1.0 / static_cast<double>(out.sym_dim);
  const double denom = std::pow(static_cast<double>(s), k) * static_cast<double>(binomial(d, s));
  for (std::size_t j = 0; j < sp[0].lambda.size(); ++j) {
    __int128 num = 0;
    for (int u = 0; u <= s; ++u) {
      __int128 uk = 1;
      for (int i = 0; i < k; ++i) uk *= u;
      num += uk * sp[u].lambda[j];
    }
    const double g = static_cast<double>(num) / denom;
    out.gram_eigenvalues.push_back(g);
    out.gram_mult.push_back(sp[0].mult[j]);
    if (num == 0) continue;
    out.rank += sp[0].mult[j];
    out.trace_norm += static_cast<double>(sp[0].mult[j]) * std::abs(inv_sym - g);
  }
  out.trace_norm += static_cast<double>(out.sym_dim - out.rank) * inv_sym;
  return out;
}

// Shape of the Haar-versus-subset bound: k^2/d + k/sqrt(s) + s k/d.
inline double haar_subset_bound_shape(int d, int s, int k) {
  return static_cast<double>(k) * k / d + k / std::sqrt(static_cast<double>(s)) + static_cast<double>(s) * k / d;
}

}  // namespace sslab
