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

// Brute-force reference computations used only by the tests. Each one is
// built from definitions by enumeration, independently of the closed forms
// in the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "sslab/combinatorics.hpp"
#include "sslab/linalg.hpp"

namespace sslab::oracle {

inline std::vector<std::vector<int>> all_subsets(int d, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(cur.size()) == s) {
      out.push_back(cur);
      return;
    }
    for (int x = next; x < d; ++x) {
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

inline std::vector<double> tensor_power(const std::vector<double>& v, int k) {
  std::vector<double> w{1.0};
  for (int c = 0; c < k; ++c) {
    std::vector<double> next(w.size() * v.size());
    for (std::size_t a = 0; a < w.size(); ++a)
      for (std::size_t b = 0; b < v.size(); ++b) next[a * v.size() + b] = w[a] * v[b];
    w = std::move(next);
  }
  return w;
}

// Average of phi_S^{(x)k} over every s-subset.
inline Matrix<double> subset_moment(int d, int s, int k) {
  const auto subsets = all_subsets(d, s);
  std::size_t n = 1;
  for (int i = 0; i < k; ++i) n *= d;
  Matrix<double> m(n, n);
  for (const auto& S : subsets) {
    std::vector<double> v(d, 0.0);
    for (int x : S) v[x] = 1.0 / std::sqrt(static_cast<double>(s));
    const auto w = tensor_power(v, k);
    for (std::size_t i = 0; i < n; ++i)
      if (w[i] != 0.0)
        for (std::size_t j = 0; j < n; ++j) m(i, j) += w[i] * w[j];
  }
  m *= 1.0 / static_cast<double>(subsets.size());
  return m;
}

// (1/k!) #{pi in S_k : pi(i) = j} / C(d+k-1, k), counting permutations.
inline Matrix<double> haar_moment(int d, int k) {
  const TupleIndexer idx(d, k);
  const std::size_t n = idx.size();
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  const double norm = static_cast<double>(perms.size()) * static_cast<double>(binomial(d + k - 1, k));
  Matrix<double> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = idx.decode(i);
    for (const auto& p : perms) {
      std::vector<int> u(k);
      for (int a = 0; a < k; ++a) u[a] = t[p[a]];
      m(i, idx.encode(u)) += 1.0 / norm;
    }
  }
  return m;
}

// Dense-regime flattened E0 entry by the double binomial sum over how many
// of the once-appearing (a) and twice-appearing (b) elements fall in S.
inline double e0_double_sum(int d, int k, int l, double s, double t) {
  const int a = 2 * (l - k), b = 2 * k - l;
  const double as = 1.0 / std::sqrt(2 * s * d), at = -1.0 / std::sqrt(2 * t * d);
  double acc = 0.0;
  for (int l1 = 0; l1 <= a; ++l1)
    for (int l2 = 0; l2 <= b; ++l2)
      acc += static_cast<double>(binomial(a, l1)) * static_cast<double>(binomial(b, l2)) *
             std::pow(as, l1 + 2 * l2) * std::pow(s, l1 + l2) * std::pow(at, a - l1 + 2 * (b - l2)) *
             std::pow(t, a - l1 + b - l2);
  return acc;
}

}  // namespace sslab::oracle
