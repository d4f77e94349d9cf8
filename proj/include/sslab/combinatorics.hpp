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
#include <cstdint>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "sslab/core.hpp"

namespace sslab {

// Exact binomial coefficient; 0 outside 0 <= r <= n.
inline std::int64_t binomial(std::int64_t n, std::int64_t r) {
  if (n < 0 || r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  __int128 acc = 1;
  for (std::int64_t i = 0; i < r; ++i) acc = acc * (n - i) / (i + 1);
  return static_cast<std::int64_t>(acc);
}

// Falling factorial n(n-1)...(n-k+1).
inline double falling(double n, int k) {
  double acc = 1.0;
  for (int i = 0; i < k; ++i) acc *= (n - i);
  return acc;
}

inline double factorial(int k) { return falling(k, k); }

// Row-major map between [0,d)^k and [0, d^k). The first tuple entry is the
// most significant digit; every moment operator uses this basis.
class TupleIndexer {
 public:
  TupleIndexer(std::size_t d, std::size_t k) : d_(d), k_(k), size_(1) {
    require(d >= 1, "TupleIndexer: d must be positive");
    for (std::size_t i = 0; i < k; ++i) size_ *= d;
  }

  std::size_t d() const { return d_; }
  std::size_t k() const { return k_; }
  std::size_t size() const { return size_; }

  std::size_t encode(const std::vector<int>& tuple) const {
    if (tuple.size() != k_) throw DimensionError("TupleIndexer: tuple length mismatch");
    std::size_t idx = 0;
    for (int v : tuple) {
      if (v < 0 || static_cast<std::size_t>(v) >= d_)
        throw PreconditionError("TupleIndexer: entry out of range");
      idx = idx * d_ + static_cast<std::size_t>(v);
    }
    return idx;
  }

  std::vector<int> decode(std::size_t idx) const {
    std::vector<int> out(k_);
    decode_into(idx, out);
    return out;
  }

  void decode_into(std::size_t idx, std::vector<int>& out) const {
    out.resize(k_);
    for (std::size_t i = k_; i-- > 0;) {
      out[i] = static_cast<int>(idx % d_);
      idx /= d_;
    }
  }

 private:
  std::size_t d_, k_, size_;
};

inline bool is_collision_free(const std::vector<int>& tuple) {
  for (std::size_t a = 0; a < tuple.size(); ++a)
    for (std::size_t b = a + 1; b < tuple.size(); ++b)
      if (tuple[a] == tuple[b]) return false;
  return true;
}

// Number of distinct values in the union of the entries of a and b.
inline int distinct_in_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> all(a);
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  return static_cast<int>(std::unique(all.begin(), all.end()) - all.begin());
}

// Lexicographic combinadic over the k-subsets of [0, n).
class SubsetIndexer {
 public:
  SubsetIndexer(int n, int k) : n_(n), k_(k), count_(binomial(n, k)) {
    require(n >= 0 && k >= 0 && k <= n, "SubsetIndexer: need 0 <= k <= n");
  }

  int n() const { return n_; }
  int k() const { return k_; }
  std::int64_t count() const { return count_; }

  // Rank of a strictly increasing subset.
  std::int64_t rank(const std::vector<int>& subset) const {
    if (static_cast<int>(subset.size()) != k_) throw DimensionError("SubsetIndexer: size mismatch");
    std::int64_t r = 0;
    int prev = -1;
    for (int i = 0; i < k_; ++i) {
      const int a = subset[i];
      if (a <= prev || a >= n_) throw PreconditionError("SubsetIndexer: subset not strictly increasing in range");
      for (int v = prev + 1; v < a; ++v) r += binomial(n_ - v - 1, k_ - i - 1);
      prev = a;
    }
    return r;
  }

  std::vector<int> unrank(std::int64_t r) const {
    if (r < 0 || r >= count_) throw PreconditionError("SubsetIndexer: rank out of range");
    std::vector<int> out;
    out.reserve(k_);
    int v = 0;
    for (int i = 0; i < k_; ++i) {
      for (;; ++v) {
        const std::int64_t block = binomial(n_ - v - 1, k_ - i - 1);
        if (r < block) break;
        r -= block;
      }
      out.push_back(v++);
    }
    return out;
  }

  // All subsets in rank order.
  std::vector<std::vector<int>> all() const {
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(count_));
    std::vector<int> cur(k_);
    std::iota(cur.begin(), cur.end(), 0);
    if (k_ == 0) {
      out.push_back({});
      return out;
    }
    while (true) {
      out.push_back(cur);
      int i = k_ - 1;
      while (i >= 0 && cur[i] == n_ - k_ + i) --i;
      if (i < 0) break;
      ++cur[i];
      for (int j = i + 1; j < k_; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
  }

 private:
  int n_, k_;
  std::int64_t count_;
};

inline int intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
  int count = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++count;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return count;
}

using Matching = std::vector<std::pair<int, int>>;

// Calls fn on every perfect matching of {0..m-1}; m must be even.
inline void for_each_perfect_matching(int m, const std::function<void(const Matching&)>& fn) {
  require(m % 2 == 0, "perfect matching needs an even number of points");
  std::vector<bool> used(m, false);
  Matching current;
  std::function<void()> rec = [&]() {
    int first = -1;
    for (int i = 0; i < m; ++i)
      if (!used[i]) {
        first = i;
        break;
      }
    if (first < 0) {
      fn(current);
      return;
    }
    used[first] = true;
    for (int j = first + 1; j < m; ++j) {
      if (used[j]) continue;
      used[j] = true;
      current.emplace_back(first, j);
      rec();
      current.pop_back();
      used[j] = false;
    }
    used[first] = false;
  };
  rec();
}

// Uniformly random perfect matching: pair consecutive entries of a shuffle.
inline Matching random_perfect_matching(int m, Rng& rng) {
  require(m % 2 == 0, "perfect matching needs an even number of points");
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order.begin(), order.end());
  Matching out;
  out.reserve(m / 2);
  for (int i = 0; i < m; i += 2) out.emplace_back(order[i], order[i + 1]);
  return out;
}

// Uniformly random sorted s-subset of [0, d).
inline std::vector<int> random_subset(int d, int s, Rng& rng) {
  require(s >= 0 && s <= d, "random_subset: need 0 <= s <= d");
  std::vector<int> pool(d);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < s; ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(d - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(s);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace sslab
