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

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "sslab/combinatorics.hpp"

namespace sslab {
namespace {

TEST(Binomial, PascalAndEdges) {
  for (int n = 1; n <= 40; ++n)
    for (int r = 1; r < n; ++r) EXPECT_EQ(binomial(n, r), binomial(n - 1, r - 1) + binomial(n - 1, r));
  EXPECT_EQ(binomial(0, 0), 1);
  EXPECT_EQ(binomial(5, -1), 0);
  EXPECT_EQ(binomial(5, 6), 0);
  EXPECT_EQ(binomial(62, 31), 465428353255261088LL);
  EXPECT_DOUBLE_EQ(falling(7, 3), 210.0);
  EXPECT_DOUBLE_EQ(factorial(6), 720.0);
}

TEST(TupleIndexer, RowMajorRoundTrip) {
  const TupleIndexer idx(3, 4);
  EXPECT_EQ(idx.size(), 81u);
  EXPECT_EQ(idx.encode({0, 0, 1, 2}), 5u);
  for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(idx.encode(idx.decode(i)), i);
  EXPECT_THROW(idx.encode({0, 1}), DimensionError);
  EXPECT_TRUE(is_collision_free({0, 2, 1}));
  EXPECT_FALSE(is_collision_free({0, 2, 0}));
}

TEST(PerfectMatching, CountsAreDoubleFactorials) {
  const std::map<int, std::int64_t> expected{{2, 1}, {4, 3}, {6, 15}, {8, 105}, {10, 945}};
  for (const auto& [m, count] : expected) {
    std::int64_t n = 0;
    std::set<Matching> seen;
    for_each_perfect_matching(m, [&](const Matching& mt) {
      ++n;
      std::vector<int> covered;
      for (auto [a, b] : mt) {
        covered.push_back(a);
        covered.push_back(b);
      }
      std::sort(covered.begin(), covered.end());
      for (int i = 0; i < m; ++i) ASSERT_EQ(covered[i], i);
      seen.insert(mt);
    });
    EXPECT_EQ(n, count);
    EXPECT_EQ(static_cast<std::int64_t>(seen.size()), count);
  }
}

TEST(PerfectMatching, RandomIsUniformOverFour) {
  Rng rng(3);
  std::map<std::vector<int>, int> hits;
  const int trials = 30000;
  for (int i = 0; i < trials; ++i) {
    auto mt = random_perfect_matching(4, rng);
    std::vector<int> key;
    for (auto [a, b] : mt) key.push_back(std::min(a, b) * 4 + std::max(a, b));
    std::sort(key.begin(), key.end());
    ++hits[key];
  }
  ASSERT_EQ(hits.size(), 3u);
  for (const auto& [k, v] : hits) EXPECT_NEAR(v / double(trials), 1.0 / 3, 0.015);
  EXPECT_THROW(random_perfect_matching(3, rng), PreconditionError);
}

TEST(RandomSubset, SortedDistinctAndUniform) {
  Rng rng(11);
  const SubsetIndexer idx(6, 2);
  std::vector<int> hits(idx.count(), 0);
  const int trials = 45000;
  for (int i = 0; i < trials; ++i) {
    const auto s = random_subset(6, 2, rng);
    ASSERT_TRUE(std::is_sorted(s.begin(), s.end()));
    ASSERT_NE(s[0], s[1]);
    ++hits[idx.rank(s)];
  }
  for (int h : hits) EXPECT_NEAR(h / double(trials), 1.0 / 15, 0.006);
  EXPECT_TRUE(random_subset(4, 0, rng).empty());
  EXPECT_EQ(random_subset(4, 4, rng), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_THROW(random_subset(3, 4, rng), PreconditionError);
}

TEST(IntersectionSize, SortedInputs) {
  EXPECT_EQ(intersection_size({0, 2, 5}, {2, 3, 5}), 2);
  EXPECT_EQ(intersection_size({}, {1}), 0);
}

TEST(DerivedSeeds, DistinctStreamsAndIndices) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 4; ++s)
    for (std::uint64_t st = 0; st < 4; ++st)
      for (std::uint64_t i = 0; i < 64; ++i) seen.insert(derive_seed(s, st, i));
  EXPECT_EQ(seen.size(), 4u * 4 * 64);
}

TEST(ParallelFor, ResultIndependentOfJobs) {
  auto run = [](unsigned jobs) {
    std::vector<std::uint64_t> out(101);
    parallel_for(out.size(), jobs, [&](std::size_t i) {
      Rng rng(derive_seed(5, 0, i));
      out[i] = rng.bits();
    });
    return out;
  };
  EXPECT_EQ(run(1), run(4));
  EXPECT_EQ(run(1), run(7));
}

}  // namespace
}  // namespace sslab
