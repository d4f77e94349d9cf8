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

#include <cmath>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "sslab/johnson.hpp"

namespace sslab {
namespace {

TEST(Combinadic, RankUnrankRoundTrip) {
  for (int n = 0; n <= 9; ++n)
    for (int k = 0; k <= n; ++k) {
      const SubsetIndexer idx(n, k);
      const auto all = idx.all();
      ASSERT_EQ(static_cast<std::int64_t>(all.size()), idx.count());
      for (std::int64_t r = 0; r < idx.count(); ++r) {
        EXPECT_EQ(idx.rank(all[r]), r);
        EXPECT_EQ(idx.unrank(r), all[r]);
      }
    }
  EXPECT_EQ(SubsetIndexer(5, 2).unrank(0), (std::vector<int>{0, 1}));
  EXPECT_EQ(SubsetIndexer(5, 2).unrank(9), (std::vector<int>{3, 4}));
}

TEST(JohnsonMatrix, Examples) {
  const auto id = johnson_matrix({5, 2, 2});
  EXPECT_LE(max_abs_diff(id.matrix(), Matrix<double>::identity(10)), 0.0);
  const auto m = johnson_matrix({4, 2, 0});
  for (std::size_t i = 0; i < m.dim(); ++i) {
    double row = 0;
    for (std::size_t j = 0; j < m.dim(); ++j) row += m(i, j);
    EXPECT_EQ(row, 1.0);
  }
  const auto m2 = johnson_matrix({6, 2, 1});
  for (std::size_t i = 0; i < m2.dim(); ++i) {
    double row = 0;
    for (std::size_t j = 0; j < m2.dim(); ++j) row += m2(i, j);
    EXPECT_EQ(row, 8.0);
  }
  EXPECT_THROW(johnson_matrix({20, 5, 1}), BudgetError);
  EXPECT_THROW(johnson_matrix({4, 2, 3}), PreconditionError);
}

TEST(JohnsonSpectrum, Examples) {
  const auto sp = johnson_spectrum({6, 2, 0});
  EXPECT_EQ(sp.lambda, (std::vector<std::int64_t>{6, -3, 1}));
  EXPECT_EQ(sp.mult, (std::vector<std::int64_t>{1, 5, 9}));
  for (auto l : johnson_spectrum({7, 3, 3}).lambda) EXPECT_EQ(l, 1);
  EXPECT_EQ(johnson_spectrum({5, 2, 1}).lambda[0], 6);
}

TEST(JohnsonSpectrum, MatchesBruteForceAndTraceIdentity) {
  for (int d = 1; d <= 8; ++d)
    for (int k = 0; k <= std::min(d, 3); ++k)
      for (int t = 0; t <= k; ++t) {
        const JohnsonParams p{d, k, t};
        const auto sp = johnson_spectrum(p);
        std::int64_t msum = 0;
        double tr = 0;
        for (std::size_t j = 0; j < sp.mult.size(); ++j) {
          EXPECT_GE(sp.mult[j], 0);
          msum += sp.mult[j];
          tr += static_cast<double>(sp.mult[j] * sp.lambda[j]);
        }
        EXPECT_EQ(msum, binomial(d, k));
        EXPECT_EQ(sp.mult[0], 1);
        EXPECT_NEAR(tr, t == k ? static_cast<double>(binomial(d, k)) : 0.0, 1e-9);
        const auto brute = hermitian_eigenvalues(johnson_matrix(p));
        const auto closed = sp.eigenvalue_multiset();
        ASSERT_EQ(brute.size(), closed.size());
        for (std::size_t i = 0; i < brute.size(); ++i) EXPECT_NEAR(brute[i], closed[i], 1e-8) << d << k << t;
      }
}

TEST(JohnsonMatrix, BasisSumsToAllOnes) {
  for (int d = 2; d <= 7; ++d)
    for (int k = 1; k <= std::min(d, 3); ++k) {
      Matrix<double> sum(binomial(d, k), binomial(d, k));
      for (int t = 0; t <= k; ++t) sum += johnson_matrix({d, k, t}).matrix();
      for (double x : sum.data()) EXPECT_EQ(x, 1.0);
    }
}

TEST(JohnsonTraceNorm, Examples) {
  EXPECT_DOUBLE_EQ(johnson_trace_norm({7, 3, 3}).trace_norm, 35.0);
  const auto r = johnson_trace_norm({6, 2, 0});
  EXPECT_DOUBLE_EQ(r.trace_norm, 30.0);
  EXPECT_DOUBLE_EQ(r.bound, 24.0);
  EXPECT_DOUBLE_EQ(r.ratio, 1.25);
  EXPECT_NEAR(johnson_trace_norm({8, 2, 1}).trace_norm, trace_norm(johnson_matrix({8, 2, 1})), 1e-8);
}

TEST(JohnsonTraceNorm, RatioBoundedAcrossGrid) {
  // The estimate is stated for k small against sqrt(d); k = 4 is only
  // checked once k^2 <= d.
  for (int d = 4; d <= 60; ++d)
    for (int k = 1; 2 * k <= d && k <= 4 && (k <= 3 || k * k <= d); ++k)
      for (int t = 0; t < k; ++t) EXPECT_LE(johnson_trace_norm({d, k, t}).ratio, 4.0) << d << " " << k << " " << t;
}

TEST(JohnsonSimplifiedBounds, ReportedForEveryEigenvalue) {
  const auto b = johnson_simplified_bounds({30, 3, 1});
  EXPECT_EQ(b.size(), 4u);
  EXPECT_DOUBLE_EQ(b[0], 3.0 * binomial(27, 2));
}

TEST(DecomposeD, Examples) {
  EXPECT_EQ(decompose_D(5, 3, 1).size(), 1u);
  const auto a = decompose_D(8, 4, 2);
  EXPECT_NEAR(a[0], 1.0 / 840, 1e-15);
  EXPECT_THROW(decompose_D(8, 2, 3), PreconditionError);
}

TEST(DecomposeD, ReconstructsApproximantDifference) {
  for (auto [d, s, k] : {std::tuple{8, 4, 2}, std::tuple{6, 3, 2}, std::tuple{7, 5, 3}, std::tuple{5, 2, 2}}) {
    const auto phi = subset_moment_approx(d, s, k);
    const auto psi = haar_moment_approx(d, k);
    const double scale = falling(d + k - 1, k) / falling(d, k);
    const auto direct = phi.matrix.matrix() - psi.matrix.matrix() * scale;
    EXPECT_LE(max_abs_diff(direct, reconstruct_from_johnson(d, s, k)), 1e-12) << d << s << k;
  }
}

TEST(ApproximantDifference, MatchesDenseAndFrozenOracle) {
  // Frozen from an independent dense reference (subset enumeration, numpy eigvalsh).
  EXPECT_NEAR(approximant_difference_trace_norm(8, 4, 2), 0.7619047619047623, 1e-10);
  EXPECT_NEAR(approximant_difference_trace_norm(10, 4, 3), 0.4545454545454548, 1e-10);
  EXPECT_NEAR(approximant_difference_trace_norm(16, 4, 2), 0.3899159663865558, 1e-10);
  for (auto [d, s, k] : {std::tuple{6, 3, 2}, std::tuple{7, 4, 3}, std::tuple{9, 2, 2}}) {
    const double dense = trace_norm(subset_moment_approx(d, s, k).matrix - haar_moment_approx(d, k).matrix);
    EXPECT_NEAR(approximant_difference_trace_norm(d, s, k), dense, 1e-9);
  }
}

TEST(ApproximantDifference, ShapeBoundOnGrid) {
  for (int d : {16, 32})
    for (int s = 2; s <= 2 * std::sqrt(d); ++s)
      for (int k : {2, 3}) {
        if (k > s) continue;
        EXPECT_LE(approximant_difference_trace_norm(d, s, k), 8.0 * s * k / d) << d << " " << s << " " << k;
      }
}

TEST(HaarSubsetNorm, MatchesFrozenOracleAndDenseRoutes) {
  // Frozen from an independent dense reference.
  EXPECT_NEAR(haar_subset_trace_norm(16, 4, 2).trace_norm, 0.8218487394957985, 1e-10);
  EXPECT_NEAR(haar_subset_trace_norm(8, 4, 3).trace_norm, 1.3833333333333342, 1e-10);
  EXPECT_NEAR(haar_subset_trace_norm(6, 3, 2).trace_norm, 1.0285714285714291, 1e-10);
  EXPECT_NEAR(haar_subset_trace_norm(16, 8, 2).trace_norm, 1.2980392156862748, 1e-10);
  EXPECT_NEAR(haar_subset_trace_norm(10, 4, 3).trace_norm, 1.323051948051949, 1e-10);
  EXPECT_NEAR(haar_subset_trace_norm(4, 2, 1).trace_norm, 0.5, 1e-14);
  for (auto [d, s, k] : {std::tuple{5, 2, 2}, std::tuple{7, 3, 3}, std::tuple{12, 6, 2}, std::tuple{6, 6, 2}}) {
    const auto h = haar_subset_trace_norm(d, s, k);
    const double dense = trace_norm(haar_moment_exact(d, k).matrix - subset_moment_exact(d, s, k).matrix);
    const double sym = trace_norm((1.0 / h.sym_dim) * HermitianOperator<double>::identity(h.sym_dim) -
                                  subset_moment_symmetric(d, s, k));
    EXPECT_NEAR(h.trace_norm, dense, 1e-9);
    EXPECT_NEAR(h.trace_norm, sym, 1e-9);
  }
}

}  // namespace
}  // namespace sslab
