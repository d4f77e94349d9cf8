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
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sslab/ensembles.hpp"

namespace sslab {
namespace {

TEST(TupleIndexer, BijectionExhaustive) {
  for (int d = 1; d <= 5; ++d)
    for (int k = 1; k <= 4; ++k) {
      const TupleIndexer idx(d, k);
      for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(idx.encode(idx.decode(i)), i);
    }
  const TupleIndexer idx(3, 2);
  EXPECT_EQ(idx.encode({1, 2}), 5u);
  EXPECT_THROW(idx.encode({3, 0}), PreconditionError);
}

TEST(SubsetState, Examples) {
  const auto a = subset_state(SubsetSpec(2, {0}));
  EXPECT_NEAR(std::abs(a[0] - Cplx(1)), 0, 1e-15);
  const auto f = subset_state(SubsetSpec::full(4));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(f[i].real(), 0.5, 1e-15);
  const auto s = subset_state(SubsetSpec(4, {0, 3}));
  const auto t = subset_state(SubsetSpec::from_unsorted(4, {3, 1}));
  EXPECT_NEAR(overlap(s, t), 0.25, 1e-12);
  EXPECT_THROW(SubsetSpec(4, {}), PreconditionError);
  EXPECT_THROW(SubsetSpec(4, {2, 1}), PreconditionError);
  EXPECT_THROW(SubsetSpec(4, {4}), PreconditionError);
}

TEST(BinaryPhaseState, Examples) {
  const auto u = binary_phase_state(4, {1, 1, 1, 1});
  EXPECT_NEAR(overlap(u, subset_state(SubsetSpec::full(4))), 1.0, 1e-12);
  const auto m = binary_phase_state(2, {1, -1});
  EXPECT_NEAR(m[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(m[1].real(), -1 / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(binary_phase_state(3, {1, 1}), DimensionError);
}

TEST(BinaryPhaseState, OverlapWithAbsoluteStateConcentrates) {
  Rng rng(21);
  const int d = 64;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> signs(d);
    int sum = 0;
    for (auto& x : signs) sum += (x = rng.bernoulli(0.5) ? 1 : -1);
    const auto psi = binary_phase_state(d, signs);
    EXPECT_NEAR(std::abs(inner_product(psi, absolute_state(psi))), std::abs(sum) / static_cast<double>(d), 1e-12);
  }
}

TEST(TwoModeState, Examples) {
  const auto a = two_mode_state(SubsetSpec(2, {0}), SubsetSpec(2, {1}));
  EXPECT_NEAR(a[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(a[1].real(), -1 / std::sqrt(2.0), 1e-15);
  const SubsetSpec S(4, {0, 1}), T(4, {2});
  const auto b = two_mode_state(S, T);
  EXPECT_NEAR(b.norm(), 1.0, 1e-12);
  const double closed = (std::sqrt(2.0 / 2) - std::sqrt(1.0 / 2)) / std::sqrt(4.0);
  EXPECT_NEAR(inner_product(subset_state(SubsetSpec::full(4)), b).real(), closed, 1e-12);
  EXPECT_THROW(two_mode_state(SubsetSpec(4, {0, 1}), SubsetSpec(4, {1})), PreconditionError);
}

TEST(HaarSample, Moments) {
  Rng rng(5);
  EXPECT_NEAR(haar_sample(1, rng).norm(), 1.0, 1e-12);
  const int d = 4, n = 10000;
  Matrix<Cplx> avg(d, d);
  double amp0 = 0, amp0sq = 0;
  for (int i = 0; i < n; ++i) {
    const auto psi = haar_sample(d, rng);
    avg += density(psi).matrix();
    const double x = std::norm(psi[0]);
    amp0 += x;
    amp0sq += x * x;
  }
  avg *= Cplx(1.0 / n);
  const double mean = amp0 / n;
  const double sd = std::sqrt((amp0sq / n - mean * mean) / n);
  EXPECT_LE(std::abs(mean - 1.0 / d), 3 * sd);
  EXPECT_LE(max_abs_diff(avg, (1.0 / d * HermitianOperator<Cplx>::identity(d)).matrix()), 0.02);
}

TEST(HaarMomentExact, Examples) {
  const auto m1 = haar_moment_exact(2, 1);
  EXPECT_LE(max_abs_diff(m1.matrix.matrix(), (0.5 * HermitianOperator<double>::identity(2)).matrix()), 1e-15);
  const auto m2 = haar_moment_exact(2, 2);
  EXPECT_NEAR(m2.matrix(0, 0), 1.0 / 3, 1e-15);
  EXPECT_NEAR(m2.matrix(1, 1), 1.0 / 6, 1e-15);
  EXPECT_NEAR(m2.matrix(2, 2), 1.0 / 6, 1e-15);
  EXPECT_NEAR(m2.matrix(3, 3), 1.0 / 3, 1e-15);
  EXPECT_NEAR(m2.matrix(1, 2), 1.0 / 6, 1e-15);
  EXPECT_NEAR(haar_moment_exact(4, 3).matrix.trace(), 1.0, 1e-12);
  EXPECT_THROW(haar_moment_exact(17, 3), BudgetError);
}

TEST(HaarMomentExact, MatchesPermutationCountOracleAndInvariants) {
  for (int d = 2; d <= 5; ++d)
    for (int k = 1; k <= 3; ++k) {
      const auto m = haar_moment_exact(d, k);
      EXPECT_LE(max_abs_diff(m.matrix.matrix(), oracle::haar_moment(d, k)), 1e-14);
      EXPECT_EQ(m.invariant_violation(), "");
    }
  for (int d = 1; d <= 64; ++d) {
    const auto m = haar_moment_exact(d, 1);
    EXPECT_LE(max_abs_diff(m.matrix.matrix(), (1.0 / d * HermitianOperator<double>::identity(d)).matrix()), 1e-15);
  }
}

TEST(SubsetMomentExact, Examples) {
  const auto a = subset_moment_exact(2, 1, 1);
  EXPECT_LE(max_abs_diff(a.matrix.matrix(), (0.5 * HermitianOperator<double>::identity(2)).matrix()), 1e-15);
  EXPECT_NEAR(subset_moment_exact(4, 2, 1).matrix(0, 1), 1.0 / 12, 1e-15);
  EXPECT_LE(max_abs_diff(subset_moment_exact(6, 3, 2).matrix.matrix(), oracle::subset_moment(6, 3, 2)), 1e-12);
  EXPECT_THROW(subset_moment_exact(4, 5, 1), PreconditionError);
}

TEST(SubsetMomentExact, MatchesEnumerationSmallGrid) {
  for (int d = 1; d <= 6; ++d)
    for (int s = 1; s <= d; ++s)
      for (int k = 1; k <= 3; ++k) {
        const auto m = subset_moment_exact(d, s, k);
        EXPECT_LE(max_abs_diff(m.matrix.matrix(), oracle::subset_moment(d, s, k)), 1e-12)
            << d << " " << s << " " << k;
        EXPECT_NEAR(m.matrix.trace(), 1.0, 1e-9);
      }
}

TEST(HaarMomentApprox, Examples) {
  auto dist = [](int d, int k) {
    return 2 * trace_distance(haar_moment_exact(d, k).matrix, haar_moment_approx(d, k).matrix);
  };
  EXPECT_NEAR(dist(4, 2), 0.4, 1e-9);
  EXPECT_NEAR(dist(10, 2), 1 - 90.0 / 110, 1e-9);
  EXPECT_NEAR(dist(5, 1), 0.0, 1e-15);
  EXPECT_NEAR(haar_approx_distance_closed_form(4, 2), 0.4, 1e-15);
  const auto a = haar_moment_approx(4, 3);
  EXPECT_EQ(a.exactness, Exactness::kApproximant);
  EXPECT_EQ(a.invariant_violation(), "");
}

TEST(SubsetMomentApprox, Examples) {
  EXPECT_LE(max_abs_diff(subset_moment_approx(4, 2, 1).matrix.matrix(), subset_moment_exact(4, 2, 1).matrix.matrix()),
            1e-15);
  const TupleIndexer idx(6, 2);
  const auto a = subset_moment_approx(6, 3, 2);
  EXPECT_EQ(a.matrix(idx.encode({0, 1}), idx.encode({2, 3})), 0.0);  // l = 4 > s
  const auto b = subset_moment_approx(6, 4, 2);
  EXPECT_NEAR(b.matrix(idx.encode({0, 1}), idx.encode({1, 2})), 1.0 / 60, 1e-15);  // l = 3
  EXPECT_EQ(b.matrix(idx.encode({0, 0}), idx.encode({0, 0})), 0.0);
  EXPECT_THROW(subset_moment_approx(6, 2, 3), PreconditionError);
}

TEST(SubsetMomentApprox, DistanceToExactScalesLikeKOverRootS) {
  // ||Phi - Phi~||_1 <= c k / sqrt(s); measured c stays small.
  double worst = 0;
  for (int d : {6, 8})
    for (int s = 2; s <= d; s += 2)
      for (int k = 1; k <= std::min(s, 3); ++k) {
        if (std::pow(d, k) > 512) continue;
        const double dist =
            trace_norm(subset_moment_exact(d, s, k).matrix - subset_moment_approx(d, s, k).matrix);
        worst = std::max(worst, dist / (k / std::sqrt(static_cast<double>(s))));
      }
  EXPECT_LE(worst, 2.0);
}

TEST(DenseFlattened, Examples) {
  const DenseEnsembleParams p{4, 0.5, 0, 0};
  const auto m = dense_flattened_moment(p, DenseEnsemble::kE1, 1);
  EXPECT_NEAR(m.matrix(0, 0), 0.25, 1e-15);
  EXPECT_NEAR(m.matrix(0, 1), 0.125, 1e-15);

  const auto q = DenseEnsembleParams::matched(8, 8 * 0.1, 2 * 0.1);
  EXPECT_NEAR(q.p, 0.1, 1e-15);
  EXPECT_TRUE(q.is_matched());
  const auto e0 = dense_flattened_moment(q, DenseEnsemble::kE0, 2);
  const auto e1 = dense_flattened_moment(q, DenseEnsemble::kE1, 2);
  EXPECT_LE(max_abs_diff(e0.matrix.matrix(), e1.matrix.matrix()), 1e-12);

  const auto r = dense_flattened_moment(DenseEnsembleParams{16, 0.3, 0, 0}, DenseEnsemble::kE1, 2);
  const double tr = r.matrix.trace();
  EXPECT_NEAR(tr, 16.0 * 15 / 256, 1e-12);
  EXPECT_GE(tr, 1 - 4.0 / 16);

  EXPECT_THROW(dense_flattened_moment(DenseEnsembleParams{4, 1.5, 0, 0}, DenseEnsemble::kE1, 1), PreconditionError);
}

TEST(DenseFlattened, E0MatchesDoubleBinomialSum) {
  const double pp = 0.07;
  const auto q = DenseEnsembleParams::matched(6, 8 * pp, 2 * pp);
  const auto e0 = dense_flattened_moment(q, DenseEnsemble::kE0, 3);
  const detail::TupleTable tt(6, 3);
  for (std::size_t i = 0; i < tt.size(); ++i)
    for (std::size_t j = 0; j < tt.size(); ++j) {
      if (!tt.collision_free[i] || !tt.collision_free[j]) {
        EXPECT_EQ(e0.matrix(i, j), 0.0);
        continue;
      }
      EXPECT_NEAR(e0.matrix(i, j), oracle::e0_double_sum(6, 3, tt.distinct(i, j), q.s, q.t), 1e-15);
    }
}

TEST(DenseMonteCarlo, Examples) {
  Rng rng(1);
  const auto full = dense_moment_monte_carlo(DenseEnsembleParams{4, 1.0, 0, 0}, DenseEnsemble::kE1, 2, 5, rng);
  const auto psi = subset_state(SubsetSpec::full(4));
  const auto expect = density(kron(psi, psi));
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) EXPECT_NEAR(full.mean.matrix(i, j), expect(i, j).real(), 1e-14);

  const DenseEnsembleParams p{10, 0.5, 0, 0};
  const auto mc = dense_moment_monte_carlo(p, DenseEnsemble::kE1, 1, 10000, rng, DenseNormalization::kFlattened);
  const auto ref = dense_flattened_moment(p, DenseEnsemble::kE1, 1);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j)
      EXPECT_LE(std::abs(mc.mean.matrix(i, j) - ref.matrix(i, j)), 5 * mc.stderr_(i, j) + 1e-15);

  const auto act = dense_moment_monte_carlo(p, DenseEnsemble::kE1, 1, 2000, rng);
  EXPECT_NEAR(act.mean.matrix.trace(), 1.0, 1e-12);
}

TEST(DenseMonteCarlo, ClassMeansAgreeWithFlattenedClosedForm) {
  Rng rng(2);
  const auto q = DenseEnsembleParams::matched(8, 0.8, 0.2);
  for (auto which : {DenseEnsemble::kE0, DenseEnsemble::kE1}) {
    const auto mc = dense_moment_monte_carlo(q, which, 2, 4000, rng, DenseNormalization::kFlattened);
    for (std::size_t c = 0; c < mc.class_l.size(); ++c) {
      const double ref = std::pow(q.p, mc.class_l[c] - 2) / 64.0;
      EXPECT_LE(std::abs(mc.class_mean[c] - ref), 5 * mc.class_stderr[c]);
    }
  }
}

TEST(ClassicalShadow, Examples) {
  MomentOperator zero{2, 1, "basis", Exactness::kExact,
                      HermitianOperator<double>::unchecked(Matrix<double>(2, 2, {1, 0, 0, 0}))};
  const auto p = classical_shadow_channel(zero);
  EXPECT_EQ(p, (std::vector<double>{1, 0}));
  const auto u = classical_shadow_channel(subset_moment_exact(4, 2, 1));
  for (double x : u) EXPECT_NEAR(x, 0.25, 1e-15);
  EXPECT_THROW(classical_shadow_channel(haar_moment_approx(4, 2)), PreconditionError);
}

TEST(ClassicalShadow, ContractsTraceDistance) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(3));
    const int k = 1 + static_cast<int>(rng.below(2));
    const int s1 = 1 + static_cast<int>(rng.below(d));
    const auto a = subset_moment_exact(d, s1, k);
    const auto b = haar_moment_exact(d, k);
    const double td_in = trace_distance(a.matrix, b.matrix);
    const double td_out = total_variation(classical_shadow_channel(a), classical_shadow_channel(b));
    EXPECT_LE(td_out, td_in + 1e-12);
  }
}

TEST(ClassicalShadow, SubsetMomentGivesFlatDistributionSampleLaw) {
  // k samples from a uniformly random flat distribution of support size s.
  for (int d = 2; d <= 6; ++d)
    for (int s = 1; s <= d; ++s) {
      const int k = 2;
      const auto shadow = classical_shadow_channel(subset_moment_exact(d, s, k));
      std::vector<double> law(d * d, 0.0);
      const auto subsets = oracle::all_subsets(d, s);
      for (const auto& S : subsets)
        for (int x : S)
          for (int y : S) law[x * d + y] += 1.0 / (s * s * static_cast<double>(subsets.size()));
      for (int i = 0; i < d * d; ++i) EXPECT_NEAR(shadow[i], law[i], 1e-14);
    }
}

TEST(SymmetricCompression, PreservesTraceNormAndMatchesClosedForm) {
  for (auto [d, s, k] : {std::tuple{4, 2, 2}, std::tuple{5, 3, 3}, std::tuple{6, 4, 2}}) {
    const auto phi = subset_moment_exact(d, s, k);
    const auto psi = haar_moment_exact(d, k);
    const auto cphi = compress_to_symmetric(phi);
    EXPECT_LE(max_abs_diff(cphi.matrix(), subset_moment_symmetric(d, s, k).matrix()), 1e-14);
    const auto cpsi = compress_to_symmetric(psi);
    const double dsym = static_cast<double>(binomial(d + k - 1, k));
    EXPECT_LE(max_abs_diff(cpsi.matrix(), (1 / dsym * HermitianOperator<double>::identity(cpsi.dim())).matrix()),
              1e-14);
    EXPECT_NEAR(trace_norm(cpsi - cphi), trace_norm(psi.matrix - phi.matrix), 1e-10);
  }
}

}  // namespace
}  // namespace sslab
