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
#include <cstddef>
#include <string>
#include <vector>

#include "sslab/core.hpp"
#include "sslab/ensembles.hpp"
#include "sslab/linalg.hpp"

namespace sslab {

// Two-outcome verifier {Lambda, I - Lambda} on state (x) proof, state index
// major: basis index = state * proof_dim + proof.
struct ProofVerifier {
  std::size_t state_dim = 0;
  std::size_t proof_dim = 0;
  HermitianOperator<Cplx> lambda;

  ProofVerifier() = default;
  ProofVerifier(std::size_t ds, std::size_t dp, HermitianOperator<Cplx> l)
      : state_dim(ds), proof_dim(dp), lambda(std::move(l)) {
    validate();
  }

  void validate() const {
    if (state_dim == 0 || proof_dim == 0 || lambda.dim() != state_dim * proof_dim)
      throw DimensionError("ProofVerifier: operator dimension is not state_dim * proof_dim");
    const auto w = hermitian_eigenvalues(lambda);
    if (w.front() > 1.0 + 1e-9 || w.back() < -1e-9)
      throw PreconditionError("ProofVerifier: Lambda must satisfy 0 <= Lambda <= I");
  }
};

namespace detail {

// Hermitian square root of a PSD operator; tiny negative eigenvalues clipped.
inline Matrix<Cplx> psd_sqrt(const HermitianOperator<Cplx>& h) {
  const auto eig = hermitian_eigs(h);
  const std::size_t n = h.dim();
  Matrix<Cplx> out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = std::sqrt(std::max(0.0, eig.eigenvalues[k]));
    if (r == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Cplx vi = eig.eigenvectors(i, k) * r;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

inline HermitianOperator<Cplx> hermitize(Matrix<Cplx> m) {
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Cplx a = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = a;
      m(j, i) = std::conj(a);
    }
  return HermitianOperator<Cplx>::unchecked(std::move(m));
}

// tr_state[(rho (x) I) A]: the operator on the proof register whose
// expectation in pi is tr(A (rho (x) pi)).
inline HermitianOperator<Cplx> proof_effective(const Matrix<Cplx>& a, const HermitianOperator<Cplx>& rho,
                                               std::size_t ds, std::size_t dp) {
  Matrix<Cplx> m(dp, dp);
  for (std::size_t x = 0; x < ds; ++x)
    for (std::size_t y = 0; y < ds; ++y) {
      const Cplx r = rho(y, x);
      if (r == Cplx(0)) continue;
      for (std::size_t j = 0; j < dp; ++j)
        for (std::size_t k = 0; k < dp; ++k) m(j, k) += r * a(x * dp + j, y * dp + k);
    }
  return hermitize(std::move(m));
}

// tr_state[A (rho (x) sigma) A^dagger] for the proof register.
inline HermitianOperator<Cplx> proof_forward(const Matrix<Cplx>& a, const HermitianOperator<Cplx>& rho,
                                             const HermitianOperator<Cplx>& sigma, std::size_t ds, std::size_t dp) {
  const Matrix<Cplx> joint = a * kron(rho.matrix(), sigma.matrix()) * a.adjoint();
  Matrix<Cplx> m(dp, dp);
  for (std::size_t x = 0; x < ds; ++x)
    for (std::size_t j = 0; j < dp; ++j)
      for (std::size_t k = 0; k < dp; ++k) m(j, k) += joint(x * dp + j, x * dp + k);
  return hermitize(std::move(m));
}

}  // namespace detail

// Lambda~ = (1/d~) sum_i <e_i| Lambda |e_i> over the proof basis.
inline HermitianOperator<Cplx> average_diagonal_block(const ProofVerifier& v) {
  const std::size_t ds = v.state_dim, dp = v.proof_dim;
  if (v.lambda.dim() != ds * dp) throw DimensionError("average_diagonal_block: dimension does not factorize");
  Matrix<Cplx> m(ds, ds);
  for (std::size_t a = 0; a < ds; ++a)
    for (std::size_t b = 0; b < ds; ++b) {
      Cplx acc = 0.0;
      for (std::size_t i = 0; i < dp; ++i) acc += v.lambda(a * dp + i, b * dp + i);
      m(a, b) = acc / static_cast<double>(dp);
    }
  return detail::hermitize(std::move(m));
}

struct DemerlinResult {
  HermitianOperator<Cplx> lambda_avg;
  HermitianOperator<Cplx> projector;
  double threshold = 0;  // (1 - eps) / (2 d~)
  double eps = 0;
  std::size_t rank = 0;
  double idempotence_defect = 0;  // max |Pi^2 - Pi|
  double commutator_defect = 0;   // max |[Pi, Lambda~]|
  double psd_margin = 0;          // min eigenvalue of (2d~/(1-eps)) Lambda~ - Pi
};

// Projector onto the eigenvectors of Lambda~ with eigenvalue strictly above
// (1 - eps) / (2 d~).
inline DemerlinResult demerlinize(const ProofVerifier& v, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("demerlinize: need 0 < eps < 1");
  DemerlinResult r;
  r.eps = eps;
  r.lambda_avg = average_diagonal_block(v);
  r.threshold = (1.0 - eps) / (2.0 * static_cast<double>(v.proof_dim));
  const std::size_t n = v.state_dim;
  const auto eig = hermitian_eigs(r.lambda_avg);
  Matrix<Cplx> pi(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(eig.eigenvalues[k] > r.threshold)) continue;
    ++r.rank;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) pi(i, j) += eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
  }
  r.projector = detail::hermitize(std::move(pi));
  const auto& P = r.projector.matrix();
  const auto& L = r.lambda_avg.matrix();
  r.idempotence_defect = max_abs_diff(P * P, P);
  r.commutator_defect = max_abs_diff(P * L, L * P);
  const double scale = 2.0 * static_cast<double>(v.proof_dim) / (1.0 - eps);
  r.psd_margin = hermitian_eigenvalues(scale * r.lambda_avg - r.projector).back();
  return r;
}

struct DemerlinCheck {
  bool skipped = false;  // hypothesis unmet
  double hypothesis = 0;  // tr(Lambda (rho (x) pi)) or delta
  double lhs = 0;         // tr(Pi rho)
  double rhs = 0;
  double margin = 0;      // completeness: lhs - rhs; soundness: rhs - lhs
  bool pass = false;
};

// If tr(Lambda (rho (x) pi)) >= 1 - eps then tr(Pi rho) >= (1 - eps)^2 / 4.
inline DemerlinCheck demerlin_completeness_check(const ProofVerifier& v, double eps, const StateVector& rho,
                                                 const StateVector& witness) {
  if (rho.dim() != v.state_dim || witness.dim() != v.proof_dim)
    throw DimensionError("demerlin_completeness_check: state or witness dimension mismatch");
  DemerlinCheck c;
  c.hypothesis = expectation(v.lambda, kron(rho, witness));
  c.rhs = (1.0 - eps) * (1.0 - eps) / 4.0;
  if (c.hypothesis < 1.0 - eps - 1e-12) {
    c.skipped = true;
    c.pass = true;
    return c;
  }
  const auto r = demerlinize(v, eps);
  c.lhs = expectation(r.projector, rho);
  c.margin = c.lhs - c.rhs;
  c.pass = c.margin >= -1e-8;
  return c;
}

// delta = max over proofs pi of tr(Lambda (rho (x) pi)).
inline double demerlin_delta(const ProofVerifier& v, const HermitianOperator<Cplx>& rho) {
  return hermitian_eigenvalues(detail::proof_effective(v.lambda.matrix(), rho, v.state_dim, v.proof_dim)).front();
}

// tr(Pi rho) <= 2 d~ delta / (1 - eps).
inline DemerlinCheck demerlin_soundness_check(const ProofVerifier& v, double eps, const StateVector& rho) {
  if (rho.dim() != v.state_dim) throw DimensionError("demerlin_soundness_check: state dimension mismatch");
  DemerlinCheck c;
  c.hypothesis = demerlin_delta(v, density(rho));
  const auto r = demerlinize(v, eps);
  c.lhs = expectation(r.projector, rho);
  c.rhs = 2.0 * static_cast<double>(v.proof_dim) * c.hypothesis / (1.0 - eps);
  c.margin = c.rhs - c.lhs;
  c.pass = c.margin >= -1e-7;
  return c;
}

// Haar-random unitary whose first column is the given unit vector.
inline Matrix<Cplx> random_unitary_with_first_column(const StateVector& first, Rng& rng) {
  const std::size_t n = first.dim();
  std::vector<std::vector<Cplx>> cols{first.amps()};
  while (cols.size() < n) {
    std::vector<Cplx> v(n);
    for (auto& x : v) x = Cplx(rng.normal(), rng.normal());
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& c : cols) {
        Cplx ip = 0.0;
        for (std::size_t i = 0; i < n; ++i) ip += std::conj(c[i]) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= ip * c[i];
      }
    double nrm = 0.0;
    for (const auto& x : v) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-8) continue;
    for (auto& x : v) x /= nrm;
    cols.push_back(std::move(v));
  }
  Matrix<Cplx> u(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) u(i, j) = cols[j][i];
  return u;
}

inline HermitianOperator<Cplx> spectral_operator(const Matrix<Cplx>& u, const std::vector<double>& w) {
  const std::size_t n = u.rows();
  Matrix<Cplx> d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = w[i];
  return detail::hermitize(u * d * u.adjoint());
}

struct DemerlinInstance {
  ProofVerifier verifier;
  StateVector rho;
  StateVector witness;
};

// Lambda = U diag(lambda_1, ...) U^dagger with U e_1 = psi (x) pi and
// lambda_1 in [1 - eps, 1]; the other eigenvalues are uniform in [0, 1].
inline DemerlinInstance random_satisfiable_instance(std::size_t ds, std::size_t dp, double eps, Rng& rng) {
  const auto psi = haar_sample(static_cast<int>(ds), rng);
  const auto pi = haar_sample(static_cast<int>(dp), rng);
  const auto u = random_unitary_with_first_column(kron(psi, pi), rng);
  std::vector<double> w(ds * dp);
  w[0] = 1.0 - eps * rng.uniform();
  for (std::size_t i = 1; i < w.size(); ++i) w[i] = rng.uniform();
  return {ProofVerifier(ds, dp, spectral_operator(u, w)), psi, pi};
}

// Random spectrum in [0, 1] in a Haar basis, paired with a Haar state.
inline DemerlinInstance random_instance(std::size_t ds, std::size_t dp, Rng& rng) {
  const auto u = random_unitary_with_first_column(haar_sample(static_cast<int>(ds * dp), rng), rng);
  std::vector<double> w(ds * dp);
  for (auto& x : w) x = std::pow(rng.uniform(), 3.0);
  const auto rho = haar_sample(static_cast<int>(ds), rng);
  return {ProofVerifier(ds, dp, spectral_operator(u, w)), rho, haar_sample(static_cast<int>(dp), rng)};
}

struct UnionBoundReport {
  int n = 0, trials = 0;
  double eps = 0;             // max_i 1 - tr(Lambda_i rho)
  double bound = 0;           // n sqrt(eps)
  double exact_reject = 0;    // 1 - ||sqrt(L_n) ... sqrt(L_1) psi||^2
  double empirical_reject = 0;
  double stderr_ = 0;
  bool pass = false;
};

// Measures {Lambda_i, I - Lambda_i} in sequence with the square-root
// instrument; a run rejects when any measurement rejects.
inline UnionBoundReport union_bound_experiment(const std::vector<HermitianOperator<Cplx>>& ms, const StateVector& rho,
                                               Rng& rng, int trials) {
  require(!ms.empty(), "union_bound_experiment: no measurements");
  require(trials >= 1, "union_bound_experiment: trials must be positive");
  UnionBoundReport rep;
  rep.n = static_cast<int>(ms.size());
  rep.trials = trials;
  std::vector<Matrix<Cplx>> roots;
  for (const auto& m : ms) {
    if (m.dim() != rho.dim()) throw DimensionError("union_bound_experiment: measurement dimension mismatch");
    const auto w = hermitian_eigenvalues(m);
    if (w.front() > 1.0 + 1e-9 || w.back() < -1e-9)
      throw PreconditionError("union_bound_experiment: need 0 <= Lambda_i <= I");
    rep.eps = std::max(rep.eps, 1.0 - expectation(m, rho));
    roots.push_back(detail::psd_sqrt(m));
  }
  rep.eps = std::max(0.0, rep.eps);
  rep.bound = rep.n * std::sqrt(rep.eps);
  auto apply = [](const Matrix<Cplx>& a, const std::vector<Cplx>& v) {
    std::vector<Cplx> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) out[i] += a(i, j) * v[j];
    return out;
  };
  auto norm2 = [](const std::vector<Cplx>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return s;
  };
  // Accepting branches never renormalize, so the survivor norm is exact.
  std::vector<Cplx> v = rho.amps();
  for (const auto& r : roots) v = apply(r, v);
  rep.exact_reject = std::max(0.0, 1.0 - norm2(v));

  int rejects = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<Cplx> cur = rho.amps();
    for (const auto& r : roots) {
      auto next = apply(r, cur);
      const double p = norm2(next);
      if (rng.uniform() >= p) {
        ++rejects;
        break;
      }
      const double s = 1.0 / std::sqrt(p);
      for (auto& x : next) x *= s;
      cur = std::move(next);
    }
  }
  rep.empirical_reject = static_cast<double>(rejects) / trials;
  rep.stderr_ = std::sqrt(std::max(rep.empirical_reject * (1 - rep.empirical_reject), 1.0 / trials) / trials);
  rep.pass = rep.exact_reject <= rep.bound + 1e-12 && rep.empirical_reject <= rep.bound + 3 * rep.stderr_;
  return rep;
}

// t sequential runs of the inner verifier on fresh copies of the state,
// sharing one witness register; accepts iff every run accepts.
struct AmplifiedTester {
  ProofVerifier inner;
  int t = 1;
};

inline AmplifiedTester amplify_reuse_witness(const ProofVerifier& v, int t) {
  require(t >= 1, "amplify_reuse_witness: t must be positive");
  return {v, t};
}

// Exact acceptance probability for a given witness.
inline double acceptance_probability(const AmplifiedTester& a, const StateVector& rho, const StateVector& witness) {
  const auto& v = a.inner;
  if (rho.dim() != v.state_dim || witness.dim() != v.proof_dim)
    throw DimensionError("acceptance_probability: state or witness dimension mismatch");
  const auto root = detail::psd_sqrt(v.lambda);
  const auto r = density(rho);
  auto sigma = density(witness);
  for (int i = 0; i < a.t; ++i) sigma = detail::proof_forward(root, r, sigma, v.state_dim, v.proof_dim);
  return sigma.trace();
}

// Largest acceptance probability over all witnesses: the top eigenvalue of
// the dual map applied t times to the identity.
inline double max_acceptance_probability(const AmplifiedTester& a, const StateVector& rho) {
  const auto& v = a.inner;
  if (rho.dim() != v.state_dim) throw DimensionError("max_acceptance_probability: state dimension mismatch");
  const auto root = detail::psd_sqrt(v.lambda);
  const auto r = density(rho);
  auto e = HermitianOperator<Cplx>::identity(v.proof_dim);
  for (int i = 0; i < a.t; ++i) {
    const Matrix<Cplx> a_op = root * kron(Matrix<Cplx>::identity(v.state_dim), e.matrix()) * root;
    e = detail::proof_effective(a_op, r, v.state_dim, v.proof_dim);
  }
  return hermitian_eigenvalues(e).front();
}

struct AmplifiedRun {
  int trials = 0;
  double acceptance = 0, stderr_ = 0;
};

// Monte Carlo of the amplified tester: the joint state of the witness and
// the current copy is measured, the copy is then discarded.
inline AmplifiedRun simulate_amplified(const AmplifiedTester& a, const StateVector& rho, const StateVector& witness,
                                       Rng& rng, int trials) {
  require(trials >= 1, "simulate_amplified: trials must be positive");
  const auto& v = a.inner;
  const auto root = detail::psd_sqrt(v.lambda);
  const auto r = density(rho);
  int acc = 0;
  for (int k = 0; k < trials; ++k) {
    auto sigma = density(witness);
    bool ok = true;
    for (int i = 0; i < a.t && ok; ++i) {
      auto next = detail::proof_forward(root, r, sigma, v.state_dim, v.proof_dim);
      const double p = next.trace();
      if (rng.uniform() >= p) {
        ok = false;
        break;
      }
      sigma = (1.0 / p) * next;
    }
    acc += ok;
  }
  AmplifiedRun out;
  out.trials = trials;
  out.acceptance = static_cast<double>(acc) / trials;
  out.stderr_ = std::sqrt(std::max(out.acceptance * (1 - out.acceptance), 1.0 / trials) / trials);
  return out;
}

}  // namespace sslab
