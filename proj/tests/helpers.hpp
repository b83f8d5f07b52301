#pragma once

// Shared builders for the test suites: random orthonormal models and
// random sampling patterns with reproducible seeds.

#include <dass/core.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace dass::testing {

// Orthonormal N x K basis from a QR of a Gaussian matrix, decreasing
// eigenvalues lambda_i = decay^i, random mean.
inline SignalModel random_model(Rng& rng, int n, int k, double decay = 0.5,
                                long sample_count = 100) {
  Eigen::MatrixXd g(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = rng.gaussian();
  const Eigen::MatrixXd q =
      Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ() *
      Eigen::MatrixXd::Identity(n, k);
  Eigen::VectorXd mean(n);
  for (int i = 0; i < n; ++i) mean[i] = rng.gaussian();
  Eigen::VectorXd lam(k);
  double v = 1.0;
  for (int i = 0; i < k; ++i, v *= decay) lam[i] = v;
  return SignalModel(q, mean, lam, sample_count);
}

// Random orthonormal basis whose rows all carry squared norm k/n: a QR
// draw followed by Givens rotations pairing the extreme rows until the
// norms equalize. Frame-potential elimination is only near-optimal in
// this equal-row-norm regime, so oracle comparisons with tight factors
// use this family.
inline SignalModel flat_random_model(Rng& rng, int n, int k,
                                     long sample_count = 100) {
  SignalModel seed = random_model(rng, n, k, 0.5, sample_count);
  Eigen::MatrixXd q = seed.basis();
  const double target = static_cast<double>(k) / n;
  for (int pass = 0; pass < n; ++pass) {
    int hi = 0, lo = 0;
    for (int i = 1; i < n; ++i) {
      if (q.row(i).squaredNorm() > q.row(hi).squaredNorm()) hi = i;
      if (q.row(i).squaredNorm() < q.row(lo).squaredNorm()) lo = i;
    }
    const double a = q.row(hi).squaredNorm();
    const double b = q.row(lo).squaredNorm();
    if (a - b < 1e-13) break;
    const double c = q.row(hi).dot(q.row(lo));
    // rotate the pair so that row lo lands exactly on the target norm;
    // the blend norm runs continuously from b up to a over t in [0, pi/2]
    const auto blend_norm = [&](double t) {
      return std::sin(t) * std::sin(t) * a + std::cos(t) * std::cos(t) * b +
             2.0 * std::sin(t) * std::cos(t) * c;
    };
    double t_lo = 0.0, t_hi = std::acos(-1.0) / 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (t_lo + t_hi);
      (blend_norm(mid) < target ? t_lo : t_hi) = mid;
    }
    const double t = 0.5 * (t_lo + t_hi);
    const Eigen::RowVectorXd rhi = q.row(hi), rlo = q.row(lo);
    q.row(lo) = std::sin(t) * rhi + std::cos(t) * rlo;
    q.row(hi) = std::cos(t) * rhi - std::sin(t) * rlo;
  }
  return SignalModel(q, seed.mean(), seed.eigenvalues(), sample_count);
}

// M distinct sorted indices into [0, n).
inline SamplingPattern random_pattern(Rng& rng, int n, int m) {
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < m; ++i) {
    const int j = i + rng.uniform_int(n - i);
    std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
  }
  std::vector<int> idx(all.begin(), all.begin() + m);
  std::sort(idx.begin(), idx.end());
  return SamplingPattern(idx, n);
}

}  // namespace dass::testing
