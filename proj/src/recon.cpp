#include "dass/recon.hpp"

#include <Eigen/SVD>

#include <limits>
#include <stdexcept>

namespace dass {

namespace {

constexpr double kRankCutoff = 1e-10;        // relative, on singular values
constexpr double kGramEigenFloor = 1e-12;    // absolute, on Gram eigenvalues

// Eigenvalues of B[tau]^T B[tau] in decreasing order.
Eigen::VectorXd selection_gram_spectrum(const SignalModel& model,
                                        const SamplingPattern& tau) {
  if (tau.block_length() != model.field_length())
    throw std::invalid_argument("pattern block length does not match model");
  const Eigen::MatrixXd sub = select_rows(model.basis(), tau);
  const Eigen::MatrixXd gram = sub.transpose() * sub;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("selection spectrum: eigensolver failed");
  return es.eigenvalues().reverse();
}

}  // namespace

Reconstruction ols_reconstruct(const SignalModel& model, const Measurement& m,
                               std::optional<double> epsilon_a) {
  if (m.pattern.block_length() != model.field_length())
    throw std::invalid_argument("ols_reconstruct: pattern block length does not match model");
  if (epsilon_a && *epsilon_a < 0.0)
    throw std::invalid_argument("ols_reconstruct: negative epsilon_a");
  const int sample_count = m.pattern.size();
  const int k = model.dimension();
  if (sample_count < k)
    throw std::runtime_error("ols_reconstruct: underdetermined (budget " +
                             std::to_string(sample_count) + " < dimension " +
                             std::to_string(k) + ")");

  const Eigen::MatrixXd sub = select_rows(model.basis(), m.pattern);
  const Eigen::VectorXd rhs = m.observed - apply_pattern(model.mean(), m.pattern);

  Eigen::VectorXd coeff(k);
  if (k > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv[0] <= 0.0 || sv[sv.size() - 1] < kRankCutoff * sv[0])
      throw std::runtime_error("ols_reconstruct: rank-deficient selection, pattern " +
                               m.pattern.to_csv());
    coeff = svd.solve(rhs);
  }

  Eigen::VectorXd full = model.mean();
  if (k > 0) full += model.basis() * coeff;
  FieldBlock estimate(std::move(full));

  const double theta = theta_cost(model, m.pattern);
  std::optional<double> bound;
  if (epsilon_a) bound = error_bound(model, m.pattern, *epsilon_a, m.noise_sigma);
  return Reconstruction{std::move(estimate), std::move(coeff), theta, bound};
}

double theta_cost(const SignalModel& model, const SamplingPattern& tau) {
  const Eigen::VectorXd lam = selection_gram_spectrum(model, tau);
  double total = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] <= kGramEigenFloor) return std::numeric_limits<double>::infinity();
    total += 1.0 / lam[i];
  }
  return total;
}

double error_bound(const SignalModel& model, const SamplingPattern& tau,
                   double epsilon_a, double sigma) {
  if (epsilon_a < 0.0) throw std::invalid_argument("error_bound: negative epsilon_a");
  if (sigma < 0.0) throw std::invalid_argument("error_bound: negative sigma");
  const Eigen::VectorXd lam = selection_gram_spectrum(model, tau);
  if (lam.size() == 0) return std::numeric_limits<double>::infinity();
  double theta = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] <= kGramEigenFloor) return std::numeric_limits<double>::infinity();
    theta += 1.0 / lam[i];
  }
  const double lam_min = lam[lam.size() - 1];
  return epsilon_a * epsilon_a / lam_min + sigma * sigma * theta;
}

}  // namespace dass
