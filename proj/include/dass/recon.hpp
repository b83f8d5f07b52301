#pragma once

#include <optional>

#include "dass/core.hpp"

namespace dass {

struct Reconstruction {
  FieldBlock estimate;
  Eigen::VectorXd coefficients;
  // Sum over k of 1/lambda_k for the selected-row basis; +inf when the
  // selection is rank-deficient.
  double theta;
  // Worst-case squared-error bound; only present when epsilon_a was given.
  std::optional<double> squared_error_bound;
};

// Least-squares recovery of the basis coefficients from a subsampled
// measurement: solve min ||(y - mean[tau]) - B[tau] a||_2, then lift
// back to the full block as B a + mean. Requires at least as many samples
// as model dimensions and a selection whose smallest singular value is
// above 1e-10 times its largest.
Reconstruction ols_reconstruct(const SignalModel& model, const Measurement& m,
                               std::optional<double> epsilon_a = std::nullopt);

// trace((B[tau]^T B[tau])^-1): the white-noise amplification of the
// least-squares solve. Returns +inf when any eigenvalue of the selection
// Gram matrix is <= 1e-12.
double theta_cost(const SignalModel& model, const SamplingPattern& tau);

// epsilon_a^2 / lambda_min + sigma^2 * theta, the worst-case bound on the
// per-sample squared reconstruction error. +inf on rank deficiency.
double error_bound(const SignalModel& model, const SamplingPattern& tau,
                   double epsilon_a, double sigma);

}  // namespace dass
