#pragma once

#include <vector>

#include "dass/core.hpp"

namespace dass {

enum class L1Status { converged, max_iterations };

struct L1Config {
  // Residual budget: solve for the sparsest coefficients with
  // ||observed - selection * dictionary * s||_2 approximately equal to xi.
  // xi = 0 requests (near-)exact data fit.
  double xi = 0.0;
  int max_iterations = 5000;
  double tolerance = 1e-8;
  // Accepted relative mismatch between the achieved residual and xi.
  double budget_match_rel = 0.02;
  // Penalty floor, relative to ||A^T b||_inf, used when xi = 0.
  double noiseless_mu_scale = 1e-6;
  bool record_objective = false;
};

struct L1Result {
  FieldBlock estimate;
  Eigen::VectorXd coefficients;
  L1Status status;
  double residual_norm;
  double penalty;     // the l1 weight the driver settled on
  int iterations;     // proximal steps across all inner solves
  bool budget_met;    // residual within budget_match_rel of xi
  std::vector<double> objective;  // filled when record_objective is set
};

// Sparse recovery of dictionary coefficients from a subsampled measurement
// by an accelerated proximal-gradient solve of
//   0.5 * ||(y - mean[tau]) - A s||^2 + mu * ||s||_1,  A = dictionary[tau].
// The penalty weight is driven by bisection until the residual matches
// cfg.xi; xi = 0 uses the noiseless floor instead. The estimate is lifted
// back to the full block as dictionary * s + mean.
L1Result l1_reconstruct(const SignalModel& dictionary, const Measurement& m,
                        const L1Config& cfg);

}  // namespace dass
