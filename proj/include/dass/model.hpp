#pragma once

#include <deque>
#include <iosfwd>
#include <variant>
#include <vector>

#include "dass/core.hpp"

namespace dass {

enum class IncrementalVariant { rescaled, as_printed };
enum class LearnerKind { incremental, buffer };
enum class InterpolationKind { linear };

struct LearnerConfig {
  int dimension = 0;  // 0 = pick from the data spectrum once warmed up
  int buffer_length = 30;
  LearnerKind kind = LearnerKind::incremental;
  InterpolationKind interpolation = InterpolationKind::linear;
  IncrementalVariant variant = IncrementalVariant::rescaled;
  double residual_tolerance = 1e-9;
};

// Fill a full block of the given length from a subsampled measurement:
// linear interpolation between observed indices, constant hold before the
// first and after the last one. Exact at every observed index.
FieldBlock interpolate_block(const Measurement& m, int block_length);

// Batch PCA over a set of equal-length vectors. Covariance is normalized by
// the count (not count - 1). When the requested dimension exceeds the
// covariance rank the basis is completed with deterministic orthonormal
// fill-in and the matching eigenvalues are zero.
SignalModel pca_model(const std::vector<Eigen::VectorXd>& blocks, int dimension);

// All covariance eigenvalues (length N, decreasing, zero-padded past the rank).
Eigen::VectorXd pca_spectrum(const std::vector<Eigen::VectorXd>& blocks);

// One rank-one update of basis, eigenvalues and mean from a new block,
// without access to past data. cfg.dimension must be explicit (>= 1); the
// model dimension grows by at most one per call until it reaches it.
// cfg.buffer_length acts as the effective history length once that many
// blocks have been absorbed.
SignalModel update_model_incremental(const SignalModel& model,
                                     const FieldBlock& block,
                                     const LearnerConfig& cfg);

// Smallest k in [1, min(budget, N)] minimizing the estimated error bound
//   (tail spectrum mass)/N / (budget/N) + sigma^2 * k / (budget/N)
// over a decreasing spectrum of length N. Ties go to the smaller k.
int select_dimension(const Eigen::VectorXd& spectrum, int sample_budget,
                     double sigma);

// Sliding-buffer learner: keeps the last buffer_length blocks and re-runs
// batch PCA after each insertion.
class BufferLearner {
 public:
  BufferLearner(int block_length, int dimension, int buffer_length);

  const SignalModel& update(const FieldBlock& interpolated);
  const SignalModel& model() const;
  bool ready() const { return absorbed_ >= 2; }
  bool warmup() const;  // fewer buffered blocks than requested dimensions
  long absorbed() const { return absorbed_; }
  // Mean squared per-sample energy outside the retained subspace.
  double residual_energy() const { return residual_energy_; }
  Eigen::VectorXd full_spectrum() const { return spectrum_; }

 private:
  int block_length_;
  int dimension_;
  int buffer_length_;
  long absorbed_ = 0;
  std::deque<Eigen::VectorXd> buffer_;
  std::vector<SignalModel> current_;  // empty until first update
  Eigen::VectorXd spectrum_;
  double residual_energy_ = 0.0;
};

// Streaming learner built on update_model_incremental. Starts from the first
// block (mean only) and grows one dimension per block until the target.
class IncrementalLearner {
 public:
  IncrementalLearner(int block_length, int dimension, const LearnerConfig& cfg);

  const SignalModel& update(const FieldBlock& interpolated);
  const SignalModel& model() const;
  bool ready() const { return absorbed_ >= 2; }
  bool warmup() const;
  long absorbed() const { return absorbed_; }
  double residual_energy() const { return residual_energy_; }

 private:
  int block_length_;
  LearnerConfig cfg_;
  long absorbed_ = 0;
  std::vector<SignalModel> current_;
  double residual_energy_ = 0.0;
};

// Uniform front-end over the two learner kinds.
class ModelLearner {
 public:
  ModelLearner(int block_length, int dimension, const LearnerConfig& cfg);

  void update(const FieldBlock& interpolated);
  bool ready() const;
  bool warmup() const;
  long absorbed() const;
  const SignalModel& model() const;
  double residual_energy() const;

 private:
  std::variant<BufferLearner, IncrementalLearner> impl_;
};

struct ModelSnapshot {
  SignalModel model;
  double residual_energy;
};

// Versioned plain-text snapshot, full double precision, byte-stable for a
// given model.
void save_model(const SignalModel& model, double residual_energy, std::ostream& out);
ModelSnapshot load_model(std::istream& in);

}  // namespace dass
