#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace dass {

// Deterministic random stream. Every API that needs randomness takes a seed
// or an Rng&; there is no ambient global generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1).
  double uniform();
  // Standard normal via the polar method (stateful spare).
  double gaussian();
  // Uniform integer in [0, bound).
  int uniform_int(int bound);
  // Raw engine output, used to derive seeds for sub-streams.
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// One temporal block of the discretized field. For a multi-node deployment
// the per-node blocks are concatenated node-major into a single vector.
class FieldBlock {
 public:
  FieldBlock(Eigen::VectorXd values, int block_index = 0, int node_count = 1);

  const Eigen::VectorXd& values() const { return values_; }
  int length() const { return static_cast<int>(values_.size()); }
  int block_index() const { return block_index_; }
  int node_count() const { return node_count_; }
  int per_node_length() const { return length() / node_count_; }

  // Copy of the sub-vector belonging to one node.
  Eigen::VectorXd node_segment(int node) const;

 private:
  Eigen::VectorXd values_;
  int block_index_;
  int node_count_;
};

// Strictly increasing index set tau into a block of length N. The 0/1
// selection operator it induces is never materialized; all operators work on
// the indices directly.
class SamplingPattern {
 public:
  SamplingPattern(std::vector<int> indices, int block_length);

  int size() const { return static_cast<int>(indices_.size()); }
  int block_length() const { return block_length_; }
  const std::vector<int>& indices() const { return indices_; }

  bool operator==(const SamplingPattern& other) const = default;

  // Comma-separated sorted indices, e.g. "0,3,6,9".
  std::string to_csv() const;
  static SamplingPattern from_csv(const std::string& text, int block_length);

 private:
  std::vector<int> indices_;
  int block_length_;
};

// Affine K-dimensional signal model: orthonormal basis (N x K), mean vector,
// eigenvalues of the learned covariance (decreasing), and the number of
// blocks absorbed so far.
class SignalModel {
 public:
  SignalModel(Eigen::MatrixXd basis, Eigen::VectorXd mean,
              Eigen::VectorXd eigenvalues, long sample_count);

  int field_length() const { return static_cast<int>(basis_.rows()); }
  int dimension() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  long sample_count() const { return sample_count_; }

 private:
  Eigen::MatrixXd basis_;
  Eigen::VectorXd mean_;
  Eigen::VectorXd eigenvalues_;
  long sample_count_;
};

// Observed vector plus the pattern that produced it and the noise level used.
struct Measurement {
  Measurement(Eigen::VectorXd observed_in, SamplingPattern pattern_in,
              double noise_sigma_in);

  Eigen::VectorXd observed;
  SamplingPattern pattern;
  double noise_sigma;
};

// Pure row selection: out[i] = x[tau[i]].
Eigen::VectorXd apply_pattern(const FieldBlock& x, const SamplingPattern& tau);
Eigen::VectorXd apply_pattern(const Eigen::VectorXd& x,
                              const SamplingPattern& tau);

// Rows of a matrix selected by the pattern (the M x K submatrix).
Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m,
                            const SamplingPattern& tau);

// y + w with w i.i.d. Gaussian(0, sigma^2). sigma = 0 returns y unchanged.
Eigen::VectorXd add_noise(const Eigen::VectorXd& y, double sigma,
                          std::uint64_t seed);
Eigen::VectorXd add_noise(const Eigen::VectorXd& y, double sigma, Rng& rng);

// (1/sqrt(N)) * l2 norm of the difference.
double rmse(const FieldBlock& x, const FieldBlock& x_hat);
double rmse(const Eigen::VectorXd& x, const Eigen::VectorXd& x_hat);

}  // namespace dass
