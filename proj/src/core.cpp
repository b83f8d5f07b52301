#include "dass/core.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dass {

double Rng::uniform() {
  // 53 random bits; deterministic across platforms, unlike the
  // distribution adaptors whose draw sequences are implementation-defined.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

int Rng::uniform_int(int bound) {
  if (bound <= 0) throw std::invalid_argument("Rng::uniform_int: bound must be positive");
  const std::uint64_t b = static_cast<std::uint64_t>(bound);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return static_cast<int>(r % b);
}

FieldBlock::FieldBlock(Eigen::VectorXd values, int block_index, int node_count)
    : values_(std::move(values)), block_index_(block_index), node_count_(node_count) {
  if (values_.size() == 0) throw std::invalid_argument("FieldBlock: empty value vector");
  if (node_count_ < 1) throw std::invalid_argument("FieldBlock: node_count must be >= 1");
  if (values_.size() % node_count_ != 0)
    throw std::invalid_argument("FieldBlock: length not divisible by node_count");
  if (!values_.allFinite()) throw std::invalid_argument("FieldBlock: non-finite value");
}

Eigen::VectorXd FieldBlock::node_segment(int node) const {
  if (node < 0 || node >= node_count_)
    throw std::invalid_argument("FieldBlock: node index out of range");
  const int len = per_node_length();
  return values_.segment(static_cast<Eigen::Index>(node) * len, len);
}

SamplingPattern::SamplingPattern(std::vector<int> indices, int block_length)
    : indices_(std::move(indices)), block_length_(block_length) {
  if (block_length_ < 1)
    throw std::invalid_argument("SamplingPattern: block length must be >= 1");
  if (indices_.empty()) throw std::invalid_argument("SamplingPattern: empty index set");
  int prev = -1;
  for (int idx : indices_) {
    if (idx < 0 || idx >= block_length_)
      throw std::invalid_argument("SamplingPattern: index out of range");
    if (idx <= prev)
      throw std::invalid_argument("SamplingPattern: indices must be strictly increasing");
    prev = idx;
  }
}

std::string SamplingPattern::to_csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) out << ',';
    out << indices_[i];
  }
  return out.str();
}

SamplingPattern SamplingPattern::from_csv(const std::string& text, int block_length) {
  std::vector<int> idx;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t pos = 0;
    int v;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("SamplingPattern: bad token '" + tok + "'");
    }
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size())
      throw std::invalid_argument("SamplingPattern: bad token '" + tok + "'");
    idx.push_back(v);
  }
  return SamplingPattern(std::move(idx), block_length);
}

SignalModel::SignalModel(Eigen::MatrixXd basis, Eigen::VectorXd mean,
                         Eigen::VectorXd eigenvalues, long sample_count)
    : basis_(std::move(basis)),
      mean_(std::move(mean)),
      eigenvalues_(std::move(eigenvalues)),
      sample_count_(sample_count) {
  const Eigen::Index n = basis_.rows();
  const Eigen::Index k = basis_.cols();
  if (n < 1) throw std::invalid_argument("SignalModel: empty basis");
  if (k > n) throw std::invalid_argument("SignalModel: more columns than rows");
  if (mean_.size() != n) throw std::invalid_argument("SignalModel: mean length mismatch");
  if (eigenvalues_.size() != k)
    throw std::invalid_argument("SignalModel: eigenvalue count must equal dimension");
  if (sample_count_ < 0) throw std::invalid_argument("SignalModel: negative sample count");
  if (!basis_.allFinite() || !mean_.allFinite() || !eigenvalues_.allFinite())
    throw std::invalid_argument("SignalModel: non-finite entry");
  if (k > 0) {
    const Eigen::MatrixXd gram = basis_.transpose() * basis_;
    const double dev =
        (gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
    if (dev > 1e-8)
      throw std::invalid_argument("SignalModel: basis columns not orthonormal");
    for (Eigen::Index i = 0; i < k; ++i) {
      if (eigenvalues_[i] < 0.0)
        throw std::invalid_argument("SignalModel: negative eigenvalue");
      if (i > 0 && eigenvalues_[i] > eigenvalues_[i - 1])
        throw std::invalid_argument("SignalModel: eigenvalues must be non-increasing");
    }
  }
}

Measurement::Measurement(Eigen::VectorXd observed_in, SamplingPattern pattern_in,
                         double noise_sigma_in)
    : observed(std::move(observed_in)),
      pattern(std::move(pattern_in)),
      noise_sigma(noise_sigma_in) {
  if (observed.size() != pattern.size())
    throw std::invalid_argument("Measurement: observed length must match pattern size");
  if (noise_sigma < 0.0) throw std::invalid_argument("Measurement: negative noise sigma");
}

Eigen::VectorXd apply_pattern(const Eigen::VectorXd& x, const SamplingPattern& tau) {
  if (x.size() != tau.block_length())
    throw std::invalid_argument("apply_pattern: block length mismatch");
  Eigen::VectorXd y(tau.size());
  const auto& idx = tau.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) y[static_cast<Eigen::Index>(i)] = x[idx[i]];
  return y;
}

Eigen::VectorXd apply_pattern(const FieldBlock& x, const SamplingPattern& tau) {
  return apply_pattern(x.values(), tau);
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, const SamplingPattern& tau) {
  if (m.rows() != tau.block_length())
    throw std::invalid_argument("select_rows: row count mismatch");
  Eigen::MatrixXd out(tau.size(), m.cols());
  const auto& idx = tau.indices();
  for (std::size_t i = 0; i < idx.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = m.row(idx[i]);
  return out;
}

Eigen::VectorXd add_noise(const Eigen::VectorXd& y, double sigma, Rng& rng) {
  if (sigma < 0.0) throw std::invalid_argument("add_noise: negative sigma");
  if (sigma == 0.0) return y;
  Eigen::VectorXd out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) out[i] = y[i] + sigma * rng.gaussian();
  return out;
}

Eigen::VectorXd add_noise(const Eigen::VectorXd& y, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  return add_noise(y, sigma, rng);
}

double rmse(const Eigen::VectorXd& x, const Eigen::VectorXd& x_hat) {
  if (x.size() != x_hat.size()) throw std::invalid_argument("rmse: length mismatch");
  if (x.size() == 0) throw std::invalid_argument("rmse: empty vectors");
  return (x - x_hat).norm() / std::sqrt(static_cast<double>(x.size()));
}

double rmse(const FieldBlock& x, const FieldBlock& x_hat) {
  return rmse(x.values(), x_hat.values());
}

}  // namespace dass
