#include "dass/model.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dass {

namespace {

// Fixes each column's sign so its largest-magnitude entry is nonnegative.
// Keeps eigenvector output stable across eigensolver quirks.
void fix_column_signs(Eigen::MatrixXd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double a = std::abs(m(i, j));
      if (a > best_abs) {
        best_abs = a;
        best = i;
      }
    }
    if (m(best, j) < 0.0) m.col(j) = -m.col(j);
  }
}

// Two-pass modified Gram-Schmidt. Input columns must already be close to
// orthonormal; this only removes accumulated drift.
void reorthonormalize(Eigen::MatrixXd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < j; ++i)
        m.col(j) -= m.col(i).dot(m.col(j)) * m.col(i);
    const double n = m.col(j).norm();
    if (n < 1e-12)
      throw std::runtime_error("model update: basis collapsed during re-orthonormalization");
    m.col(j) /= n;
  }
}

// Extends an orthonormal column set to target_cols columns by sweeping the
// canonical basis vectors; deterministic and independent of input order.
Eigen::MatrixXd complete_orthonormal(const Eigen::MatrixXd& partial, int target_cols) {
  const Eigen::Index n = partial.rows();
  Eigen::MatrixXd out(n, target_cols);
  Eigen::Index have = partial.cols();
  out.leftCols(have) = partial;
  for (Eigen::Index e = 0; e < n && have < target_cols; ++e) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < have; ++i)
        v -= out.col(i).dot(v) * out.col(i);
    const double norm = v.norm();
    if (norm > 1e-8) {
      out.col(have++) = v / norm;
    }
  }
  if (have < target_cols)
    throw std::runtime_error("orthonormal completion failed");
  return out;
}

struct Decomposition {
  Eigen::MatrixXd vectors;  // N x rank, decreasing eigenvalue order
  Eigen::VectorXd values;   // length N: full spectrum, zero past the rank
};

// Covariance eigendecomposition of a block set, normalized by the count.
// Uses the Gram trick when there are fewer blocks than dimensions.
Decomposition decompose_blocks(const std::vector<Eigen::VectorXd>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("pca: no blocks");
  const Eigen::Index n = blocks[0].size();
  const Eigen::Index c = static_cast<Eigen::Index>(blocks.size());
  for (const auto& b : blocks)
    if (b.size() != n) throw std::invalid_argument("pca: block length mismatch");

  Eigen::MatrixXd data(n, c);
  for (Eigen::Index j = 0; j < c; ++j) data.col(j) = blocks[j];
  const Eigen::VectorXd mean = data.rowwise().mean();
  data.colwise() -= mean;

  Decomposition dec;
  dec.values = Eigen::VectorXd::Zero(n);
  if (c >= n) {
    const Eigen::MatrixXd cov = (data * data.transpose()) / static_cast<double>(c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success) throw std::runtime_error("pca: eigensolver failed");
    dec.vectors = es.eigenvectors().rowwise().reverse();
    dec.values = es.eigenvalues().reverse().cwiseMax(0.0);
  } else {
    const Eigen::MatrixXd gram = (data.transpose() * data) / static_cast<double>(c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    if (es.info() != Eigen::Success) throw std::runtime_error("pca: eigensolver failed");
    const Eigen::VectorXd vals = es.eigenvalues().reverse().cwiseMax(0.0);
    const double top = vals.size() > 0 ? vals[0] : 0.0;
    std::vector<Eigen::VectorXd> cols;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
      if (vals[i] <= top * 1e-14 || vals[i] <= 0.0) break;
      Eigen::VectorXd u = data * es.eigenvectors().col(vals.size() - 1 - i);
      const double norm = u.norm();
      if (norm <= 0.0) break;
      cols.push_back(u / norm);
      dec.values[i] = vals[i];
    }
    dec.vectors.resize(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i)
      dec.vectors.col(static_cast<Eigen::Index>(i)) = cols[i];
    if (dec.vectors.cols() > 0) reorthonormalize(dec.vectors);
  }
  return dec;
}

Eigen::VectorXd blocks_mean(const std::vector<Eigen::VectorXd>& blocks) {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(blocks[0].size());
  for (const auto& b : blocks) mean += b;
  return mean / static_cast<double>(blocks.size());
}

}  // namespace

FieldBlock interpolate_block(const Measurement& m, int block_length) {
  if (m.pattern.block_length() != block_length)
    throw std::invalid_argument("interpolate_block: block length mismatch");
  const auto& idx = m.pattern.indices();
  Eigen::VectorXd out(block_length);
  // Hold flat before the first observation and after the last.
  for (int i = 0; i < idx.front(); ++i) out[i] = m.observed[0];
  for (int i = idx.back() + 1; i < block_length; ++i)
    out[i] = m.observed[m.observed.size() - 1];
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out[idx[j]] = m.observed[static_cast<Eigen::Index>(j)];
    if (j + 1 < idx.size()) {
      const int lo = idx[j], hi = idx[j + 1];
      for (int i = lo + 1; i < hi; ++i) {
        const double t = static_cast<double>(i - lo) / static_cast<double>(hi - lo);
        out[i] = (1.0 - t) * m.observed[static_cast<Eigen::Index>(j)] +
                 t * m.observed[static_cast<Eigen::Index>(j + 1)];
      }
    }
  }
  return FieldBlock(std::move(out));
}

SignalModel pca_model(const std::vector<Eigen::VectorXd>& blocks, int dimension) {
  if (blocks.empty()) throw std::invalid_argument("pca_model: no blocks");
  const Eigen::Index n = blocks[0].size();
  if (dimension < 0 || dimension > n)
    throw std::invalid_argument("pca_model: dimension out of range");

  const Decomposition dec = decompose_blocks(blocks);
  Eigen::MatrixXd basis;
  if (dec.vectors.cols() >= dimension) {
    basis = dec.vectors.leftCols(dimension);
  } else {
    basis = complete_orthonormal(dec.vectors, dimension);
  }
  fix_column_signs(basis);
  Eigen::VectorXd values = dec.values.head(dimension);
  return SignalModel(std::move(basis), blocks_mean(blocks), std::move(values),
                     static_cast<long>(blocks.size()));
}

Eigen::VectorXd pca_spectrum(const std::vector<Eigen::VectorXd>& blocks) {
  return decompose_blocks(blocks).values;
}

SignalModel update_model_incremental(const SignalModel& model,
                                     const FieldBlock& block,
                                     const LearnerConfig& cfg) {
  const int n = model.field_length();
  if (block.length() != n)
    throw std::invalid_argument("update_model_incremental: block length mismatch");
  if (cfg.dimension < 1 || cfg.dimension > n)
    throw std::invalid_argument("update_model_incremental: dimension out of range");
  if (cfg.buffer_length < 1)
    throw std::invalid_argument("update_model_incremental: buffer length must be >= 1");
  if (model.sample_count() < 1)
    throw std::invalid_argument("update_model_incremental: model has no absorbed blocks");

  const int k0 = model.dimension();
  const double len = static_cast<double>(
      std::min<long>(model.sample_count(), cfg.buffer_length));
  const double w_old =
      cfg.variant == IncrementalVariant::rescaled ? len / (len + 1.0) : 1.0 / (len + 1.0);
  const double w_new = len / ((len + 1.0) * (len + 1.0));

  const Eigen::VectorXd& x = block.values();
  const Eigen::VectorXd centered = x - model.mean();
  const Eigen::VectorXd a = model.basis().transpose() * centered;
  const Eigen::VectorXd resid = (model.basis() * a + model.mean()) - x;
  const double resid_norm = resid.norm();
  const bool augment = resid_norm >= cfg.residual_tolerance && k0 < n;

  Eigen::VectorXd mean_next = (len * model.mean() + x) / (len + 1.0);
  const long count_next = model.sample_count() + 1;

  if (!augment && k0 == 0)
    return SignalModel(Eigen::MatrixXd(n, 0), std::move(mean_next),
                       Eigen::VectorXd(0), count_next);

  // Exact shortcut: a projection-free sample leaves the basis untouched and
  // only shrinks the eigenvalues.
  if (!augment && a.cwiseAbs().maxCoeff() == 0.0) {
    return SignalModel(model.basis(), std::move(mean_next),
                       w_old * model.eigenvalues(), count_next);
  }

  const int aug_dim = augment ? k0 + 1 : k0;
  Eigen::MatrixXd mixer = Eigen::MatrixXd::Zero(aug_dim, aug_dim);
  mixer.topLeftCorner(k0, k0) = w_new * (a * a.transpose());
  mixer.topLeftCorner(k0, k0).diagonal() += w_old * model.eigenvalues();
  Eigen::VectorXd b;
  if (augment) {
    b = resid / resid_norm;
    const double c = b.dot(centered);
    mixer.topRightCorner(k0, 1) = w_new * c * a;
    mixer.bottomLeftCorner(1, k0) = (w_new * c * a).transpose();
    mixer(k0, k0) = w_new * c * c;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mixer);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("update_model_incremental: eigensolver failed");

  const int dim_next = std::min(aug_dim, cfg.dimension);
  Eigen::MatrixXd carrier(n, aug_dim);
  carrier.leftCols(k0) = model.basis();
  if (augment) carrier.col(k0) = b;

  Eigen::MatrixXd basis_next(n, dim_next);
  Eigen::VectorXd values_next(dim_next);
  for (int j = 0; j < dim_next; ++j) {
    const Eigen::Index src = aug_dim - 1 - j;  // decreasing eigenvalue order
    basis_next.col(j) = carrier * es.eigenvectors().col(src);
    values_next[j] = std::max(es.eigenvalues()[src], 0.0);
  }
  reorthonormalize(basis_next);
  fix_column_signs(basis_next);
  return SignalModel(std::move(basis_next), std::move(mean_next),
                     std::move(values_next), count_next);
}

int select_dimension(const Eigen::VectorXd& spectrum, int sample_budget, double sigma) {
  const Eigen::Index n = spectrum.size();
  if (n < 1) throw std::invalid_argument("select_dimension: empty spectrum");
  if (sample_budget < 1) throw std::invalid_argument("select_dimension: budget must be >= 1");
  if (sigma < 0.0) throw std::invalid_argument("select_dimension: negative sigma");
  const double top = std::max(spectrum[0], 0.0);
  for (Eigen::Index i = 1; i < n; ++i)
    if (spectrum[i] > spectrum[i - 1] + 1e-12 * std::max(top, 1.0))
      throw std::invalid_argument("select_dimension: spectrum must be non-increasing");

  const double gamma = static_cast<double>(sample_budget) / static_cast<double>(n);
  const int k_max = static_cast<int>(std::min<Eigen::Index>(sample_budget, n));

  // tail[k] = spectrum mass past the first k components
  std::vector<double> tail(static_cast<std::size_t>(n) + 1, 0.0);
  for (Eigen::Index i = n - 1; i >= 0; --i)
    tail[i] = tail[i + 1] + std::max(spectrum[i], 0.0);

  int best_k = 1;
  double best_score = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= k_max; ++k) {
    const double approx = tail[k] / static_cast<double>(n);
    const double score = approx / gamma + sigma * sigma * k / gamma;
    if (score < best_score) {
      best_score = score;
      best_k = k;
    }
  }
  return best_k;
}

BufferLearner::BufferLearner(int block_length, int dimension, int buffer_length)
    : block_length_(block_length), dimension_(dimension), buffer_length_(buffer_length) {
  if (block_length < 1) throw std::invalid_argument("BufferLearner: bad block length");
  if (dimension < 1 || dimension > block_length)
    throw std::invalid_argument("BufferLearner: dimension out of range");
  if (buffer_length < 1) throw std::invalid_argument("BufferLearner: bad buffer length");
}

const SignalModel& BufferLearner::update(const FieldBlock& interpolated) {
  if (interpolated.length() != block_length_)
    throw std::invalid_argument("BufferLearner: block length mismatch");
  buffer_.push_back(interpolated.values());
  if (static_cast<int>(buffer_.size()) > buffer_length_) buffer_.pop_front();
  ++absorbed_;

  std::vector<Eigen::VectorXd> blocks(buffer_.begin(), buffer_.end());
  const int dim = std::min<int>(dimension_, static_cast<int>(blocks.size()));
  SignalModel next = pca_model(blocks, dim);
  spectrum_ = pca_spectrum(blocks);
  double tail = 0.0;
  for (Eigen::Index i = dim; i < spectrum_.size(); ++i) tail += spectrum_[i];
  residual_energy_ = tail / static_cast<double>(block_length_);
  current_.clear();
  current_.push_back(std::move(next));
  return current_.front();
}

const SignalModel& BufferLearner::model() const {
  if (current_.empty()) throw std::runtime_error("BufferLearner: model not ready");
  return current_.front();
}

bool BufferLearner::warmup() const {
  return static_cast<int>(buffer_.size()) < dimension_;
}

IncrementalLearner::IncrementalLearner(int block_length, int dimension,
                                       const LearnerConfig& cfg)
    : block_length_(block_length), cfg_(cfg) {
  cfg_.dimension = dimension;
  if (block_length < 1) throw std::invalid_argument("IncrementalLearner: bad block length");
  if (dimension < 1 || dimension > block_length)
    throw std::invalid_argument("IncrementalLearner: dimension out of range");
  if (cfg_.buffer_length < 1)
    throw std::invalid_argument("IncrementalLearner: bad buffer length");
}

const SignalModel& IncrementalLearner::update(const FieldBlock& interpolated) {
  if (interpolated.length() != block_length_)
    throw std::invalid_argument("IncrementalLearner: block length mismatch");
  if (absorbed_ == 0) {
    current_.clear();
    current_.emplace_back(Eigen::MatrixXd(block_length_, 0), interpolated.values(),
                          Eigen::VectorXd(0), 1);
    absorbed_ = 1;
    return current_.front();
  }
  const SignalModel& prev = current_.front();
  const Eigen::VectorXd centered = interpolated.values() - prev.mean();
  const Eigen::VectorXd in_span = prev.basis() * (prev.basis().transpose() * centered);
  const double r2 = (centered - in_span).squaredNorm() / static_cast<double>(block_length_);
  const double len = static_cast<double>(std::min<long>(absorbed_, cfg_.buffer_length));
  residual_energy_ = (len * residual_energy_ + r2) / (len + 1.0);

  SignalModel next = update_model_incremental(prev, interpolated, cfg_);
  current_.clear();
  current_.push_back(std::move(next));
  ++absorbed_;
  return current_.front();
}

const SignalModel& IncrementalLearner::model() const {
  if (current_.empty()) throw std::runtime_error("IncrementalLearner: model not ready");
  return current_.front();
}

bool IncrementalLearner::warmup() const {
  return current_.empty() || current_.front().dimension() < cfg_.dimension;
}

ModelLearner::ModelLearner(int block_length, int dimension, const LearnerConfig& cfg)
    : impl_(cfg.kind == LearnerKind::buffer
                ? std::variant<BufferLearner, IncrementalLearner>(
                      BufferLearner(block_length, dimension, cfg.buffer_length))
                : std::variant<BufferLearner, IncrementalLearner>(
                      IncrementalLearner(block_length, dimension, cfg))) {}

void ModelLearner::update(const FieldBlock& interpolated) {
  std::visit([&](auto& l) { l.update(interpolated); }, impl_);
}

bool ModelLearner::ready() const {
  return std::visit([](const auto& l) { return l.ready(); }, impl_);
}

bool ModelLearner::warmup() const {
  return std::visit([](const auto& l) { return l.warmup(); }, impl_);
}

long ModelLearner::absorbed() const {
  return std::visit([](const auto& l) { return l.absorbed(); }, impl_);
}

const SignalModel& ModelLearner::model() const {
  return std::visit([](const auto& l) -> const SignalModel& { return l.model(); }, impl_);
}

double ModelLearner::residual_energy() const {
  return std::visit([](const auto& l) { return l.residual_energy(); }, impl_);
}

void save_model(const SignalModel& model, double residual_energy, std::ostream& out) {
  out << "dass-model 1\n";
  out << model.field_length() << ' ' << model.dimension() << ' '
      << model.sample_count() << '\n';
  out << std::setprecision(17);
  out << residual_energy << '\n';
  for (Eigen::Index i = 0; i < model.mean().size(); ++i) {
    if (i) out << ' ';
    out << model.mean()[i];
  }
  out << '\n';
  for (Eigen::Index i = 0; i < model.eigenvalues().size(); ++i) {
    if (i) out << ' ';
    out << model.eigenvalues()[i];
  }
  out << '\n';
  for (Eigen::Index i = 0; i < model.basis().rows(); ++i) {
    for (Eigen::Index j = 0; j < model.basis().cols(); ++j) {
      if (j) out << ' ';
      out << model.basis()(i, j);
    }
    out << '\n';
  }
}

ModelSnapshot load_model(std::istream& in) {
  std::string header;
  std::getline(in, header);
  if (header != "dass-model 1")
    throw std::runtime_error("load_model: unrecognized header '" + header + "'");
  long n = 0, k = 0, count = 0;
  double residual = 0.0;
  if (!(in >> n >> k >> count >> residual))
    throw std::runtime_error("load_model: truncated snapshot");
  if (n < 1 || k < 0 || k > n) throw std::runtime_error("load_model: bad dimensions");
  Eigen::VectorXd mean(n);
  for (long i = 0; i < n; ++i)
    if (!(in >> mean[i])) throw std::runtime_error("load_model: truncated mean");
  Eigen::VectorXd values(k);
  for (long i = 0; i < k; ++i)
    if (!(in >> values[i])) throw std::runtime_error("load_model: truncated eigenvalues");
  Eigen::MatrixXd basis(n, k);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < k; ++j)
      if (!(in >> basis(i, j))) throw std::runtime_error("load_model: truncated basis");
  return ModelSnapshot{SignalModel(std::move(basis), std::move(mean),
                                   std::move(values), count),
                       residual};
}

}  // namespace dass
