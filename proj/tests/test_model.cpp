#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dass/model.hpp>

#include "helpers.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

using namespace dass;
using dass::testing::random_model;

namespace {

std::vector<Eigen::VectorXd> stationary_stream(Rng& rng, const SignalModel& truth,
                                               int blocks, double noise) {
  std::vector<Eigen::VectorXd> out;
  for (int t = 0; t < blocks; ++t) {
    Eigen::VectorXd x = truth.mean();
    for (int j = 0; j < truth.dimension(); ++j)
      x += std::sqrt(truth.eigenvalues()[j]) * rng.gaussian() * truth.basis().col(j);
    for (int i = 0; i < x.size(); ++i) x[i] += noise * rng.gaussian();
    out.push_back(std::move(x));
  }
  return out;
}

// smallest principal cosine between the two column spans
double affinity(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.transpose() * b);
  return svd.singularValues().minCoeff();
}

}  // namespace

TEST_CASE("interpolation is exact at samples, linear between, held at ends") {
  SamplingPattern tau({1, 4}, 6);
  Eigen::VectorXd obs(2);
  obs << 10, 40;
  const FieldBlock full = interpolate_block(Measurement(obs, tau, 0.0), 6);
  Eigen::VectorXd expect(6);
  expect << 10, 10, 20, 30, 40, 40;
  CHECK((full.values() - expect).norm() < 1e-12);
  CHECK_THROWS_AS(interpolate_block(Measurement(obs, tau, 0.0), 5),
                  std::invalid_argument);
}

TEST_CASE("pca divides by the sample count, not count minus one") {
  Eigen::VectorXd m(3), v(3);
  m << 1, 2, 3;
  v << 0.5, 0.0, -0.5;
  const std::vector<Eigen::VectorXd> blocks = {m + v, m - v};
  const Eigen::VectorXd spectrum = pca_spectrum(blocks);
  REQUIRE(spectrum.size() == 3);
  CHECK(spectrum[0] == doctest::Approx(v.squaredNorm()).epsilon(1e-12));
  CHECK(spectrum[1] == doctest::Approx(0.0).epsilon(1e-12));
  const SignalModel model = pca_model(blocks, 1);
  CHECK((model.mean() - m).norm() < 1e-12);
  CHECK(std::abs(std::abs(model.basis().col(0).dot(v.normalized())) - 1.0) < 1e-12);
  CHECK(model.eigenvalues()[0] == doctest::Approx(v.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("pca pads dimensions past the data rank") {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(4), v(4);
  v << 1, 0, 0, 0;
  const std::vector<Eigen::VectorXd> blocks = {m + v, m - v};
  const SignalModel model = pca_model(blocks, 3);
  CHECK(model.dimension() == 3);
  CHECK(model.eigenvalues()[1] == doctest::Approx(0.0).epsilon(1e-12));
  // completed columns are still orthonormal
  const Eigen::MatrixXd gram =
      model.basis().transpose() * model.basis();
  CHECK((gram - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-9);
}

TEST_CASE("pca_spectrum is full length and non-increasing") {
  Rng rng(5);
  std::vector<Eigen::VectorXd> blocks;
  for (int t = 0; t < 12; ++t) {
    Eigen::VectorXd x(8);
    for (int i = 0; i < 8; ++i) x[i] = rng.gaussian();
    blocks.push_back(x);
  }
  const Eigen::VectorXd s = pca_spectrum(blocks);
  REQUIRE(s.size() == 8);
  for (int i = 1; i < 8; ++i) CHECK(s[i] <= s[i - 1] + 1e-12);
}

TEST_CASE("incremental update of a mean-valued sample only reweights") {
  Rng rng(19);
  const SignalModel model = random_model(rng, 10, 3, 0.5, 7);
  LearnerConfig cfg;
  cfg.dimension = 3;
  cfg.buffer_length = 30;
  const FieldBlock mean_block(model.mean());

  cfg.variant = IncrementalVariant::as_printed;
  const SignalModel printed = update_model_incremental(model, mean_block, cfg);
  // L = min(7, 30) = 7: printed weighting shrinks by exactly 1/(L+1)
  CHECK((printed.eigenvalues() - model.eigenvalues() / 8.0).norm() < 1e-15);
  CHECK((printed.basis() - model.basis()).norm() < 1e-15);
  CHECK((printed.mean() - model.mean()).norm() < 1e-12);
  CHECK(printed.sample_count() == 8);

  cfg.variant = IncrementalVariant::rescaled;
  const SignalModel rescaled = update_model_incremental(model, mean_block, cfg);
  CHECK((rescaled.eigenvalues() - model.eigenvalues() * (7.0 / 8.0)).norm() < 1e-15);
}

TEST_CASE("incremental history is capped by the buffer length") {
  Rng rng(20);
  const SignalModel model = random_model(rng, 10, 2, 0.5, 500);
  LearnerConfig cfg;
  cfg.dimension = 2;
  cfg.buffer_length = 30;
  cfg.variant = IncrementalVariant::rescaled;
  const SignalModel next =
      update_model_incremental(model, FieldBlock(model.mean()), cfg);
  // L_eff = 30, not 500
  CHECK((next.eigenvalues() - model.eigenvalues() * (30.0 / 31.0)).norm() < 1e-15);
}

TEST_CASE("incremental update keeps the basis orthonormal while absorbing") {
  Rng rng(21);
  const SignalModel truth = random_model(rng, 12, 3, 0.6);
  IncrementalLearner learner(12, 3, LearnerConfig{});
  for (const auto& x : stationary_stream(rng, truth, 40, 0.01))
    learner.update(FieldBlock(x));
  const SignalModel& m = learner.model();
  CHECK(m.dimension() == 3);
  const Eigen::MatrixXd gram = m.basis().transpose() * m.basis();
  CHECK((gram - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-9);
  CHECK(learner.absorbed() == 40);
  CHECK(!learner.warmup());
}

TEST_CASE("rescaled incremental learner tracks the batch subspace") {
  Rng rng(22);
  const SignalModel truth = random_model(rng, 16, 3, 0.7);
  IncrementalLearner learner(16, 3, LearnerConfig{});
  std::vector<Eigen::VectorXd> seen;
  for (const auto& x : stationary_stream(rng, truth, 200, 0.02)) {
    learner.update(FieldBlock(x));
    seen.push_back(x);
  }
  const SignalModel batch = pca_model(seen, 3);
  CHECK(affinity(learner.model().basis(), batch.basis()) >= 0.9);
}

TEST_CASE("buffer learner equals a direct eigensolve of its window") {
  Rng rng(23);
  const SignalModel truth = random_model(rng, 10, 2, 0.5);
  BufferLearner learner(10, 2, 15);
  std::vector<Eigen::VectorXd> seen;
  for (const auto& x : stationary_stream(rng, truth, 25, 0.05)) {
    learner.update(FieldBlock(x));
    seen.push_back(x);
  }
  // oracle over the last 15 blocks: mean, covariance / count, eigensolve
  std::vector<Eigen::VectorXd> window(seen.end() - 15, seen.end());
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(10);
  for (const auto& x : window) mean += x;
  mean /= 15.0;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(10, 10);
  for (const auto& x : window) cov += (x - mean) * (x - mean).transpose();
  cov /= 15.0;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  const SignalModel& got = learner.model();
  CHECK((got.mean() - mean).norm() < 1e-8);
  for (int j = 0; j < 2; ++j) {
    CHECK(got.eigenvalues()[j] ==
          doctest::Approx(es.eigenvalues()[9 - j]).epsilon(1e-8));
    const double cosine =
        std::abs(got.basis().col(j).dot(es.eigenvectors().col(9 - j)));
    CHECK(cosine == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("learner residual energy reflects off-model content") {
  Rng rng(24);
  const SignalModel truth = random_model(rng, 10, 2, 0.5);
  BufferLearner clean(10, 2, 20);
  BufferLearner dirty(10, 2, 20);
  for (const auto& x : stationary_stream(rng, truth, 20, 0.0))
    clean.update(FieldBlock(x));
  for (const auto& x : stationary_stream(rng, truth, 20, 0.5))
    dirty.update(FieldBlock(x));
  CHECK(clean.residual_energy() < 1e-10);
  CHECK(dirty.residual_energy() > 0.01);
}

TEST_CASE("select_dimension trades tail mass against noise amplification") {
  Eigen::VectorXd spectrum(4);
  spectrum << 4.0, 1.0, 0.25, 0.0625;
  // noiseless: adding dimensions always reduces the tail -> take the cap
  CHECK(select_dimension(spectrum, 2, 0.0) == 2);
  CHECK(select_dimension(spectrum, 4, 0.0) == 4);
  // overwhelming noise: every extra dimension costs sigma^2 -> keep one
  CHECK(select_dimension(spectrum, 4, 100.0) == 1);
  // moderate noise: sigma^2 = 0.1 sits between the k=2 gain (0.25) and the
  // k=3 gain (0.0625), so exactly two dimensions pay off
  CHECK(select_dimension(spectrum, 4, std::sqrt(0.1)) == 2);
  Eigen::VectorXd rising(3);
  rising << 1.0, 2.0, 0.5;
  CHECK_THROWS_AS(select_dimension(rising, 2, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(select_dimension(spectrum, 0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(select_dimension(spectrum, 2, -1.0), std::invalid_argument);
}

TEST_CASE("model snapshots round-trip byte for byte") {
  Rng rng(29);
  const SignalModel model = random_model(rng, 9, 3, 0.3, 17);
  std::ostringstream first;
  save_model(model, 0.125, first);
  std::istringstream in(first.str());
  const ModelSnapshot snap = load_model(in);
  CHECK(snap.residual_energy == 0.125);
  CHECK(snap.model.sample_count() == 17);
  CHECK((snap.model.basis() - model.basis()).norm() == 0.0);
  CHECK((snap.model.mean() - model.mean()).norm() == 0.0);
  CHECK((snap.model.eigenvalues() - model.eigenvalues()).norm() == 0.0);
  std::ostringstream second;
  save_model(snap.model, snap.residual_energy, second);
  CHECK(first.str() == second.str());
  std::istringstream bad("# not-a-model\n");
  CHECK_THROWS_AS(load_model(bad), std::runtime_error);
}

TEST_CASE("front-end learner dispatches to both kinds") {
  Rng rng(31);
  const SignalModel truth = random_model(rng, 8, 2, 0.5);
  LearnerConfig cfg;
  cfg.kind = LearnerKind::buffer;
  ModelLearner buffered(8, 2, cfg);
  cfg.kind = LearnerKind::incremental;
  ModelLearner incremental(8, 2, cfg);
  for (const auto& x : stationary_stream(rng, truth, 12, 0.01)) {
    buffered.update(FieldBlock(x));
    incremental.update(FieldBlock(x));
  }
  CHECK(buffered.ready());
  CHECK(incremental.ready());
  CHECK(buffered.absorbed() == 12);
  CHECK(incremental.absorbed() == 12);
  CHECK(buffered.model().dimension() == 2);
  CHECK(incremental.model().dimension() == 2);
}

TEST_CASE("learner constructor and update validation") {
  CHECK_THROWS_AS(BufferLearner(0, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(BufferLearner(8, 9, 5), std::invalid_argument);
  CHECK_THROWS_AS(BufferLearner(8, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(IncrementalLearner(8, 0, LearnerConfig{}), std::invalid_argument);
  BufferLearner learner(8, 2, 5);
  CHECK_THROWS_AS(learner.model(), std::runtime_error);
  Eigen::VectorXd wrong = Eigen::VectorXd::Zero(7);
  CHECK_THROWS_AS(learner.update(FieldBlock(wrong)), std::invalid_argument);
}
