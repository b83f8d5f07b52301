#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dass/core.hpp>

#include <cmath>
#include <stdexcept>

using namespace dass;

TEST_CASE("rng is deterministic per seed") {
  Rng a(42), b(42), c(43);
  bool all_equal = true, any_differ = false;
  for (int i = 0; i < 200; ++i) {
    const double x = a.uniform();
    all_equal = all_equal && x == b.uniform();
    any_differ = any_differ || x != c.uniform();
  }
  CHECK(all_equal);
  CHECK(any_differ);
}

TEST_CASE("rng uniform stays in [0,1) and has sane moments") {
  Rng rng(7);
  double sum = 0.0, sumsq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    sum += x;
    sumsq += x * x;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(sumsq / n == doctest::Approx(1.0 / 3.0).epsilon(0.03));
}

TEST_CASE("rng gaussian moments") {
  Rng rng(11);
  double sum = 0.0, sumsq = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sumsq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(sumsq / n == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("rng uniform_int bounds and errors") {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const int v = rng.uniform_int(7);
    REQUIRE(v >= 0);
    REQUIRE(v < 7);
  }
  CHECK(rng.uniform_int(1) == 0);
  CHECK_THROWS_AS(rng.uniform_int(0), std::invalid_argument);
}

TEST_CASE("field block validation and node segments") {
  Eigen::VectorXd v(6);
  v << 0, 1, 2, 3, 4, 5;
  FieldBlock b(v, 3, 2);
  CHECK(b.length() == 6);
  CHECK(b.block_index() == 3);
  CHECK(b.per_node_length() == 3);
  CHECK(b.node_segment(1)(0) == 3.0);
  CHECK_THROWS_AS(b.node_segment(2), std::invalid_argument);
  CHECK_THROWS_AS(FieldBlock(v, 0, 4), std::invalid_argument);
  Eigen::VectorXd bad(2);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS(FieldBlock{bad}, std::invalid_argument);
  CHECK_THROWS_AS(FieldBlock(Eigen::VectorXd()), std::invalid_argument);
}

TEST_CASE("sampling pattern validation and csv round trip") {
  SamplingPattern tau({0, 3, 6, 9}, 12);
  CHECK(tau.size() == 4);
  CHECK(tau.to_csv() == "0,3,6,9");
  CHECK(SamplingPattern::from_csv("0,3,6,9", 12) == tau);
  CHECK_THROWS_AS(SamplingPattern({3, 3}, 10), std::invalid_argument);
  CHECK_THROWS_AS(SamplingPattern({5, 2}, 10), std::invalid_argument);
  CHECK_THROWS_AS(SamplingPattern({0, 10}, 10), std::invalid_argument);
  CHECK_THROWS_AS(SamplingPattern({-1, 2}, 10), std::invalid_argument);
  CHECK_THROWS_AS(SamplingPattern({}, 10), std::invalid_argument);
  CHECK_THROWS_AS(SamplingPattern::from_csv("0,two,4", 10), std::invalid_argument);
}

TEST_CASE("apply_pattern selects exactly the indexed entries") {
  Eigen::VectorXd x(5);
  x << 10, 20, 30, 40, 50;
  SamplingPattern tau({1, 4}, 5);
  const Eigen::VectorXd y = apply_pattern(x, tau);
  REQUIRE(y.size() == 2);
  CHECK(y(0) == 20.0);
  CHECK(y(1) == 50.0);
  CHECK_THROWS_AS(apply_pattern(x, SamplingPattern({0}, 4)), std::invalid_argument);
}

TEST_CASE("select_rows picks the submatrix") {
  Eigen::MatrixXd m(4, 2);
  m << 1, 2, 3, 4, 5, 6, 7, 8;
  const Eigen::MatrixXd sub = select_rows(m, SamplingPattern({0, 2}, 4));
  REQUIRE(sub.rows() == 2);
  CHECK(sub(0, 1) == 2.0);
  CHECK(sub(1, 0) == 5.0);
}

TEST_CASE("add_noise determinism and zero-sigma identity") {
  Eigen::VectorXd y(4);
  y << 1, 2, 3, 4;
  CHECK((add_noise(y, 0.0, 5) - y).norm() == 0.0);
  const Eigen::VectorXd a = add_noise(y, 0.5, 5);
  const Eigen::VectorXd b = add_noise(y, 0.5, 5);
  CHECK((a - b).norm() == 0.0);
  CHECK((a - y).norm() > 0.0);
  CHECK_THROWS_AS(add_noise(y, -1.0, 5), std::invalid_argument);
}

TEST_CASE("rmse hand value") {
  Eigen::VectorXd x(4), z(4);
  x << 1, 2, 3, 4;
  z << 1, 2, 3, 2;
  // single error of 2 over 4 entries: sqrt(4/4) = 1
  CHECK(rmse(x, z) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rmse(x, x) == 0.0);
  Eigen::VectorXd w(3);
  CHECK_THROWS_AS(rmse(x, w), std::invalid_argument);
}

TEST_CASE("signal model validates orthonormality and eigenvalue order") {
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(4, 2);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(4);
  Eigen::VectorXd lam(2);
  lam << 2.0, 1.0;
  CHECK_NOTHROW(SignalModel(basis, mean, lam, 3));
  Eigen::VectorXd bad_lam(2);
  bad_lam << 1.0, 2.0;  // increasing
  CHECK_THROWS_AS(SignalModel(basis, mean, bad_lam, 3), std::invalid_argument);
  Eigen::MatrixXd skew = basis;
  skew(0, 1) = 1.0;  // columns no longer orthogonal
  CHECK_THROWS_AS(SignalModel(skew, mean, lam, 3), std::invalid_argument);
  CHECK_THROWS_AS(SignalModel(basis, Eigen::VectorXd::Zero(3), lam, 3),
                  std::invalid_argument);
}

TEST_CASE("measurement shape checks") {
  SamplingPattern tau({0, 2}, 4);
  Eigen::VectorXd obs(2);
  obs << 1, 2;
  CHECK_NOTHROW(Measurement(obs, tau, 0.1));
  Eigen::VectorXd wrong(3);
  wrong << 1, 2, 3;
  CHECK_THROWS_AS(Measurement(wrong, tau, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(Measurement(obs, tau, -0.1), std::invalid_argument);
}
