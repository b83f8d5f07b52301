// Timing comparison for the greedy elimination kernel: OpenMP-parallel vs the
// same kernel pinned to one thread vs the from-scratch reference. Also checks
// that all of them pick identical patterns.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "dass/core.hpp"
#include "dass/scheduler.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

dass::SignalModel random_model(int n, int k, std::uint64_t seed) {
  dass::Rng rng(seed);
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.gaussian();
  Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  Eigen::VectorXd lambda(k);
  for (int i = 0; i < k; ++i) lambda[i] = 1.0 / (i + 1);
  return dass::SignalModel(q.leftCols(k), Eigen::VectorXd::Zero(n), lambda, 1000);
}

template <typename F>
double best_of(int repeats, F&& run) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = Clock::now();
    run();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;

  std::vector<int> sizes = quick ? std::vector<int>{48, 96}
                                 : std::vector<int>{48, 96, 192, 384};
  const int repeats = quick ? 1 : 3;

  std::printf("%6s %6s %6s %12s %12s %12s %8s\n", "N", "K", "M", "parallel_s",
              "serial_s", "reference_s", "match");
  bool all_match = true;
  for (int n : sizes) {
    const int k = n / 4;
    const int m = n / 8;
    const dass::SignalModel model = random_model(n, k, 7u);

    dass::GreedyOptions par;
    par.parallel = true;
    dass::GreedyOptions ser;
    ser.parallel = false;

    std::vector<int> pattern_par, pattern_ser, pattern_ref;
    const double t_par =
        best_of(repeats, [&] { pattern_par = dass::greedy_eliminate(model, m, par); });
    const double t_ser =
        best_of(repeats, [&] { pattern_ser = dass::greedy_eliminate(model, m, ser); });

    const bool run_reference = n <= 96;
    double t_ref = 0.0;
    if (run_reference)
      t_ref = best_of(repeats, [&] {
        pattern_ref = dass::greedy_eliminate_reference(model, m);
      });

    bool match = pattern_par == pattern_ser;
    if (run_reference) match = match && pattern_par == pattern_ref;
    all_match = all_match && match;

    char ref_text[32];
    if (run_reference)
      std::snprintf(ref_text, sizeof ref_text, "%12.6f", t_ref);
    else
      std::snprintf(ref_text, sizeof ref_text, "%12s", "-");
    std::printf("%6d %6d %6d %12.6f %12.6f %s %8s\n", n, k, m, t_par, t_ser,
                ref_text, match ? "yes" : "NO");
  }
  if (!all_match) {
    std::printf("kernel/reference mismatch\n");
    return 1;
  }
  return 0;
}
