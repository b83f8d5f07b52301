#include "dass/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dass/recon.hpp"

namespace dass {

namespace {

void check_budget(const SignalModel& model, int sample_budget) {
  if (sample_budget < 1 || sample_budget > model.field_length())
    throw std::invalid_argument("scheduler: sample budget out of range");
}

// Squared pairwise inner products of the basis rows. Each entry is computed
// by exactly one thread in a fixed scalar order, so the result does not
// depend on the thread count.
Eigen::MatrixXd squared_coherence(const Eigen::MatrixXd& basis, bool parallel) {
  const int n = static_cast<int>(basis.rows());
  Eigen::MatrixXd sq(n, n);
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double dot = basis.row(i).dot(basis.row(j));
      sq(i, j) = dot * dot;
      sq(j, i) = sq(i, j);
    }
  }
  return sq;
}

struct Candidate {
  double value;
  int index;
};

// Row elimination state: row_mass[i] holds the sum of sq(i, j) over the
// surviving set, maintained under removals. The frame potential after
// removing row r changes by -(2 * row_mass[r] - sq(r, r)), so eliminations
// only ever compare the score 2 * row_mass[r] - sq(r, r).
class EliminationState {
 public:
  EliminationState(const Eigen::MatrixXd& sq, bool parallel)
      : sq_(sq), alive_(sq.rows(), 1), row_mass_(sq.rows()), parallel_(parallel) {
    const int n = size();
#pragma omp parallel for schedule(static) if (parallel_)
    for (int i = 0; i < n; ++i) row_mass_[i] = sq_.row(i).sum();
  }

  int size() const { return static_cast<int>(sq_.rows()); }

  double score(int i) const { return 2.0 * row_mass_[i] - sq_(i, i); }

  // Highest-score row (rule minimize_fp) or lowest-score row (argmax_fp);
  // ties resolve to the smallest index under either rule.
  int pick(EliminationRule rule) const {
    const bool want_max = rule == EliminationRule::minimize_fp;
    const int n = size();
    Candidate best{want_max ? -std::numeric_limits<double>::infinity()
                            : std::numeric_limits<double>::infinity(),
                   -1};
#pragma omp parallel if (parallel_)
    {
      Candidate local = best;
#pragma omp for schedule(static) nowait
      for (int i = 0; i < n; ++i) {
        if (!alive_[i]) continue;
        const double s = score(i);
        if (better(local, s, i, want_max)) local = {s, i};
      }
#pragma omp critical
      if (local.index >= 0 && better(best, local.value, local.index, want_max))
        best = local;
    }
    return best.index;
  }

  // Most coherent surviving pair, smallest (i, j) on ties.
  std::pair<int, int> most_coherent_pair() const {
    const int n = size();
    double best_val = -1.0;
    int best_i = -1, best_j = -1;
#pragma omp parallel if (parallel_)
    {
      double loc_val = -1.0;
      int loc_i = -1, loc_j = -1;
#pragma omp for schedule(static) nowait
      for (int i = 0; i < n; ++i) {
        if (!alive_[i]) continue;
        for (int j = i + 1; j < n; ++j) {
          if (!alive_[j]) continue;
          const double v = sq_(i, j);
          if (v > loc_val || (v == loc_val && (i < loc_i || (i == loc_i && j < loc_j)))) {
            loc_val = v;
            loc_i = i;
            loc_j = j;
          }
        }
      }
#pragma omp critical
      if (loc_i >= 0 &&
          (loc_val > best_val ||
           (loc_val == best_val &&
            (loc_i < best_i || (loc_i == best_i && loc_j < best_j))))) {
        best_val = loc_val;
        best_i = loc_i;
        best_j = loc_j;
      }
    }
    return {best_i, best_j};
  }

  void remove(int r) {
    alive_[r] = 0;
    const int n = size();
#pragma omp parallel for schedule(static) if (parallel_)
    for (int j = 0; j < n; ++j)
      if (alive_[j]) row_mass_[j] -= sq_(j, r);
  }

  void remove_pair(int r1, int r2) {
    alive_[r1] = 0;
    alive_[r2] = 0;
    const int n = size();
#pragma omp parallel for schedule(static) if (parallel_)
    for (int j = 0; j < n; ++j)
      if (alive_[j]) row_mass_[j] -= sq_(j, r1) + sq_(j, r2);
  }

  std::vector<int> survivors() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (alive_[i]) out.push_back(i);
    return out;
  }

 private:
  static bool better(const Candidate& cur, double v, int i, bool want_max) {
    if (want_max) {
      if (v > cur.value) return true;
    } else {
      if (v < cur.value) return true;
    }
    return v == cur.value && (cur.index < 0 || i < cur.index);
  }

  const Eigen::MatrixXd& sq_;
  std::vector<char> alive_;
  Eigen::VectorXd row_mass_;
  bool parallel_;
};

double binomial_count(int n, int m) {
  double c = 1.0;
  for (int i = 1; i <= m; ++i) c = c * (n - m + i) / i;
  return c;
}

}  // namespace

double frame_potential(const SignalModel& model, const std::vector<int>& subset) {
  const int n = model.field_length();
  for (int idx : subset)
    if (idx < 0 || idx >= n)
      throw std::invalid_argument("frame_potential: index out of range");
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(subset.size()), model.dimension());
  for (std::size_t i = 0; i < subset.size(); ++i)
    rows.row(static_cast<Eigen::Index>(i)) = model.basis().row(subset[i]);
  return (rows.transpose() * rows).squaredNorm();
}

std::vector<int> greedy_eliminate(const SignalModel& model, int sample_budget,
                                  const GreedyOptions& opts) {
  check_budget(model, sample_budget);
  const int n = model.field_length();
  const Eigen::MatrixXd sq = squared_coherence(model.basis(), opts.parallel);
  EliminationState state(sq, opts.parallel);

  int remaining = n;
  if (sample_budget <= n - 2) {
    const auto [i, j] = state.most_coherent_pair();
    state.remove_pair(i, j);
    remaining -= 2;
  }
  while (remaining > sample_budget) {
    state.remove(state.pick(opts.rule));
    --remaining;
  }
  return state.survivors();
}

std::vector<int> greedy_eliminate_reference(const SignalModel& model,
                                            int sample_budget, EliminationRule rule) {
  check_budget(model, sample_budget);
  const int n = model.field_length();
  std::vector<int> alive(n);
  for (int i = 0; i < n; ++i) alive[i] = i;

  if (sample_budget <= n - 2) {
    double best = -1.0;
    int bi = -1, bj = -1;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const double dot = model.basis().row(a).dot(model.basis().row(b));
        const double v = dot * dot;
        if (v > best) {
          best = v;
          bi = a;
          bj = b;
        }
      }
    alive.erase(std::find(alive.begin(), alive.end(), bj));
    alive.erase(std::find(alive.begin(), alive.end(), bi));
  }

  while (static_cast<int>(alive.size()) > sample_budget) {
    int pick = -1;
    double pick_fp = 0.0;
    for (std::size_t c = 0; c < alive.size(); ++c) {
      std::vector<int> without;
      without.reserve(alive.size() - 1);
      for (std::size_t k = 0; k < alive.size(); ++k)
        if (k != c) without.push_back(alive[k]);
      const double fp = frame_potential(model, without);
      const bool take = pick < 0 || (rule == EliminationRule::minimize_fp
                                         ? fp < pick_fp
                                         : fp > pick_fp);
      if (take) {
        pick = static_cast<int>(c);
        pick_fp = fp;
      }
    }
    alive.erase(alive.begin() + pick);
  }
  return alive;
}

ScheduleDecision greedy_schedule(const SignalModel& model, int sample_budget,
                                 double epsilon_a, double sigma,
                                 const GreedyOptions& opts) {
  check_budget(model, sample_budget);
  if (epsilon_a < 0.0) throw std::invalid_argument("greedy_schedule: negative epsilon_a");
  if (sigma < 0.0) throw std::invalid_argument("greedy_schedule: negative sigma");
  if (model.sample_count() < 2 || model.dimension() < 1)
    throw std::runtime_error("greedy_schedule: model not ready");

  const int n = model.field_length();
  SamplingPattern greedy(greedy_eliminate(model, sample_budget, opts), n);
  SamplingPattern uniform =
      baseline_pattern(BaselineKind::uniform, n, sample_budget);

  const double bound_greedy = error_bound(model, greedy, epsilon_a, sigma);
  const double bound_uniform = error_bound(model, uniform, epsilon_a, sigma);
  if (bound_greedy < bound_uniform) {
    const double theta = theta_cost(model, greedy);
    return ScheduleDecision{std::move(greedy), PatternSource::greedy, theta,
                            bound_greedy};
  }
  const double theta = theta_cost(model, uniform);
  return ScheduleDecision{std::move(uniform), PatternSource::uniform_fallback, theta,
                          bound_uniform};
}

SamplingPattern baseline_pattern(BaselineKind kind, int block_length,
                                 int sample_budget, std::uint64_t seed) {
  if (block_length < 1)
    throw std::invalid_argument("baseline_pattern: block length must be >= 1");
  if (sample_budget < 1 || sample_budget > block_length)
    throw std::invalid_argument("baseline_pattern: sample budget out of range");
  std::vector<int> idx;
  idx.reserve(sample_budget);
  if (kind == BaselineKind::uniform) {
    for (int j = 0; j < sample_budget; ++j)
      idx.push_back(static_cast<int>(
          (static_cast<long>(j) * block_length) / sample_budget));
  } else {
    Rng rng(seed);
    std::vector<char> taken(block_length, 0);
    while (static_cast<int>(idx.size()) < sample_budget) {
      const int draw = rng.uniform_int(block_length);
      if (!taken[draw]) {
        taken[draw] = 1;
        idx.push_back(draw);
      }
    }
    std::sort(idx.begin(), idx.end());
  }
  return SamplingPattern(std::move(idx), block_length);
}

SamplingPattern exhaustive_oracle(const SignalModel& model, int sample_budget) {
  check_budget(model, sample_budget);
  const int n = model.field_length();
  const int m = sample_budget;
  if (binomial_count(n, m) > 1e6)
    throw std::invalid_argument(
        "exhaustive_oracle: more than 1e6 patterns; shrink the instance");

  std::vector<int> comb(m);
  for (int i = 0; i < m; ++i) comb[i] = i;
  std::vector<int> best = comb;
  double best_theta = std::numeric_limits<double>::infinity();
  bool first = true;
  while (true) {
    const double theta = theta_cost(model, SamplingPattern(comb, n));
    if (first || theta < best_theta) {
      best_theta = theta;
      best = comb;
      first = false;
    }
    // next combination in lexicographic order
    int pos = m - 1;
    while (pos >= 0 && comb[pos] == n - m + pos) --pos;
    if (pos < 0) break;
    ++comb[pos];
    for (int i = pos + 1; i < m; ++i) comb[i] = comb[i - 1] + 1;
  }
  return SamplingPattern(std::move(best), n);
}

}  // namespace dass
