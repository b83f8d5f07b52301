#pragma once

#include <cstdint>
#include <vector>

#include "dass/core.hpp"

namespace dass {

enum class PatternSource { greedy, uniform_fallback, random, uniform };
enum class BaselineKind { uniform, random };

// Which row gets eliminated each round. minimize_fp drops the row whose
// removal leaves the smallest frame potential (the default); argmax_fp keeps
// the opposite choice available for comparison runs.
enum class EliminationRule { minimize_fp, argmax_fp };

struct GreedyOptions {
  EliminationRule rule = EliminationRule::minimize_fp;
  bool parallel = true;
};

struct ScheduleDecision {
  SamplingPattern pattern;
  PatternSource source;
  double theta;
  double bound;
};

// Frame potential of the selected basis rows: sum over (i, j) in S x S of
// the squared row inner products, equivalently the squared Frobenius norm of
// the selected rows' Gram matrix.
double frame_potential(const SignalModel& model, const std::vector<int>& subset);

// Greedy row elimination from the full index set down to sample_budget
// survivors: first drops the most coherent pair, then repeatedly the row
// chosen by the elimination rule, with score bookkeeping updated in place.
// Returns the surviving indices in increasing order.
std::vector<int> greedy_eliminate(const SignalModel& model, int sample_budget,
                                  const GreedyOptions& opts = {});

// Single-threaded reference for the kernel above. Recomputes the frame
// potential of every candidate subset from scratch each round; slow but
// directly mirrors the definition. Used to validate greedy_eliminate.
std::vector<int> greedy_eliminate_reference(const SignalModel& model,
                                            int sample_budget,
                                            EliminationRule rule = EliminationRule::minimize_fp);

// Full scheduling step: run the greedy elimination, then keep its pattern
// only if its worst-case error bound beats the uniform pattern's (ties go to
// uniform). Requires a model with at least 2 absorbed blocks and >= 1
// dimension.
ScheduleDecision greedy_schedule(const SignalModel& model, int sample_budget,
                                 double epsilon_a, double sigma,
                                 const GreedyOptions& opts = {});

// uniform: indices floor(j * N / M); random: M distinct seeded draws, sorted.
SamplingPattern baseline_pattern(BaselineKind kind, int block_length,
                                 int sample_budget, std::uint64_t seed = 0);

// Exact minimizer of theta_cost over all patterns of the given size,
// first-in-lexicographic-order on ties. Refuses instances with more than
// 1e6 combinations.
SamplingPattern exhaustive_oracle(const SignalModel& model, int sample_budget);

}  // namespace dass
