#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dass/core.hpp"
#include "dass/cs.hpp"
#include "dass/model.hpp"
#include "dass/scheduler.hpp"

namespace dass {

// Sensing strategies compared by the simulator. DASS senses with the
// adaptively scheduled pattern and reconstructs by least squares; the OLS
// baselines use fixed uniform or per-block random patterns; CS and CSN
// reconstruct by l1, without and with a noise budget.
enum class Method { DASS, OLS_uniform, OLS_random, CS, CSN };

enum class SynthProfile { diurnal_smooth, diurnal_spiky, multi_node_correlated };

struct SynthOptions {
  // Node-index distance at which cross-node correlation reaches zero
  // (multi_node_correlated only). Must be odd; 1 means independent nodes.
  int decorrelation_distance = 3;
  // Fraction of each node's signal drawn from one network-wide component;
  // 1.0 makes all nodes identical.
  double shared_fraction = 0.0;
  // Scale of the per-node independent residual, relative to the structured
  // part.
  double residual_scale = 0.05;
};

std::vector<FieldBlock> generate_synthetic(SynthProfile profile, int blocks,
                                           int per_node_length, int node_count,
                                           std::uint64_t seed,
                                           const SynthOptions& opts = {});

struct ExperimentConfig {
  Method method = Method::DASS;
  double gamma = 0.1;
  // Explicit per-block sample count; overrides floor(N * gamma) when set.
  std::optional<int> sample_budget;
  // Exactly one of the two noise specifications must be set.
  std::optional<double> snr_db;
  std::optional<double> sigma;
  // Added to the true SNR before deriving the noise level the algorithms
  // are told about; negative means they believe the data is noisier.
  double snr_estimation_error_db = 0.0;
  int blocks = 0;  // 0 = consume every supplied block
  std::uint64_t seed = 0;
  LearnerConfig learner;
  GreedyOptions greedy;
  // For CS/CSN: xi is derived from the estimated noise level; the remaining
  // solver knobs are taken from here.
  L1Config l1;
  int cs_dictionary_dimension = 0;  // 0 = use the sample budget
};

struct BlockRecord {
  int block;
  double rmse;
  double theta;
  double bound;
  PatternSource source;
  int samples;
  double sigma_true;
  bool fallback;  // reconstruction failed and the model mean was used
};

struct ExperimentReport {
  ExperimentConfig config;
  int field_length = 0;
  int node_count = 1;
  int sample_budget = 0;
  int dimension = 0;  // resolved model (or dictionary) dimension
  int warmup_blocks = 0;
  int total_blocks = 0;
  std::vector<BlockRecord> rows;  // post-warmup blocks only
  double mean_rmse = 0.0;
  double mean_theta = 0.0;
  double mean_bound = 0.0;
  long total_samples = 0;  // sensed over all blocks, warmup included
  double sensing_joules = 0.0;
  double radio_joules = 0.0;
  int fallback_blocks = 0;
  double wall_seconds = 0.0;  // measured, never serialized
};

// Runs the sense -> reconstruct -> learn -> schedule loop over the supplied
// blocks. Warmup blocks (enough to fill the model dimension, at least 5, at
// least 10 when the dimension is chosen from the data) sense uniformly and
// are excluded from the per-block records and the aggregate means.
// final_model, when non-null, receives the learner state at the end of the
// run (left empty if the learner never became ready).
ExperimentReport run_experiment(const std::vector<FieldBlock>& data,
                                const ExperimentConfig& cfg,
                                std::optional<ModelSnapshot>* final_model = nullptr);

// For each leading node count n = 1..node_count, the smallest joint sample
// budget reaching target_rmse divided by the sum of the smallest per-node
// budgets doing the same independently. Model dimension is always chosen
// from the data; budgets are found by integer bisection (granularity one
// sample).
std::vector<double> joint_vs_independent_ratio(const std::vector<FieldBlock>& data,
                                               const ExperimentConfig& cfg,
                                               double target_rmse);

const char* method_name(Method m);
Method method_from_name(const std::string& name);
const char* source_name(PatternSource s);
const char* profile_name(SynthProfile p);
SynthProfile profile_from_name(const std::string& name);

}  // namespace dass
