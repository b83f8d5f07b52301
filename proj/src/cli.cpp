#include "dass/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dass/dataset.hpp"
#include "dass/model.hpp"
#include "dass/report.hpp"
#include "dass/simulator.hpp"

namespace dass {

namespace {

// "lo:step:hi" (inclusive) or a comma-separated list.
std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double lo, step, hi;
    char c1, c2;
    std::istringstream in(text);
    if (!(in >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':' ||
        !(in >> std::ws).eof())
      throw std::invalid_argument("bad range '" + text + "', expected lo:step:hi");
    if (!(step > 0.0)) throw std::invalid_argument("range step must be positive");
    if (hi < lo) throw std::invalid_argument("range end below start");
    const double eps = 1e-9 * std::max(1.0, std::abs(hi));
    for (int i = 0;; ++i) {
      const double v = lo + i * step;
      if (v > hi + eps) break;
      out.push_back(v);
    }
  } else {
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty()) continue;
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size())
        throw std::invalid_argument("bad number '" + item + "' in list");
    }
    if (out.empty()) throw std::invalid_argument("empty value list '" + text + "'");
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (double v : parse_value_list(text)) {
    if (v < 0 || v != std::floor(v))
      throw std::invalid_argument("seeds must be non-negative integers");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  if (out.empty()) throw std::invalid_argument("empty name list");
  return out;
}

struct DataOptions {
  std::string data_spec;  // "synth:<profile>", "csv:<path>" or a bare path
  std::string input;
  std::string profile;
  int blocks = 0;
  int block_length = 48;
  int nodes = 1;
  std::uint64_t data_seed = 1;
  int samples_per_block = 144;
  SynthOptions synth;
};

void add_data_options(CLI::App* cmd, DataOptions& d) {
  cmd->add_option("--data", d.data_spec,
                  "data source: synth:<profile>, csv:<path>, or a CSV path");
  cmd->add_option("--input", d.input, "CSV dataset, one column per node");
  cmd->add_option("--profile", d.profile,
                  "synthetic data profile: diurnal_smooth, diurnal_spiky, "
                  "multi_node_correlated");
  cmd->add_option("--blocks", d.blocks, "blocks to generate / run");
  cmd->add_option("--block-length", d.block_length, "per-node samples per block")
      ->capture_default_str();
  cmd->add_option("--nodes", d.nodes, "node count for synthetic data")
      ->capture_default_str();
  cmd->add_option("--data-seed", d.data_seed, "seed for the data generator")
      ->capture_default_str();
  cmd->add_option("--samples-per-block", d.samples_per_block,
                  "rows per block when reading --input")
      ->capture_default_str();
  cmd->add_option("--decorrelation-distance", d.synth.decorrelation_distance,
                  "multi_node_correlated: node distance with zero correlation")
      ->capture_default_str();
  cmd->add_option("--shared-fraction", d.synth.shared_fraction,
                  "multi_node_correlated: network-wide component fraction")
      ->capture_default_str();
  cmd->add_option("--residual-scale", d.synth.residual_scale,
                  "multi_node_correlated: independent residual scale")
      ->capture_default_str();
}

std::vector<FieldBlock> load_blocks(DataOptions d) {
  if (!d.data_spec.empty()) {
    if (!d.input.empty() || !d.profile.empty())
      throw std::invalid_argument("--data conflicts with --input/--profile");
    if (d.data_spec.rfind("synth:", 0) == 0)
      d.profile = d.data_spec.substr(6);
    else if (d.data_spec.rfind("csv:", 0) == 0)
      d.input = d.data_spec.substr(4);
    else
      d.input = d.data_spec;
  }
  if (!d.input.empty() && !d.profile.empty())
    throw std::invalid_argument("give either --input or --profile, not both");
  if (!d.input.empty())
    return ingest_csv(d.input, d.samples_per_block).to_blocks();
  if (d.profile.empty())
    throw std::invalid_argument("no data source: give --input or --profile");
  if (d.blocks < 1)
    throw std::invalid_argument("synthetic data needs --blocks >= 1");
  return generate_synthetic(profile_from_name(d.profile), d.blocks, d.block_length,
                            d.nodes, d.data_seed, d.synth);
}

struct RunOptions {
  std::string method = "DASS";
  double gamma = 0.1;
  int budget = 0;  // 0 = derive from gamma
  std::optional<double> snr_db;
  std::optional<double> sigma;
  double snr_error_db = 0.0;
  std::uint64_t seed = 0;
  int dimension = 0;
  std::string learner = "incremental";
  std::string variant = "rescaled";
  int buffer_length = 30;
  std::string rule = "minimize_fp";
  bool serial = false;
  int cs_dimension = 0;
  int run_blocks = 0;  // 0 = all loaded blocks
};

void add_run_options(CLI::App* cmd, RunOptions& r, bool single_run) {
  if (single_run)
    cmd->add_option("--method", r.method,
                    "DASS, OLS_uniform, OLS_random, CS or CSN")
        ->capture_default_str();
  if (single_run)
    cmd->add_option("--gamma", r.gamma, "sampled fraction of each block")
        ->capture_default_str();
  cmd->add_option("--budget", r.budget, "samples per block (overrides --gamma)");
  if (single_run)
    cmd->add_option("--snr,--snr-db", r.snr_db,
                    "target SNR in dB (noise sized from signal power)");
  cmd->add_option("--sigma", r.sigma, "fixed noise standard deviation");
  cmd->add_option("--snr-error", r.snr_error_db,
                  "noise-estimation error in dB fed to the scheduler and CSN")
      ->capture_default_str();
  if (single_run)
    cmd->add_option("--seed", r.seed, "run seed (noise and random patterns)")
        ->capture_default_str();
  cmd->add_option("--dimension", r.dimension, "model dimension (0 = pick from data)")
      ->capture_default_str();
  cmd->add_option("--learner", r.learner, "incremental or buffer")
      ->capture_default_str();
  cmd->add_option("--variant", r.variant,
                  "incremental eigenvalue weighting: rescaled or as_printed")
      ->capture_default_str();
  cmd->add_option("--buffer-length", r.buffer_length, "effective history length")
      ->capture_default_str();
  cmd->add_option("--rule", r.rule, "greedy elimination rule: minimize_fp or argmax_fp")
      ->capture_default_str();
  cmd->add_flag("--serial", r.serial, "single-threaded scheduling kernel");
  cmd->add_option("--cs-dimension", r.cs_dimension,
                  "dictionary dimension for CS/CSN (0 = sample budget)")
      ->capture_default_str();
  cmd->add_option("--run-blocks", r.run_blocks,
                  "simulate only this many leading blocks (0 = all)")
      ->capture_default_str();
}

ExperimentConfig make_config(const RunOptions& r) {
  ExperimentConfig cfg;
  cfg.method = method_from_name(r.method);
  cfg.gamma = r.gamma;
  if (r.budget > 0) cfg.sample_budget = r.budget;
  cfg.snr_db = r.snr_db;
  cfg.sigma = r.sigma;
  cfg.snr_estimation_error_db = r.snr_error_db;
  cfg.blocks = r.run_blocks;
  cfg.seed = r.seed;
  cfg.learner.dimension = r.dimension;
  cfg.learner.buffer_length = r.buffer_length;
  if (r.learner == "incremental")
    cfg.learner.kind = LearnerKind::incremental;
  else if (r.learner == "buffer")
    cfg.learner.kind = LearnerKind::buffer;
  else
    throw std::invalid_argument("unknown learner '" + r.learner + "'");
  if (r.variant == "rescaled")
    cfg.learner.variant = IncrementalVariant::rescaled;
  else if (r.variant == "as_printed")
    cfg.learner.variant = IncrementalVariant::as_printed;
  else
    throw std::invalid_argument("unknown variant '" + r.variant + "'");
  if (r.rule == "minimize_fp")
    cfg.greedy.rule = EliminationRule::minimize_fp;
  else if (r.rule == "argmax_fp")
    cfg.greedy.rule = EliminationRule::argmax_fp;
  else
    throw std::invalid_argument("unknown elimination rule '" + r.rule + "'");
  cfg.greedy.parallel = !r.serial;
  cfg.cs_dictionary_dimension = r.cs_dimension;
  return cfg;
}

class OutputFile {
 public:
  explicit OutputFile(const std::string& path) : path_(path) {
    if (path_ != "-") {
      file_.open(path_);
      if (!file_) throw std::runtime_error("cannot open '" + path_ + "' for writing");
    }
  }
  std::ostream& stream() { return path_ == "-" ? std::cout : file_; }

 private:
  std::string path_;
  std::ofstream file_;
};

int run_simulate(const DataOptions& data_opts, const RunOptions& run_opts,
                 const std::string& out_path, const std::string& summary_path,
                 const std::string& model_path) {
  const std::vector<FieldBlock> blocks = load_blocks(data_opts);
  const ExperimentConfig cfg = make_config(run_opts);
  std::optional<ModelSnapshot> final_model;
  const ExperimentReport report =
      run_experiment(blocks, cfg, model_path.empty() ? nullptr : &final_model);
  {
    OutputFile out(out_path);
    write_report(report, out.stream());
  }
  if (!summary_path.empty()) {
    OutputFile out(summary_path);
    write_summary(report, out.stream());
  }
  if (!model_path.empty()) {
    if (!final_model)
      throw std::runtime_error("model never became ready; nothing to save");
    std::ofstream out(model_path);
    if (!out) throw std::runtime_error("cannot open '" + model_path + "' for writing");
    save_model(final_model->model, final_model->residual_energy, out);
  }
  std::cerr << "simulate: " << report.rows.size() << " recorded blocks, mean rmse "
            << format_sci(report.mean_rmse) << ", wall "
            << format_sci(report.wall_seconds) << " s\n";
  return 0;
}

int run_sweep(const DataOptions& data_opts, const RunOptions& run_opts,
              const std::string& methods_text, const std::string& gammas_text,
              const std::string& snrs_text, const std::string& seeds_text,
              const std::string& out_path) {
  const std::vector<FieldBlock> blocks = load_blocks(data_opts);
  const std::vector<std::string> methods = split_names(methods_text);
  const std::vector<double> gammas = parse_value_list(gammas_text);
  const std::vector<std::uint64_t> seeds = parse_seed_list(seeds_text);
  std::vector<std::optional<double>> snrs;
  if (run_opts.sigma) {
    if (!snrs_text.empty())
      throw std::invalid_argument("--sigma conflicts with an SNR sweep axis");
    snrs.push_back(std::nullopt);  // fixed sigma for every run
  } else {
    for (double s : parse_value_list(snrs_text.empty() ? "30" : snrs_text))
      snrs.push_back(s);
  }

  std::vector<ExperimentConfig> configs;
  for (double g : gammas)
    for (const auto& snr : snrs)
      for (const auto& m : methods)
        for (std::uint64_t s : seeds) {
          RunOptions r = run_opts;
          r.method = m;
          r.gamma = g;
          r.snr_db = snr;
          r.seed = s;
          r.budget = 0;  // sweeps always size the budget from gamma
          configs.push_back(make_config(r));
        }

  const int count = static_cast<int>(configs.size());
  std::vector<std::optional<ExperimentReport>> results(count);
  std::vector<std::string> errors(count);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      results[i] = run_experiment(blocks, configs[i]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (int i = 0; i < count; ++i)
    if (!errors[i].empty())
      throw std::runtime_error("sweep run " + std::to_string(i) + " (method " +
                               method_name(configs[i].method) + ", gamma " +
                               format_full(configs[i].gamma) + ", seed " +
                               std::to_string(configs[i].seed) + ") failed: " +
                               errors[i]);

  // Same gamma must mean the same per-block budget for every method/seed,
  // otherwise the rows are not comparable.
  const int per_gamma = static_cast<int>(snrs.size() * methods.size() * seeds.size());
  for (int i = 0; i < count; ++i)
    if (results[i]->sample_budget != results[(i / per_gamma) * per_gamma]->sample_budget)
      throw std::logic_error("sweep: sample budgets diverged within one gamma");

  std::vector<ExperimentReport> table;
  table.reserve(count);
  for (auto& r : results) table.push_back(std::move(*r));
  OutputFile out(out_path);
  write_summary_table(table, out.stream());
  std::cerr << "sweep: " << count << " runs\n";
  return 0;
}

int run_schedule(const std::string& model_path, int budget,
                 std::optional<double> epsilon_a, double sigma,
                 const std::string& rule, bool serial, const std::string& out_path) {
  std::ifstream in(model_path);
  if (!in) throw std::runtime_error("cannot open model file '" + model_path + "'");
  const ModelSnapshot snapshot = load_model(in);
  GreedyOptions opts;
  if (rule == "minimize_fp")
    opts.rule = EliminationRule::minimize_fp;
  else if (rule == "argmax_fp")
    opts.rule = EliminationRule::argmax_fp;
  else
    throw std::invalid_argument("unknown elimination rule '" + rule + "'");
  opts.parallel = !serial;
  const double eps = epsilon_a ? *epsilon_a : std::sqrt(snapshot.residual_energy);
  const ScheduleDecision decision =
      greedy_schedule(snapshot.model, budget, eps, sigma, opts);
  OutputFile out(out_path);
  write_pattern(decision.pattern, out.stream());
  // Trailing comments keep the output traceable without disturbing parsers,
  // which stop at the index line.
  out.stream() << "# model=" << model_path << " budget=" << budget
               << " epsilon_a=" << format_full(eps) << " sigma=" << format_full(sigma)
               << " rule=" << rule << "\n"
               << "# source=" << source_name(decision.source)
               << " theta=" << format_sci(decision.theta)
               << " bound=" << format_sci(decision.bound) << "\n";
  std::cerr << "schedule: source=" << source_name(decision.source)
            << " theta=" << format_sci(decision.theta)
            << " bound=" << format_sci(decision.bound) << "\n";
  return 0;
}

int run_energy(double gamma, const std::string& cost_text,
               const std::string& compression_text, double overhead,
               const std::string& out_path) {
  const EnergyGrid grid = energy_saving_grid(gamma, parse_value_list(cost_text),
                                             parse_value_list(compression_text),
                                             overhead);
  OutputFile out(out_path);
  write_energy_grid(grid, out.stream());
  return 0;
}

int run_synth(const DataOptions& d, const std::string& out_path) {
  if (d.profile.empty()) throw std::invalid_argument("synth needs --profile");
  if (d.blocks < 1) throw std::invalid_argument("synth needs --blocks >= 1");
  const std::vector<FieldBlock> blocks = generate_synthetic(
      profile_from_name(d.profile), d.blocks, d.block_length, d.nodes, d.data_seed,
      d.synth);
  Dataset ds;
  ds.name = d.profile;
  ds.samples_per_block = d.block_length;
  ds.values.resize(static_cast<Eigen::Index>(d.blocks) * d.block_length, d.nodes);
  for (int j = 0; j < d.nodes; ++j) {
    ds.node_ids.push_back("n" + std::to_string(j));
    ds.node_positions.push_back(std::nullopt);
    for (int b = 0; b < d.blocks; ++b)
      ds.values.block(static_cast<Eigen::Index>(b) * d.block_length, j,
                      d.block_length, 1) = blocks[b].node_segment(j);
  }
  write_csv(ds, out_path);
  std::cerr << "synth: wrote " << ds.values.rows() << " rows x " << d.nodes
            << " nodes to " << out_path << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"adaptive sparse sensing simulator"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML file (flags override)");

  DataOptions sim_data;
  RunOptions sim_run;
  std::string sim_out = "-", sim_summary, sim_model;
  auto* simulate = app.add_subcommand("simulate", "run one sensing experiment");
  add_data_options(simulate, sim_data);
  add_run_options(simulate, sim_run, true);
  simulate->add_option("--out", sim_out, "per-block report path ('-' = stdout)")
      ->capture_default_str();
  simulate->add_option("--summary-out", sim_summary, "also write a one-row summary here");
  simulate->add_option("--save-model", sim_model, "save the final learned model here");

  DataOptions sweep_data;
  RunOptions sweep_run;
  std::string sweep_methods = "DASS", sweep_gammas = "0.1", sweep_snrs, sweep_seeds = "0";
  std::string sweep_out = "-";
  auto* sweep =
      app.add_subcommand("sweep", "grid of runs over methods x gammas x SNRs x seeds");
  add_data_options(sweep, sweep_data);
  add_run_options(sweep, sweep_run, false);
  sweep->add_option("--methods", sweep_methods, "comma-separated method list")
      ->capture_default_str();
  sweep->add_option("--gammas", sweep_gammas, "gamma list or lo:step:hi range")
      ->capture_default_str();
  sweep->add_option("--snrs,--snr-db", sweep_snrs,
                    "SNR (dB) list or lo:step:hi range (default 30; see --sigma)");
  sweep->add_option("--seeds", sweep_seeds, "seed list or lo:step:hi range")
      ->capture_default_str();
  sweep->add_option("--out", sweep_out, "summary table path ('-' = stdout)")
      ->capture_default_str();

  std::string sched_model, sched_rule = "minimize_fp", sched_out = "-";
  int sched_budget = 0;
  std::optional<double> sched_eps;
  double sched_sigma = 0.0;
  bool sched_serial = false;
  auto* schedule = app.add_subcommand("schedule", "pick a pattern from a saved model");
  schedule->add_option("--model", sched_model, "model file from simulate --save-model")
      ->required();
  schedule->add_option("--budget", sched_budget, "samples per block")->required();
  schedule->add_option("--epsilon-a", sched_eps,
                       "model error scale (default: from the saved model)");
  schedule->add_option("--sigma", sched_sigma, "noise level for the bound")
      ->capture_default_str();
  schedule->add_option("--rule", sched_rule, "minimize_fp or argmax_fp")
      ->capture_default_str();
  schedule->add_flag("--serial", sched_serial, "single-threaded kernel");
  schedule->add_option("--out", sched_out, "pattern file path ('-' = stdout)")
      ->capture_default_str();

  double energy_gamma = 0.1, energy_overhead = 0.0;
  std::string energy_costs = "0.05:0.05:1.0", energy_comp = "1,2,5,10,20";
  std::string energy_out = "-";
  auto* energy = app.add_subcommand("energy", "energy-saving grid with zero crossings");
  energy->add_option("--gamma", energy_gamma, "sampled fraction")->capture_default_str();
  energy->add_option("--cost-ratios,--rs", energy_costs,
                     "sensing/radio cost ratios, list or lo:step:hi")
      ->capture_default_str();
  energy->add_option("--compression-ratios,--rc", energy_comp,
                     "radio compression ratios, list or lo:step:hi")
      ->capture_default_str();
  energy->add_option("--overhead", energy_overhead,
                     "extra radio units per sample charged to both pipelines")
      ->capture_default_str();
  energy->add_option("--out", energy_out, "grid path ('-' = stdout)")
      ->capture_default_str();

  DataOptions synth_data;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "write a synthetic dataset as CSV");
  add_data_options(synth, synth_data);
  synth->add_option("--out", synth_out, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (simulate->parsed())
      return run_simulate(sim_data, sim_run, sim_out, sim_summary, sim_model);
    if (sweep->parsed())
      return run_sweep(sweep_data, sweep_run, sweep_methods, sweep_gammas,
                       sweep_snrs, sweep_seeds, sweep_out);
    if (schedule->parsed())
      return run_schedule(sched_model, sched_budget, sched_eps, sched_sigma,
                          sched_rule, sched_serial, sched_out);
    if (energy->parsed())
      return run_energy(energy_gamma, energy_costs, energy_comp, energy_overhead,
                        energy_out);
    if (synth->parsed()) return run_synth(synth_data, synth_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}

}  // namespace dass
