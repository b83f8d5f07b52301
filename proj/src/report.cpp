#include "dass/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dass {

namespace {

std::string printf_double(const char* spec, double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

const char* learner_kind_name(LearnerKind k) {
  return k == LearnerKind::incremental ? "incremental" : "buffer";
}

const char* variant_name(IncrementalVariant v) {
  return v == IncrementalVariant::rescaled ? "rescaled" : "as_printed";
}

const char* rule_name(EliminationRule r) {
  return r == EliminationRule::minimize_fp ? "minimize_fp" : "argmax_fp";
}

void write_noise_spec(const ExperimentReport& r, std::ostream& out) {
  if (r.config.snr_db)
    out << "# snr_db=" << format_full(*r.config.snr_db) << "\n";
  else
    out << "# sigma=" << format_full(r.config.sigma.value_or(0.0)) << "\n";
  out << "# snr_estimation_error_db=" << format_full(r.config.snr_estimation_error_db)
      << "\n";
}

void write_config_preamble(const ExperimentReport& r, std::ostream& out) {
  out << "# method=" << method_name(r.config.method) << "\n"
      << "# field_length=" << r.field_length << "\n"
      << "# node_count=" << r.node_count << "\n"
      << "# blocks=" << r.total_blocks << "\n"
      << "# warmup_blocks=" << r.warmup_blocks << "\n"
      << "# sample_budget=" << r.sample_budget << "\n"
      << "# gamma="
      << format_full(static_cast<double>(r.sample_budget) / r.field_length) << "\n"
      << "# dimension=" << r.dimension << "\n"
      << "# seed=" << r.config.seed << "\n";
  write_noise_spec(r, out);
  out << "# learner=" << learner_kind_name(r.config.learner.kind)
      << " variant=" << variant_name(r.config.learner.variant)
      << " buffer_length=" << r.config.learner.buffer_length << "\n"
      << "# elimination_rule=" << rule_name(r.config.greedy.rule) << "\n";
}

void write_summary_header(std::ostream& out) {
  out << "# dass-summary 1\n"
      << "# columns: method field_length node_count blocks warmup sample_budget "
         "gamma dimension seed noise_kind noise_value snr_estimation_error_db "
         "mean_rmse mean_theta mean_bound fallback_blocks total_samples "
         "sensing_joules radio_joules\n";
}

void write_summary_row(const ExperimentReport& r, std::ostream& out) {
  out << method_name(r.config.method) << ' ' << r.field_length << ' ' << r.node_count
      << ' ' << r.total_blocks << ' ' << r.warmup_blocks << ' ' << r.sample_budget
      << ' ' << format_full(static_cast<double>(r.sample_budget) / r.field_length)
      << ' ' << r.dimension << ' ' << r.config.seed << ' ';
  if (r.config.snr_db)
    out << "snr " << format_full(*r.config.snr_db);
  else
    out << "sigma " << format_full(r.config.sigma.value_or(0.0));
  out << ' ' << format_full(r.config.snr_estimation_error_db) << ' '
      << format_sci(r.mean_rmse) << ' ' << format_sci(r.mean_theta) << ' '
      << format_sci(r.mean_bound) << ' ' << r.fallback_blocks << ' '
      << r.total_samples << ' ' << format_sci(r.sensing_joules) << ' '
      << format_sci(r.radio_joules) << "\n";
}

}  // namespace

std::string format_full(double v) { return printf_double("%.17g", v); }
std::string format_sci(double v) { return printf_double("%.9e", v); }

void write_report(const ExperimentReport& r, std::ostream& out) {
  out << "# dass-report 1\n";
  write_config_preamble(r, out);
  out << "# mean_rmse=" << format_sci(r.mean_rmse)
      << " mean_theta=" << format_sci(r.mean_theta)
      << " mean_bound=" << format_sci(r.mean_bound) << "\n"
      << "# total_samples=" << r.total_samples
      << " sensing_joules=" << format_sci(r.sensing_joules)
      << " radio_joules=" << format_sci(r.radio_joules) << "\n"
      << "# fallback_blocks=" << r.fallback_blocks << "\n"
      << "# columns: block rmse theta bound source samples sigma_true fallback\n";
  for (const auto& row : r.rows) {
    out << row.block << ' ' << format_sci(row.rmse) << ' ' << format_sci(row.theta)
        << ' ' << format_sci(row.bound) << ' ' << source_name(row.source) << ' '
        << row.samples << ' ' << format_sci(row.sigma_true) << ' '
        << (row.fallback ? 1 : 0) << "\n";
  }
}

void write_summary(const ExperimentReport& r, std::ostream& out) {
  write_summary_header(out);
  write_summary_row(r, out);
}

void write_summary_table(const std::vector<ExperimentReport>& runs, std::ostream& out) {
  write_summary_header(out);
  for (const auto& r : runs) write_summary_row(r, out);
}

void write_energy_grid(const EnergyGrid& grid, std::ostream& out) {
  out << "# dass-energy 1\n"
      << "# gamma=" << format_full(grid.gamma) << "\n"
      << "# overhead=" << format_full(grid.overhead) << "\n"
      << "# cost_ratios:";
  for (double c : grid.cost_ratios) out << ' ' << format_full(c);
  out << "\n# columns: compression_ratio zero_crossing saving_at_each_cost_ratio\n";
  for (std::size_t j = 0; j < grid.compression_ratios.size(); ++j) {
    out << format_full(grid.compression_ratios[j]) << ' '
        << format_full(grid.zero_crossings[j]);
    for (std::size_t i = 0; i < grid.cost_ratios.size(); ++i)
      out << ' ' << format_sci(grid.saving[i][j]);
    out << "\n";
  }
}

void write_pattern(const SamplingPattern& p, std::ostream& out) {
  out << "# dass-pattern 1\n"
      << "# block_length=" << p.block_length() << "\n"
      << p.to_csv() << "\n";
}

SamplingPattern read_pattern(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "# dass-pattern 1")
    throw std::runtime_error("read_pattern: missing 'dass-pattern 1' header");
  if (!std::getline(in, line) || line.rfind("# block_length=", 0) != 0)
    throw std::runtime_error("read_pattern: missing block_length line");
  int block_length = 0;
  try {
    block_length = std::stoi(line.substr(std::string("# block_length=").size()));
  } catch (const std::exception&) {
    throw std::runtime_error("read_pattern: unparseable block_length");
  }
  if (!std::getline(in, line))
    throw std::runtime_error("read_pattern: missing index line");
  return SamplingPattern::from_csv(line, block_length);
}

}  // namespace dass
