#include "dass/energy.hpp"

#include <stdexcept>

namespace dass {

namespace {

void check_common(double gamma, double compression_ratio) {
  if (!(gamma > 0.0) || gamma > 1.0)
    throw std::invalid_argument("energy: gamma must be in (0, 1]");
  if (compression_ratio < 1.0)
    throw std::invalid_argument("energy: compression ratio must be >= 1");
}

}  // namespace

EnergyPlatform tmote_sky() {
  EnergyPlatform p;
  p.name = "tmote_sky";
  p.sensing_joules_per_sample = 7.5e-6;
  p.radio_joules_per_sample = 7.5e-6 / 0.26;
  return p;
}

double energy_saving(double gamma, double cost_ratio, double compression_ratio,
                     double overhead) {
  check_common(gamma, compression_ratio);
  if (cost_ratio < 0.0) throw std::invalid_argument("energy: negative cost ratio");
  if (overhead < 0.0) throw std::invalid_argument("energy: negative overhead");
  const double sparse = gamma * (cost_ratio + 1.0) + overhead;
  const double dense = cost_ratio + 1.0 / compression_ratio + overhead;
  return 1.0 - sparse / dense;
}

double saving_zero_crossing(double gamma, double compression_ratio) {
  check_common(gamma, compression_ratio);
  if (gamma >= 1.0)
    throw std::invalid_argument("energy: zero crossing undefined at gamma = 1");
  return (gamma - 1.0 / compression_ratio) / (1.0 - gamma);
}

EnergyGrid energy_saving_grid(double gamma, const std::vector<double>& cost_ratios,
                              const std::vector<double>& compression_ratios,
                              double overhead) {
  check_common(gamma, compression_ratios.empty() ? 1.0 : compression_ratios.front());
  EnergyGrid grid;
  grid.gamma = gamma;
  grid.overhead = overhead;
  grid.cost_ratios = cost_ratios;
  grid.compression_ratios = compression_ratios;
  grid.saving.reserve(cost_ratios.size());
  for (double rs : cost_ratios) {
    std::vector<double> row;
    row.reserve(compression_ratios.size());
    for (double rc : compression_ratios)
      row.push_back(energy_saving(gamma, rs, rc, overhead));
    grid.saving.push_back(std::move(row));
  }
  if (gamma < 1.0) {
    grid.zero_crossings.reserve(compression_ratios.size());
    for (double rc : compression_ratios)
      grid.zero_crossings.push_back(saving_zero_crossing(gamma, rc));
  }
  return grid;
}

}  // namespace dass
