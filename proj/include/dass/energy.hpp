#pragma once

#include <string>
#include <vector>

namespace dass {

// Per-sample energy accounting for a sensing node. cost_ratio is
// sensing-vs-radio energy per sample; compression_ratio is raw samples per
// transmitted payload unit achieved by the pipeline upstream of the radio.
struct EnergyPlatform {
  std::string name;
  double sensing_joules_per_sample = 0.0;
  double radio_joules_per_sample = 0.0;
  double cost_ratio() const { return sensing_joules_per_sample / radio_joules_per_sample; }
};

// Published figures for the Tmote-sky class node: 7.5 uJ per sample
// sensed, sensing/radio cost ratio 0.26 (per-byte radio accounting), and a
// 6.9e-4 J packet carrying a 24-byte payload.
EnergyPlatform tmote_sky();
inline constexpr double kTmoteSkyPacketJoules = 6.9e-4;
inline constexpr int kTmoteSkyPacketPayloadBytes = 24;

// Fraction of the dense-sensing energy saved when sensing a gamma fraction
// of the samples and shipping them at the given compression ratio:
//   1 - gamma * (cost_ratio + 1) / (cost_ratio + 1/compression_ratio)
// An optional per-block overhead (in units of radio energy per sample, e.g.
// model or schedule downlink traffic) is charged symmetrically to both the
// sparse and the dense pipeline.
double energy_saving(double gamma, double cost_ratio, double compression_ratio,
                     double overhead = 0.0);

// cost_ratio at which the saving crosses zero for fixed gamma and
// compression ratio.
double saving_zero_crossing(double gamma, double compression_ratio);

struct EnergyGrid {
  double gamma = 0.0;
  double overhead = 0.0;
  std::vector<double> cost_ratios;
  std::vector<double> compression_ratios;
  // saving[i][j] at cost_ratios[i] x compression_ratios[j]
  std::vector<std::vector<double>> saving;
  std::vector<double> zero_crossings;  // per compression ratio
};

EnergyGrid energy_saving_grid(double gamma, const std::vector<double>& cost_ratios,
                              const std::vector<double>& compression_ratios,
                              double overhead = 0.0);

}  // namespace dass
