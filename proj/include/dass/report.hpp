#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dass/energy.hpp"
#include "dass/simulator.hpp"

namespace dass {

// Fixed-format numeric rendering so identical values produce identical bytes
// everywhere. Full round-trip precision / fixed scientific, "inf"/"nan" spelled
// out.
std::string format_full(double v);
std::string format_sci(double v);

// Per-block table with a commented config preamble. Wall-clock time is
// deliberately left out of every writer so repeated runs are byte-identical.
void write_report(const ExperimentReport& r, std::ostream& out);

// One aggregate row (plus header) for a single run.
void write_summary(const ExperimentReport& r, std::ostream& out);

// Same row format, one line per run; used for parameter sweeps.
void write_summary_table(const std::vector<ExperimentReport>& runs, std::ostream& out);

// One row per compression ratio: the ratio, the cost-ratio where the saving
// crosses zero, then the saving at each configured cost ratio.
void write_energy_grid(const EnergyGrid& grid, std::ostream& out);

// Versioned one-pattern file and its parser.
void write_pattern(const SamplingPattern& p, std::ostream& out);
SamplingPattern read_pattern(std::istream& in);

}  // namespace dass
