#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dass/core.hpp"

namespace dass {

enum class CsvLayout { one_column_per_node };

// A rectangular time-by-node table plus ingestion bookkeeping. Rows are
// successive samples at the block sampling rate; columns are nodes.
struct Dataset {
  std::string name;
  std::string units;  // free-form label carried through the CSV round-trip
  std::vector<std::string> node_ids;
  std::vector<std::optional<double>> node_positions;
  int samples_per_block = 144;
  Eigen::MatrixXd values;  // rows = time, cols = nodes
  int interpolated_cells = 0;
  int dropped_rows = 0;

  int node_count() const { return static_cast<int>(values.cols()); }

  // Chunk into complete blocks of samples_per_block rows (or an override),
  // concatenating the per-node segments node-major into each block vector.
  std::vector<FieldBlock> to_blocks(int samples_per_block_override = 0) const;
};

// Reads a one-column-per-node CSV. First line may be a "# dass-csv 1"
// version tag; a non-numeric first row is taken as node names (optionally
// "name@position"). Missing cells are filled by per-column linear
// interpolation (held at the ends) and counted; rows past the last complete
// block are dropped with a note in the result.
Dataset ingest_csv(const std::string& path, int samples_per_block = 144,
                   CsvLayout layout = CsvLayout::one_column_per_node);

void write_csv(const Dataset& data, const std::string& path);

}  // namespace dass
