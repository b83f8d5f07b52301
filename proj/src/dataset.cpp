#include "dass/dataset.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dass {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::string trimmed(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool parse_double(const std::string& s, double& out) {
  const std::string t = trimmed(s);
  if (t.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stod(t, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == t.size();
}

bool is_missing(const std::string& s) {
  const std::string t = trimmed(s);
  return t.empty() || t == "nan" || t == "NaN" || t == "NA";
}

}  // namespace

std::vector<FieldBlock> Dataset::to_blocks(int samples_per_block_override) const {
  const int per_block =
      samples_per_block_override > 0 ? samples_per_block_override : samples_per_block;
  if (per_block < 1) throw std::invalid_argument("Dataset: bad samples_per_block");
  const int rows = static_cast<int>(values.rows());
  const int nodes = node_count();
  const int count = rows / per_block;
  if (count < 1)
    throw std::invalid_argument("Dataset: not enough rows for a single block");
  std::vector<FieldBlock> blocks;
  blocks.reserve(count);
  for (int b = 0; b < count; ++b) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(per_block) * nodes);
    for (int j = 0; j < nodes; ++j)
      v.segment(static_cast<Eigen::Index>(j) * per_block, per_block) =
          values.col(j).segment(static_cast<Eigen::Index>(b) * per_block, per_block);
    blocks.emplace_back(std::move(v), b, nodes);
  }
  return blocks;
}

Dataset ingest_csv(const std::string& path, int samples_per_block, CsvLayout layout) {
  (void)layout;  // only one_column_per_node exists
  if (samples_per_block < 1)
    throw std::invalid_argument("ingest_csv: samples_per_block must be >= 1");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("ingest_csv: cannot open '" + path + "'");

  Dataset data;
  data.name = path;
  data.samples_per_block = samples_per_block;

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("ingest_csv: empty file");
  while (!line.empty() && line[0] == '#') {
    const std::string t = trimmed(line);
    if (t.rfind("# dass-csv", 0) == 0 && t != "# dass-csv 1")
      throw std::runtime_error("ingest_csv: unsupported format version '" + line + "'");
    if (t.rfind("# units=", 0) == 0) data.units = t.substr(8);
    if (!std::getline(in, line)) throw std::runtime_error("ingest_csv: missing header row");
  }

  // A fully numeric (or missing-valued) first row is data; otherwise names.
  std::vector<std::string> first = split_csv_line(line);
  if (first.empty()) throw std::runtime_error("ingest_csv: empty header row");
  bool header_is_names = false;
  for (const auto& cell : first) {
    double v;
    if (!is_missing(cell) && !parse_double(cell, v)) {
      header_is_names = true;
      break;
    }
  }

  const std::size_t node_count = first.size();
  data.node_ids.resize(node_count);
  data.node_positions.assign(node_count, std::nullopt);
  std::vector<std::vector<double>> cols(node_count);
  std::vector<std::vector<int>> missing(node_count);

  auto consume_row = [&](const std::vector<std::string>& cells, int row_number) {
    if (cells.size() != node_count)
      throw std::runtime_error("ingest_csv: row " + std::to_string(row_number) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(node_count));
    for (std::size_t c = 0; c < node_count; ++c) {
      double v = 0.0;
      if (is_missing(cells[c])) {
        missing[c].push_back(static_cast<int>(cols[c].size()));
        cols[c].push_back(std::nan(""));
      } else if (parse_double(cells[c], v)) {
        cols[c].push_back(v);
      } else {
        throw std::runtime_error("ingest_csv: non-numeric cell at row " +
                                 std::to_string(row_number) + ", column " +
                                 std::to_string(c + 1) + ": '" + cells[c] + "'");
      }
    }
  };

  int row_number = 1;
  if (header_is_names) {
    for (std::size_t c = 0; c < node_count; ++c) {
      const std::string cell = trimmed(first[c]);
      const std::size_t at = cell.find('@');
      if (at == std::string::npos) {
        data.node_ids[c] = cell;
      } else {
        data.node_ids[c] = cell.substr(0, at);
        double pos;
        if (!parse_double(cell.substr(at + 1), pos))
          throw std::runtime_error("ingest_csv: bad node position in '" + cell + "'");
        data.node_positions[c] = pos;
      }
    }
  } else {
    for (std::size_t c = 0; c < node_count; ++c)
      data.node_ids[c] = "node" + std::to_string(c);
    consume_row(first, row_number++);
  }

  while (std::getline(in, line)) {
    if (trimmed(line).empty()) continue;
    consume_row(split_csv_line(line), row_number++);
  }

  const int rows = static_cast<int>(cols[0].size());
  if (rows < 1) throw std::runtime_error("ingest_csv: no data rows");

  // Fill gaps per column: linear between neighbors, held at the ends.
  for (std::size_t c = 0; c < node_count; ++c) {
    if (static_cast<int>(missing[c].size()) == rows)
      throw std::runtime_error("ingest_csv: column " + std::to_string(c + 1) +
                               " ('" + data.node_ids[c] + "') has no values");
    auto& col = cols[c];
    int prev = -1;
    for (int i = 0; i < rows; ++i) {
      if (std::isnan(col[i])) continue;
      if (prev < 0) {
        for (int j = 0; j < i; ++j) col[j] = col[i];
      } else if (prev + 1 < i) {
        for (int j = prev + 1; j < i; ++j) {
          const double t = static_cast<double>(j - prev) / static_cast<double>(i - prev);
          col[j] = (1.0 - t) * col[prev] + t * col[i];
        }
      }
      prev = i;
    }
    for (int j = prev + 1; j < rows; ++j) col[j] = col[prev];
    data.interpolated_cells += static_cast<int>(missing[c].size());
  }

  const int complete = rows / samples_per_block;
  if (complete < 2)
    throw std::runtime_error("ingest_csv: need at least 2 complete blocks, found " +
                             std::to_string(complete) + " (" + std::to_string(rows) +
                             " rows at " + std::to_string(samples_per_block) +
                             " samples per block)");
  data.dropped_rows = rows - complete * samples_per_block;

  data.values.resize(complete * samples_per_block, static_cast<Eigen::Index>(node_count));
  for (std::size_t c = 0; c < node_count; ++c)
    for (int i = 0; i < complete * samples_per_block; ++i)
      data.values(i, static_cast<Eigen::Index>(c)) = cols[c][i];
  return data;
}

void write_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "'");
  out << "# dass-csv 1\n";
  if (!data.units.empty()) out << "# units=" << data.units << "\n";
  for (int c = 0; c < data.node_count(); ++c) {
    if (c) out << ',';
    out << data.node_ids[c];
    if (data.node_positions[c]) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "@%.17g", *data.node_positions[c]);
      out << buf;
    }
  }
  out << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < data.values.rows(); ++i) {
    for (Eigen::Index c = 0; c < data.values.cols(); ++c) {
      if (c) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g", data.values(i, c));
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write failed for '" + path + "'");
}

}  // namespace dass
