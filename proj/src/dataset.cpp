#include "unarydt/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "unarydt/util.hpp"

namespace unarydt {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim surrounding whitespace and CR
    std::size_t b = cell.find_first_not_of(" \t\r");
    std::size_t e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') {
    cells.push_back("");
  }
  return cells;
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) {
    return false;
  }
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

std::string stem_of(const std::string& path) {
  std::size_t slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  std::size_t dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

}  // namespace

int RawDataset::num_classes() const {
  std::set<std::string> distinct(labels.begin(), labels.end());
  return static_cast<int>(distinct.size());
}

std::vector<int> QuantizedDataset::partition_indices(Partition p) const {
  std::vector<int> idx;
  for (std::size_t i = 0; i < split.size(); ++i) {
    if (split[i] == p) {
      idx.push_back(static_cast<int>(i));
    }
  }
  return idx;
}

RawDataset load_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open dataset file: " + path);
  }

  RawDataset ds;
  ds.name = stem_of(path);
  ds.source_crc32 = crc32_file(path);

  std::string line;
  std::size_t line_no = 0;
  int label_col = schema.label_index;
  std::size_t num_cols = 0;
  bool first_data_row = true;

  if (schema.has_header) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("empty dataset file: " + path);
    }
    ++line_no;
    auto header = split_csv_line(line);
    num_cols = header.size();
    if (label_col < 0) {
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == schema.label_column) {
          label_col = static_cast<int>(i);
          break;
        }
      }
      if (label_col < 0) {
        throw std::runtime_error("label column '" + schema.label_column +
                                 "' not found in header of " + path);
      }
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (static_cast<int>(i) != label_col) {
        ds.feature_names.push_back(header[i]);
      }
    }
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") {
      continue;
    }
    auto cells = split_csv_line(line);
    if (first_data_row && !schema.has_header) {
      num_cols = cells.size();
      label_col = schema.label_index >= 0 ? schema.label_index
                                          : static_cast<int>(num_cols) - 1;
      for (std::size_t i = 0; i < num_cols; ++i) {
        if (static_cast<int>(i) != label_col) {
          ds.feature_names.push_back("f" + std::to_string(i));
        }
      }
    }
    if (cells.size() != num_cols) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected " + std::to_string(num_cols) +
                               " columns, got " + std::to_string(cells.size()));
    }
    if (label_col < 0 || label_col >= static_cast<int>(num_cols)) {
      throw std::runtime_error("label column index out of range in " + path);
    }
    std::vector<double> row;
    row.reserve(num_cols - 1);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (static_cast<int>(i) == label_col) {
        continue;
      }
      double value = 0.0;
      if (!parse_double(cells[i], value)) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": unparsable feature cell '" + cells[i] + "'");
      }
      row.push_back(value);
    }
    ds.features.push_back(std::move(row));
    ds.labels.push_back(cells[static_cast<std::size_t>(label_col)]);
    first_data_row = false;
  }

  if (ds.features.empty()) {
    throw std::runtime_error("dataset has no data rows: " + path);
  }
  if (ds.feature_names.empty()) {
    throw std::runtime_error("dataset has no feature columns: " + path);
  }
  if (ds.num_classes() < 2) {
    throw std::runtime_error("dataset has fewer than 2 classes: " + path);
  }
  return ds;
}

std::vector<std::vector<int>> normalize_quantize(const RawDataset& ds, int bits) {
  if (bits < 1) {
    throw std::invalid_argument("bits must be >= 1");
  }
  const std::size_t n = ds.num_samples();
  const std::size_t m = ds.num_features();
  const double top = static_cast<double>((1 << bits) - 1);

  std::vector<double> lo(m, std::numeric_limits<double>::infinity());
  std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
  for (const auto& row : ds.features) {
    for (std::size_t f = 0; f < m; ++f) {
      lo[f] = std::min(lo[f], row[f]);
      hi[f] = std::max(hi[f], row[f]);
    }
  }

  std::vector<std::vector<int>> out(n, std::vector<int>(m, 0));
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t f = 0; f < m; ++f) {
      if (hi[f] <= lo[f]) {
        continue;  // constant column maps to 0
      }
      double scaled = (ds.features[s][f] - lo[f]) / (hi[f] - lo[f]) * top;
      out[s][f] = static_cast<int>(std::floor(scaled + 0.5));
    }
  }
  return out;
}

QuantizedDataset make_quantized(const RawDataset& ds, int bits) {
  QuantizedDataset q;
  q.name = ds.name;
  q.bits = bits;
  q.features = normalize_quantize(ds, bits);
  q.feature_names = ds.feature_names;
  q.source_crc32 = ds.source_crc32;

  std::set<std::string> distinct(ds.labels.begin(), ds.labels.end());
  q.class_names.assign(distinct.begin(), distinct.end());
  q.num_classes = static_cast<int>(q.class_names.size());
  std::map<std::string, int> id_of;
  for (int c = 0; c < q.num_classes; ++c) {
    id_of[q.class_names[static_cast<std::size_t>(c)]] = c;
  }
  q.labels.reserve(ds.labels.size());
  for (const auto& label : ds.labels) {
    q.labels.push_back(id_of.at(label));
  }
  q.split.assign(q.num_samples(), Partition::train);
  return q;
}

QuantizedDataset split_train_test(const QuantizedDataset& ds, std::uint64_t seed) {
  const std::size_t n = ds.num_samples();
  if (n < 10) {
    throw std::invalid_argument("dataset too small to split (need >= 10 samples)");
  }

  // total train count: round(0.7 * n), half-up
  const std::size_t train_total =
      static_cast<std::size_t>(std::floor(0.7 * static_cast<double>(n) + 0.5));

  std::vector<std::vector<int>> by_class(static_cast<std::size_t>(ds.num_classes));
  for (std::size_t i = 0; i < n; ++i) {
    by_class[static_cast<std::size_t>(ds.labels[i])].push_back(static_cast<int>(i));
  }

  // largest-remainder allocation of train_total across classes
  std::vector<std::size_t> take(by_class.size(), 0);
  std::vector<std::pair<double, int>> remainders;
  std::size_t allocated = 0;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    double target = 0.7 * static_cast<double>(by_class[c].size());
    take[c] = static_cast<std::size_t>(std::floor(target));
    allocated += take[c];
    remainders.push_back({target - std::floor(target), static_cast<int>(c)});
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) {
      return a.first > b.first;
    }
    return a.second < b.second;
  });
  for (std::size_t k = 0; allocated < train_total && k < remainders.size(); ++k) {
    std::size_t c = static_cast<std::size_t>(remainders[k].second);
    if (take[c] < by_class[c].size()) {
      ++take[c];
      ++allocated;
    }
  }

  QuantizedDataset out = ds;
  out.seed = seed;
  out.split.assign(n, Partition::test);
  Rng rng(seed);
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    // Fisher-Yates with the shared generator; class order is fixed so the
    // shuffle sequence is reproducible.
    for (std::size_t i = members.size(); i > 1; --i) {
      std::size_t j = rng.uniform_index(i);
      std::swap(members[i - 1], members[j]);
    }
    for (std::size_t k = 0; k < take[c] && k < members.size(); ++k) {
      out.split[static_cast<std::size_t>(members[k])] = Partition::train;
    }
  }
  return out;
}

}  // namespace unarydt
