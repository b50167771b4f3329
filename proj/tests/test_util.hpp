#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "unarydt/dataset.hpp"
#include "unarydt/gini.hpp"

namespace testutil {

inline std::string data_dir() { return UNARYDT_DATA_DIR; }

inline std::string fixture(const std::string& name) {
  return data_dir() + "/fixtures/" + name;
}

/// Write a temp CSV and return its path.
inline std::string write_temp_csv(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path.string();
}

/// Hand-assembled quantized dataset, all samples in the train partition.
inline unarydt::QuantizedDataset make_ds(std::vector<std::vector<int>> features,
                                         std::vector<int> labels, int bits = 4) {
  unarydt::QuantizedDataset ds;
  ds.name = "synthetic";
  ds.bits = bits;
  ds.features = std::move(features);
  ds.labels = std::move(labels);
  ds.num_classes = 0;
  for (int label : ds.labels) {
    ds.num_classes = std::max(ds.num_classes, label + 1);
  }
  for (int c = 0; c < ds.num_classes; ++c) {
    ds.class_names.push_back("c" + std::to_string(c));
  }
  for (std::size_t f = 0; f < ds.features.front().size(); ++f) {
    ds.feature_names.push_back("f" + std::to_string(f));
  }
  ds.split.assign(ds.features.size(), unarydt::Partition::train);
  return ds;
}

/// Random dataset generator for property tests.
inline unarydt::QuantizedDataset random_ds(std::mt19937& rng, int samples,
                                           int features, int classes, int bits = 4) {
  std::uniform_int_distribution<int> value(0, (1 << bits) - 1);
  std::uniform_int_distribution<int> label(0, classes - 1);
  std::vector<std::vector<int>> xs;
  std::vector<int> ys;
  for (int s = 0; s < samples; ++s) {
    std::vector<int> row;
    for (int f = 0; f < features; ++f) {
      row.push_back(value(rng));
    }
    // labels loosely follow feature 0 so trees have something to learn
    int y = label(rng);
    if (s % 3 != 0) {
      y = row[0] >= (1 << (bits - 1)) ? (classes - 1) : 0;
    }
    xs.push_back(std::move(row));
    ys.push_back(y);
  }
  return make_ds(std::move(xs), std::move(ys), bits);
}

/// Brute-force oracle: weighted Gini of splitting `samples` on
/// (feature, threshold), computed straight from the definition.
inline double brute_force_gini(const unarydt::QuantizedDataset& ds,
                               const std::vector<int>& samples, int feature,
                               int threshold) {
  std::vector<int> left, right;
  for (int s : samples) {
    const auto& row = ds.features[static_cast<std::size_t>(s)];
    (row[static_cast<std::size_t>(feature)] >= threshold ? right : left)
        .push_back(ds.labels[static_cast<std::size_t>(s)]);
  }
  return unarydt::gini_of_partition(left, right);
}

/// Exhaustive (feature x threshold) scan for the minimum Gini at a node.
/// Independent of enumerate_candidates.
inline double brute_force_min_gini(const unarydt::QuantizedDataset& ds,
                                   const std::vector<int>& samples) {
  double best = 2.0;
  for (std::size_t f = 0; f < ds.num_features(); ++f) {
    for (int c = 1; c <= ds.max_level(); ++c) {
      std::size_t right_n = 0;
      for (int s : samples) {
        right_n += ds.features[static_cast<std::size_t>(s)][f] >= c ? 1 : 0;
      }
      if (right_n == 0 || right_n == samples.size()) {
        continue;
      }
      best = std::min(best, brute_force_gini(ds, samples, static_cast<int>(f), c));
    }
  }
  return best;
}

}  // namespace testutil
