#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "unarydt/dataset.hpp"

namespace unarydt {

/// Set of (feature, threshold) pairs already hardwired into the tree under
/// construction. Shared across the whole tree during ADC-aware training.
using SelectedPairs = std::set<std::pair<int, int>>;

struct TreeNode {
  int feature = -1;
  int threshold = 0;
  int left = -1;   // child when "value >= threshold" is false
  int right = -1;  // child when it is true
  int label = -1;  // leaf class, valid when left < 0

  bool is_leaf() const { return left < 0; }
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // root at index 0
  int bits = 4;
  int num_features = 0;
  int num_labels = 0;
  int depth_limit = 0;
  double tau = 0.0;
  bool adc_aware = false;
  std::uint64_t seed = 0;
  std::string rng_name;
  std::string dataset_name;
  std::uint32_t dataset_crc32 = 0;

  int height() const;
  SelectedPairs selected_pairs() const;
};

/// Conventional greedy CART: minimum-Gini split at every node, ties broken
/// uniformly at random under `seed`.
DecisionTree train_baseline(const QuantizedDataset& ds, int depth_limit,
                            std::uint64_t seed);

/// Hardware-aware variant: candidates within `tau` of the node's best Gini
/// are re-ranked by the comparator cost they would add — reusing an existing
/// (feature, threshold) pair is free, adding a threshold to an existing
/// input is preferred over claiming a new input, and among fresh comparators
/// the lowest threshold (cheapest reference level) wins.
DecisionTree train_adc_aware(const QuantizedDataset& ds, int depth_limit,
                             double tau, std::uint64_t seed);

/// CRC-32 over a canonical encoding of the node structure plus bit width;
/// identifies a tree across artifacts (reports, netlists, HDL headers).
std::string tree_fingerprint(const DecisionTree& tree);

int predict(const DecisionTree& tree, std::span<const int> sample);

double accuracy(const DecisionTree& tree, const QuantizedDataset& ds, Partition p);

}  // namespace unarydt
