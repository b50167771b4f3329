#pragma once

#include <vector>

#include "unarydt/dataset.hpp"

namespace unarydt {

/// Gini scores that differ by no more than this are treated as ties.
inline constexpr double kGiniTieTol = 1e-12;

/// One candidate split: predicate is "feature value >= threshold".
struct SplitCandidate {
  int feature = -1;
  int threshold = 0;  // in [1, 2^bits - 1]
  double gini = 0.0;
};

/// Weighted Gini impurity of a two-way partition given as label multisets.
double gini_of_partition(const std::vector<int>& labels_left,
                         const std::vector<int>& labels_right);

/// All candidate splits at a node: one per (feature, distinct value present
/// at the node) with threshold >= 1, excluding candidates that send every
/// sample to one side. Sorted by (feature, threshold). Degenerate nodes
/// (single sample or single class) yield an empty list.
std::vector<SplitCandidate> enumerate_candidates(const std::vector<int>& node_samples,
                                                 const QuantizedDataset& ds);

}  // namespace unarydt
