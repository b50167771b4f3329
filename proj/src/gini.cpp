#include "unarydt/gini.hpp"

#include <algorithm>
#include <stdexcept>

namespace unarydt {

namespace {

// Weighted Gini from per-side class counts. Sums of squared counts stay in
// integer range for any realistic node size, and the arithmetic order is
// fixed, so equal partitions always score bit-identically.
double gini_from_counts(const std::vector<long long>& left,
                        const std::vector<long long>& right) {
  long long nl = 0;
  long long nr = 0;
  long long sql = 0;
  long long sqr = 0;
  for (long long c : left) {
    nl += c;
    sql += c * c;
  }
  for (long long c : right) {
    nr += c;
    sqr += c * c;
  }
  const long long n = nl + nr;
  if (n == 0) {
    throw std::invalid_argument("gini_of_partition: both sides empty");
  }
  double impurity = 0.0;
  if (nl > 0) {
    impurity += static_cast<double>(nl) - static_cast<double>(sql) / static_cast<double>(nl);
  }
  if (nr > 0) {
    impurity += static_cast<double>(nr) - static_cast<double>(sqr) / static_cast<double>(nr);
  }
  return impurity / static_cast<double>(n);
}

}  // namespace

double gini_of_partition(const std::vector<int>& labels_left,
                         const std::vector<int>& labels_right) {
  int max_id = -1;
  for (int c : labels_left) {
    max_id = std::max(max_id, c);
  }
  for (int c : labels_right) {
    max_id = std::max(max_id, c);
  }
  std::vector<long long> left(static_cast<std::size_t>(max_id + 1), 0);
  std::vector<long long> right(static_cast<std::size_t>(max_id + 1), 0);
  for (int c : labels_left) {
    if (c < 0) {
      throw std::invalid_argument("gini_of_partition: negative class id");
    }
    ++left[static_cast<std::size_t>(c)];
  }
  for (int c : labels_right) {
    if (c < 0) {
      throw std::invalid_argument("gini_of_partition: negative class id");
    }
    ++right[static_cast<std::size_t>(c)];
  }
  return gini_from_counts(left, right);
}

std::vector<SplitCandidate> enumerate_candidates(const std::vector<int>& node_samples,
                                                 const QuantizedDataset& ds) {
  std::vector<SplitCandidate> out;
  const std::size_t n = node_samples.size();
  if (n < 2) {
    return out;
  }
  const int num_classes = ds.num_classes;
  const int levels = ds.max_level() + 1;

  std::vector<long long> node_counts(static_cast<std::size_t>(num_classes), 0);
  for (int s : node_samples) {
    ++node_counts[static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(s)])];
  }
  int distinct_classes = 0;
  for (long long c : node_counts) {
    distinct_classes += c > 0 ? 1 : 0;
  }
  if (distinct_classes < 2) {
    return out;
  }

  const std::size_t num_features = ds.num_features();
  std::vector<long long> level_counts(static_cast<std::size_t>(levels * num_classes));
  std::vector<long long> left(static_cast<std::size_t>(num_classes));
  std::vector<long long> right(static_cast<std::size_t>(num_classes));

  for (std::size_t f = 0; f < num_features; ++f) {
    std::fill(level_counts.begin(), level_counts.end(), 0);
    for (int s : node_samples) {
      int v = ds.features[static_cast<std::size_t>(s)][f];
      ++level_counts[static_cast<std::size_t>(v * num_classes +
                                               ds.labels[static_cast<std::size_t>(s)])];
    }
    // Walk thresholds upward; `left` accumulates samples strictly below the
    // current level. A candidate exists at every present level C >= 1 whose
    // left side is non-empty (the right side holds at least the C-valued
    // samples, so it is never empty).
    std::fill(left.begin(), left.end(), 0);
    long long left_n = 0;
    for (int v = 0; v < levels; ++v) {
      long long at_level = 0;
      for (int c = 0; c < num_classes; ++c) {
        at_level += level_counts[static_cast<std::size_t>(v * num_classes + c)];
      }
      if (at_level > 0 && v >= 1 && left_n > 0) {
        for (int c = 0; c < num_classes; ++c) {
          right[static_cast<std::size_t>(c)] =
              node_counts[static_cast<std::size_t>(c)] - left[static_cast<std::size_t>(c)];
        }
        out.push_back({static_cast<int>(f), v, gini_from_counts(left, right)});
      }
      for (int c = 0; c < num_classes; ++c) {
        left[static_cast<std::size_t>(c)] +=
            level_counts[static_cast<std::size_t>(v * num_classes + c)];
        left_n += level_counts[static_cast<std::size_t>(v * num_classes + c)];
      }
    }
  }
  return out;
}

}  // namespace unarydt
