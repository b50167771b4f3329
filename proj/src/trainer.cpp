#include "unarydt/trainer.hpp"

#include <algorithm>
#include <stdexcept>

#include "unarydt/gini.hpp"
#include "unarydt/util.hpp"

namespace unarydt {

namespace {

struct TrainContext {
  const QuantizedDataset& ds;
  int depth_limit;
  double tau;
  bool adc_aware;
  Rng rng;
  SelectedPairs selected;
  std::vector<TreeNode> nodes;
};

int majority_label(const TrainContext& ctx, const std::vector<int>& samples) {
  std::vector<int> counts(static_cast<std::size_t>(ctx.ds.num_classes), 0);
  for (int s : samples) {
    ++counts[static_cast<std::size_t>(ctx.ds.labels[static_cast<std::size_t>(s)])];
  }
  int best = 0;
  for (int c = 1; c < ctx.ds.num_classes; ++c) {
    if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(best)]) {
      best = c;  // ties keep the lowest class id
    }
  }
  return best;
}

bool is_pure(const TrainContext& ctx, const std::vector<int>& samples) {
  int first = ctx.ds.labels[static_cast<std::size_t>(samples.front())];
  for (int s : samples) {
    if (ctx.ds.labels[static_cast<std::size_t>(s)] != first) {
      return false;
    }
  }
  return true;
}

// Candidates whose Gini is within kGiniTieTol of the pool minimum.
std::vector<std::size_t> min_gini_pool(const std::vector<SplitCandidate>& cands,
                                       const std::vector<std::size_t>& pool) {
  double best = cands[pool.front()].gini;
  for (std::size_t i : pool) {
    best = std::min(best, cands[i].gini);
  }
  std::vector<std::size_t> out;
  for (std::size_t i : pool) {
    if (cands[i].gini <= best + kGiniTieTol) {
      out.push_back(i);
    }
  }
  return out;
}

// Split choice per node. The baseline picks any minimum-Gini candidate.
// The ADC-aware path widens the pool to Gini <= G + tau, buckets it by the
// hardware a pair would add (zero: pair reused, medium: new threshold on an
// existing input, high: new input), takes the cheapest non-empty bucket,
// and inside the medium/high buckets prefers the minimum threshold before
// re-applying the Gini criterion.
const SplitCandidate& choose_split(TrainContext& ctx,
                                   const std::vector<SplitCandidate>& cands) {
  std::vector<std::size_t> pool;

  if (!ctx.adc_aware) {
    std::vector<std::size_t> all(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
      all[i] = i;
    }
    pool = min_gini_pool(cands, all);
  } else {
    double min_gini = cands.front().gini;
    for (const auto& c : cands) {
      min_gini = std::min(min_gini, c.gini);
    }
    std::vector<std::size_t> band;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (cands[i].gini <= min_gini + ctx.tau + kGiniTieTol) {
        band.push_back(i);
      }
    }

    std::vector<std::size_t> zero, medium, high;
    for (std::size_t i : band) {
      const auto& c = cands[i];
      if (ctx.selected.count({c.feature, c.threshold}) > 0) {
        zero.push_back(i);
      } else {
        auto it = ctx.selected.lower_bound({c.feature, 0});
        bool feature_used = it != ctx.selected.end() && it->first == c.feature;
        (feature_used ? medium : high).push_back(i);
      }
    }

    if (!zero.empty()) {
      pool = min_gini_pool(cands, zero);
    } else {
      const auto& tier = medium.empty() ? high : medium;
      int min_threshold = cands[tier.front()].threshold;
      for (std::size_t i : tier) {
        min_threshold = std::min(min_threshold, cands[i].threshold);
      }
      std::vector<std::size_t> cheapest;
      for (std::size_t i : tier) {
        if (cands[i].threshold == min_threshold) {
          cheapest.push_back(i);
        }
      }
      pool = min_gini_pool(cands, cheapest);
    }
  }

  return cands[pool[ctx.rng.uniform_index(pool.size())]];
}

int build_node(TrainContext& ctx, const std::vector<int>& samples, int depth) {
  const int index = static_cast<int>(ctx.nodes.size());
  ctx.nodes.emplace_back();

  if (depth >= ctx.depth_limit || is_pure(ctx, samples)) {
    ctx.nodes[static_cast<std::size_t>(index)].label = majority_label(ctx, samples);
    return index;
  }
  auto cands = enumerate_candidates(samples, ctx.ds);
  if (cands.empty()) {
    ctx.nodes[static_cast<std::size_t>(index)].label = majority_label(ctx, samples);
    return index;
  }

  const SplitCandidate chosen = choose_split(ctx, cands);
  ctx.selected.insert({chosen.feature, chosen.threshold});

  std::vector<int> left_samples, right_samples;
  for (int s : samples) {
    const bool goes_right =
        ctx.ds.features[static_cast<std::size_t>(s)][static_cast<std::size_t>(
            chosen.feature)] >= chosen.threshold;
    (goes_right ? right_samples : left_samples).push_back(s);
  }

  ctx.nodes[static_cast<std::size_t>(index)].feature = chosen.feature;
  ctx.nodes[static_cast<std::size_t>(index)].threshold = chosen.threshold;
  // false branch first: expansion order is part of the training contract
  // because SelectedPairs is shared along it
  int left = build_node(ctx, left_samples, depth + 1);
  ctx.nodes[static_cast<std::size_t>(index)].left = left;
  int right = build_node(ctx, right_samples, depth + 1);
  ctx.nodes[static_cast<std::size_t>(index)].right = right;
  return index;
}

DecisionTree train_impl(const QuantizedDataset& ds, int depth_limit, double tau,
                        bool adc_aware, std::uint64_t seed) {
  if (depth_limit < 1 || depth_limit > 16) {
    throw std::invalid_argument("depth_limit must be in [1, 16]");
  }
  if (tau < 0.0) {
    throw std::invalid_argument("tau must be >= 0");
  }
  if (ds.num_samples() == 0) {
    throw std::invalid_argument("cannot train on an empty dataset");
  }

  TrainContext ctx{ds, depth_limit, tau, adc_aware, Rng(seed), {}, {}};
  std::vector<int> train_samples = ds.partition_indices(Partition::train);
  if (train_samples.empty()) {
    throw std::invalid_argument("training partition is empty");
  }
  build_node(ctx, train_samples, 0);

  DecisionTree tree;
  tree.nodes = std::move(ctx.nodes);
  tree.bits = ds.bits;
  tree.num_features = static_cast<int>(ds.num_features());
  tree.num_labels = ds.num_classes;
  tree.depth_limit = depth_limit;
  tree.tau = tau;
  tree.adc_aware = adc_aware;
  tree.seed = seed;
  tree.rng_name = Rng::name();
  tree.dataset_name = ds.name;
  tree.dataset_crc32 = ds.source_crc32;
  return tree;
}

}  // namespace

int DecisionTree::height() const {
  if (nodes.empty()) {
    return 0;
  }
  // nodes are stored preorder, so children always follow their parent
  std::vector<int> depth(nodes.size(), 0);
  int max_depth = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].is_leaf()) {
      depth[static_cast<std::size_t>(nodes[i].left)] = depth[i] + 1;
      depth[static_cast<std::size_t>(nodes[i].right)] = depth[i] + 1;
      max_depth = std::max(max_depth, depth[i] + 1);
    }
  }
  return max_depth;
}

SelectedPairs DecisionTree::selected_pairs() const {
  SelectedPairs pairs;
  for (const auto& node : nodes) {
    if (!node.is_leaf()) {
      pairs.insert({node.feature, node.threshold});
    }
  }
  return pairs;
}

std::string tree_fingerprint(const DecisionTree& tree) {
  std::string bytes;
  bytes.reserve(tree.nodes.size() * 20 + 8);
  auto append = [&bytes](int v) {
    for (int b = 0; b < 4; ++b) {
      bytes.push_back(static_cast<char>((static_cast<std::uint32_t>(v) >> (8 * b)) & 0xFF));
    }
  };
  append(tree.bits);
  append(tree.num_features);
  for (const auto& node : tree.nodes) {
    append(node.feature);
    append(node.threshold);
    append(node.left);
    append(node.right);
    append(node.label);
  }
  return crc32_hex(crc32(bytes));
}

DecisionTree train_baseline(const QuantizedDataset& ds, int depth_limit,
                            std::uint64_t seed) {
  return train_impl(ds, depth_limit, 0.0, false, seed);
}

DecisionTree train_adc_aware(const QuantizedDataset& ds, int depth_limit, double tau,
                             std::uint64_t seed) {
  return train_impl(ds, depth_limit, tau, true, seed);
}

int predict(const DecisionTree& tree, std::span<const int> sample) {
  if (static_cast<int>(sample.size()) != tree.num_features) {
    throw std::invalid_argument("sample length does not match feature count");
  }
  if (tree.nodes.empty()) {
    throw std::invalid_argument("cannot predict with an empty tree");
  }
  const TreeNode* node = &tree.nodes.front();
  while (!node->is_leaf()) {
    const int value = sample[static_cast<std::size_t>(node->feature)];
    node = &tree.nodes[static_cast<std::size_t>(value >= node->threshold ? node->right
                                                                         : node->left)];
  }
  return node->label;
}

double accuracy(const DecisionTree& tree, const QuantizedDataset& ds, Partition p) {
  std::vector<int> idx = ds.partition_indices(p);
  if (idx.empty()) {
    throw std::invalid_argument("accuracy: partition is empty");
  }
  std::size_t correct = 0;
  for (int s : idx) {
    const auto& row = ds.features[static_cast<std::size_t>(s)];
    if (predict(tree, row) == ds.labels[static_cast<std::size_t>(s)]) {
      ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(idx.size());
}

}  // namespace unarydt
