#include "unarydt/lowering.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace unarydt {

namespace {

void collect_paths(const DecisionTree& tree, int index, ProductTerm& path,
                   LabelLogic& logic) {
  const TreeNode& node = tree.nodes[static_cast<std::size_t>(index)];
  if (node.is_leaf()) {
    logic.terms[static_cast<std::size_t>(node.label)].push_back(path);
    return;
  }
  path.push_back({node.feature, node.threshold, false});
  collect_paths(tree, node.left, path, logic);
  path.back().positive = true;
  collect_paths(tree, node.right, path, logic);
  path.pop_back();
}

bool term_true(const ProductTerm& term, std::span<const int> sample) {
  for (const Literal& lit : term) {
    const bool digit = sample[static_cast<std::size_t>(lit.feature)] >= lit.digit;
    if (digit != lit.positive) {
      return false;
    }
  }
  return true;
}

int unique_true_label(const LabelLogic& logic, const auto& term_value) {
  int result = -1;
  for (int label = 0; label < logic.num_labels; ++label) {
    for (const ProductTerm& term : logic.terms[static_cast<std::size_t>(label)]) {
      if (term_value(term)) {
        if (result >= 0 && result != label) {
          throw std::logic_error("label logic asserted more than one label");
        }
        result = label;
        break;
      }
    }
  }
  if (result < 0) {
    throw std::logic_error("label logic asserted no label");
  }
  return result;
}

}  // namespace

LoweredTree lower_tree(const DecisionTree& tree) {
  if (tree.nodes.empty()) {
    throw std::invalid_argument("cannot lower an empty tree");
  }
  LoweredTree lowered;
  lowered.bits = tree.bits;
  lowered.num_features = tree.num_features;
  lowered.logic.num_labels = tree.num_labels;
  lowered.logic.terms.assign(static_cast<std::size_t>(tree.num_labels), {});

  ProductTerm path;
  collect_paths(tree, 0, path, lowered.logic);

  std::map<int, std::set<int>> digits;
  for (const auto& node : tree.nodes) {
    if (!node.is_leaf()) {
      digits[node.feature].insert(node.threshold);
    }
  }
  for (const auto& [feature, set] : digits) {
    lowered.requirements.push_back({feature, std::vector<int>(set.begin(), set.end())});
  }
  return lowered;
}

int evaluate_logic(const std::vector<DigitRequirement>& requirements,
                   const LabelLogic& logic, std::span<const int> sample) {
  for (const auto& req : requirements) {
    if (req.feature < 0 || req.feature >= static_cast<int>(sample.size())) {
      throw std::invalid_argument("sample does not cover all required features");
    }
  }
  return unique_true_label(
      logic, [&](const ProductTerm& term) { return term_true(term, sample); });
}

int evaluate_logic(const LoweredTree& lowered, std::span<const int> sample) {
  return evaluate_logic(lowered.requirements, lowered.logic, sample);
}

bool DigitValues::get(int feature, int digit) const {
  auto it = fired.find({feature, digit});
  if (it == fired.end()) {
    throw std::invalid_argument("digit value missing for feature " +
                                std::to_string(feature) + " digit " +
                                std::to_string(digit));
  }
  return it->second;
}

int evaluate_logic_on_digits(const LabelLogic& logic, const DigitValues& digits) {
  return unique_true_label(logic, [&](const ProductTerm& term) {
    for (const Literal& lit : term) {
      if (digits.get(lit.feature, lit.digit) != lit.positive) {
        return false;
      }
    }
    return true;
  });
}

DigitRef comparison_relation(CmpOp op, int threshold, int bits) {
  DigitRef ref;
  switch (op) {
    case CmpOp::ge:
      ref = {threshold, true};
      break;
    case CmpOp::gt:
      ref = {threshold + 1, true};
      break;
    case CmpOp::lt:
      ref = {threshold, false};
      break;
    case CmpOp::le:
      ref = {threshold + 1, false};
      break;
  }
  const int max_digit = (1 << bits) - 1;
  if (ref.digit < 1 || ref.digit > max_digit) {
    throw std::invalid_argument("comparison needs unary digit " +
                                std::to_string(ref.digit) + ", outside [1, " +
                                std::to_string(max_digit) + "]");
  }
  return ref;
}

std::size_t literal_count(const LabelLogic& logic) {
  std::size_t count = 0;
  for (const auto& label_terms : logic.terms) {
    for (const auto& term : label_terms) {
      count += term.size();
    }
  }
  return count;
}

std::size_t term_count(const LabelLogic& logic) {
  std::size_t count = 0;
  for (const auto& label_terms : logic.terms) {
    count += label_terms.size();
  }
  return count;
}

std::size_t active_label_count(const LabelLogic& logic) {
  std::size_t count = 0;
  for (const auto& label_terms : logic.terms) {
    count += label_terms.empty() ? 0 : 1;
  }
  return count;
}

}  // namespace unarydt
