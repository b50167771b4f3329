#pragma once

#include <map>
#include <span>
#include <vector>

#include "unarydt/trainer.hpp"

namespace unarydt {

/// Unary digits a feature's converter must produce. Digit k is the
/// thermometer output "value >= k", k in [1, 2^bits - 1].
struct DigitRequirement {
  int feature = -1;
  std::vector<int> digits;  // sorted ascending, non-empty
};

/// One input of a product term: unary digit k of a feature, optionally
/// complemented.
struct Literal {
  int feature = -1;
  int digit = 0;
  bool positive = true;
};

using ProductTerm = std::vector<Literal>;

/// Two-level sum-of-products logic, one OR-of-ANDs per class label. Each
/// product term is one root-to-leaf path; an empty term is constant true.
struct LabelLogic {
  int num_labels = 0;
  std::vector<std::vector<ProductTerm>> terms;  // indexed by label id
};

struct LoweredTree {
  int bits = 4;
  int num_features = 0;
  std::vector<DigitRequirement> requirements;  // sorted by feature
  LabelLogic logic;
};

/// Translate a trained tree into its parallel-unary form: the digit taps it
/// needs per feature and the per-label path logic.
LoweredTree lower_tree(const DecisionTree& tree);

/// Evaluate the lowered logic on a quantized sample (digit k of feature f is
/// sample[f] >= k). Exactly one label must come out true.
int evaluate_logic(const std::vector<DigitRequirement>& requirements,
                   const LabelLogic& logic, std::span<const int> sample);

int evaluate_logic(const LoweredTree& lowered, std::span<const int> sample);

/// Digit truth assignment keyed by (feature, digit), e.g. assembled from
/// bespoke-ADC outputs. Looking up a digit that was never provided throws.
struct DigitValues {
  std::map<std::pair<int, int>, bool> fired;

  void set(int feature, int digit, bool value) { fired[{feature, digit}] = value; }
  bool get(int feature, int digit) const;
};

/// Evaluate label logic on explicit digit values instead of a raw sample.
int evaluate_logic_on_digits(const LabelLogic& logic, const DigitValues& digits);

enum class CmpOp { ge, gt, lt, le };

struct DigitRef {
  int digit = 0;
  bool positive = true;
};

/// Which unary digit realizes an integer comparison against C:
///   >= C -> digit C,  > C -> digit C+1,  < C -> !digit C,  <= C -> !digit C+1.
/// Throws when the digit falls outside [1, 2^bits - 1].
DigitRef comparison_relation(CmpOp op, int threshold, int bits);

/// Cost-relevant sizes of a two-level form.
std::size_t literal_count(const LabelLogic& logic);
std::size_t term_count(const LabelLogic& logic);
std::size_t active_label_count(const LabelLogic& logic);

}  // namespace unarydt
