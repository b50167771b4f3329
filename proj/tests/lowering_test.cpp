#include <doctest.h>

#include "test_util.hpp"
#include "unarydt/lowering.hpp"
#include "unarydt/serialize.hpp"
#include "unarydt/trainer.hpp"

using namespace unarydt;

namespace {

// The worked example shape: three decision nodes over inputs 1, 4 and 2
// with thresholds 3, 2 and 6.
DecisionTree example_tree() {
  DecisionTree tree;
  tree.bits = 4;
  tree.num_features = 5;
  tree.num_labels = 3;
  tree.nodes.push_back({1, 3, 1, 4, -1});   // I1 >= 3 ?
  tree.nodes.push_back({4, 2, 2, 3, -1});   // I4 >= 2 ?
  tree.nodes.push_back({-1, 0, -1, -1, 0});
  tree.nodes.push_back({-1, 0, -1, -1, 1});
  tree.nodes.push_back({2, 6, 5, 6, -1});   // I2 >= 6 ?
  tree.nodes.push_back({-1, 0, -1, -1, 1});
  tree.nodes.push_back({-1, 0, -1, -1, 2});
  return tree;
}

}  // namespace

TEST_CASE("lowering the example tree") {
  LoweredTree lowered = lower_tree(example_tree());
  REQUIRE(lowered.requirements.size() == 3);
  CHECK(lowered.requirements[0].feature == 1);
  CHECK(lowered.requirements[0].digits == std::vector<int>{3});
  CHECK(lowered.requirements[1].feature == 2);
  CHECK(lowered.requirements[1].digits == std::vector<int>{6});
  CHECK(lowered.requirements[2].feature == 4);
  CHECK(lowered.requirements[2].digits == std::vector<int>{2});

  CHECK(term_count(lowered.logic) == 4);  // one per leaf
  CHECK(lowered.logic.terms[0].size() == 1);
  CHECK(lowered.logic.terms[1].size() == 2);
  CHECK(lowered.logic.terms[2].size() == 1);
  // every literal reads one of I1[3], I4[2], I2[6]
  for (const auto& label_terms : lowered.logic.terms) {
    for (const auto& term : label_terms) {
      for (const Literal& lit : term) {
        bool known = (lit.feature == 1 && lit.digit == 3) ||
                     (lit.feature == 4 && lit.digit == 2) ||
                     (lit.feature == 2 && lit.digit == 6);
        CHECK(known);
      }
    }
  }
}

TEST_CASE("single leaf lowers to a constant-true term") {
  DecisionTree tree;
  tree.bits = 4;
  tree.num_features = 2;
  tree.num_labels = 2;
  tree.nodes.push_back({-1, 0, -1, -1, 1});
  LoweredTree lowered = lower_tree(tree);
  CHECK(lowered.requirements.empty());
  REQUIRE(lowered.logic.terms[1].size() == 1);
  CHECK(lowered.logic.terms[1][0].empty());
  CHECK(lowered.logic.terms[0].empty());
  CHECK(evaluate_logic(lowered, std::vector<int>{0, 0}) == 1);
  CHECK(evaluate_logic(lowered, std::vector<int>{15, 15}) == 1);
}

TEST_CASE("reused pairs deduplicate in the digit requirements") {
  // four decision slots, three distinct pairs: (1,7) appears in both subtrees
  DecisionTree tree;
  tree.bits = 4;
  tree.num_features = 3;
  tree.num_labels = 2;
  tree.nodes.push_back({0, 5, 1, 4, -1});
  tree.nodes.push_back({1, 7, 2, 3, -1});
  tree.nodes.push_back({-1, 0, -1, -1, 0});
  tree.nodes.push_back({-1, 0, -1, -1, 1});
  tree.nodes.push_back({2, 9, 5, 8, -1});
  tree.nodes.push_back({1, 7, 6, 7, -1});
  tree.nodes.push_back({-1, 0, -1, -1, 1});
  tree.nodes.push_back({-1, 0, -1, -1, 0});
  tree.nodes.push_back({-1, 0, -1, -1, 1});

  LoweredTree lowered = lower_tree(tree);
  std::size_t total_digits = 0;
  for (const auto& req : lowered.requirements) {
    total_digits += req.digits.size();
  }
  CHECK(total_digits == 3);  // not 4
  CHECK(total_digits == tree.selected_pairs().size());
}

TEST_CASE("lowered logic is equivalent to tree traversal") {
  std::mt19937 rng(51);
  for (int trial = 0; trial < 8; ++trial) {
    auto ds = testutil::random_ds(rng, 60, 2, 3);
    DecisionTree tree = train_adc_aware(ds, 5, 0.01 * trial, trial + 1);
    LoweredTree lowered = lower_tree(tree);
    for (int a = 0; a <= 15; ++a) {
      for (int b = 0; b <= 15; ++b) {
        std::vector<int> sample{a, b};
        CHECK(evaluate_logic(lowered, sample) == predict(tree, sample));
      }
    }
  }
}

TEST_CASE("thermometer digits are monotone within a feature") {
  for (int value = 0; value <= 15; ++value) {
    for (int k = 1; k <= 15; ++k) {
      bool digit_k = value >= k;
      for (int j = 1; j <= k; ++j) {
        bool digit_j = value >= j;
        if (digit_k) {
          CHECK(digit_j);
        }
      }
    }
  }
}

TEST_CASE("exactly one label asserts for every input") {
  std::mt19937 rng(57);
  auto ds = testutil::random_ds(rng, 80, 2, 4);
  DecisionTree tree = train_baseline(ds, 6, 9);
  LoweredTree lowered = lower_tree(tree);
  for (int a = 0; a <= 15; ++a) {
    for (int b = 0; b <= 15; ++b) {
      // evaluate_logic throws unless exactly one label is true
      CHECK_NOTHROW(evaluate_logic(lowered, std::vector<int>{a, b}));
    }
  }
}

TEST_CASE("inconsistent logic is rejected") {
  LabelLogic logic;
  logic.num_labels = 2;
  logic.terms.resize(2);
  logic.terms[0].push_back({});  // constant true
  logic.terms[1].push_back({});  // constant true as well -> double assert
  DigitValues digits;
  CHECK_THROWS_AS(evaluate_logic_on_digits(logic, digits), std::logic_error);

  LabelLogic silent;
  silent.num_labels = 2;
  silent.terms.resize(2);  // nothing asserts
  CHECK_THROWS_AS(evaluate_logic_on_digits(silent, digits), std::logic_error);
}

TEST_CASE("lowered form survives a JSON round trip") {
  std::mt19937 rng(59);
  auto ds = testutil::random_ds(rng, 60, 3, 3);
  DecisionTree tree = train_adc_aware(ds, 4, 0.01, 2);
  LoweredTree lowered = lower_tree(tree);
  LoweredTree back = lowered_from_json(lowered_to_json(lowered));
  CHECK(lowered_to_json(back) == lowered_to_json(lowered));
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> sample{static_cast<int>(rng() % 16),
                            static_cast<int>(rng() % 16),
                            static_cast<int>(rng() % 16)};
    CHECK(evaluate_logic(back, sample) == evaluate_logic(lowered, sample));
  }
}

TEST_CASE("comparison relations map onto unary digits") {
  DigitRef ge = comparison_relation(CmpOp::ge, 11, 4);
  CHECK(ge.digit == 11);
  CHECK(ge.positive);

  DigitRef lt = comparison_relation(CmpOp::lt, 5, 4);
  CHECK(lt.digit == 5);
  CHECK_FALSE(lt.positive);

  DigitRef gt = comparison_relation(CmpOp::gt, 7, 4);
  CHECK(gt.digit == 8);
  CHECK(gt.positive);

  DigitRef le = comparison_relation(CmpOp::le, 7, 4);
  CHECK(le.digit == 8);
  CHECK_FALSE(le.positive);

  CHECK_THROWS(comparison_relation(CmpOp::gt, 15, 4));  // no digit 16
  CHECK_THROWS(comparison_relation(CmpOp::ge, 0, 4));   // no digit 0
  CHECK_THROWS(comparison_relation(CmpOp::le, 15, 4));
  CHECK_NOTHROW(comparison_relation(CmpOp::gt, 0, 4));  // digit 1

  // semantic check across the whole grid: the mapped digit reproduces the
  // integer comparison
  auto realized = [](DigitRef ref, int v) {
    bool digit = v >= ref.digit;
    return ref.positive ? digit : !digit;
  };
  for (int c = 1; c <= 14; ++c) {
    for (int v = 0; v <= 15; ++v) {
      CHECK(realized(comparison_relation(CmpOp::ge, c, 4), v) == (v >= c));
      CHECK(realized(comparison_relation(CmpOp::gt, c, 4), v) == (v > c));
      CHECK(realized(comparison_relation(CmpOp::lt, c, 4), v) == (v < c));
      CHECK(realized(comparison_relation(CmpOp::le, c, 4), v) == (v <= c));
    }
  }
}
