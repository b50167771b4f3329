#include <doctest.h>

#include "test_util.hpp"
#include "unarydt/adc.hpp"
#include "unarydt/trainer.hpp"

using namespace unarydt;

TEST_CASE("derive_adcs keeps exactly the required comparators") {
  std::vector<DigitRequirement> reqs{{0, {1, 2, 4, 7}}};
  auto specs = derive_adcs(reqs, 4);
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].feature == 0);
  CHECK(specs[0].u_d() == 4);
  CHECK(specs[0].retained == std::vector<int>{1, 2, 4, 7});
}

TEST_CASE("derive_adcs full bank and empty input") {
  std::vector<int> all;
  for (int k = 1; k <= 15; ++k) {
    all.push_back(k);
  }
  auto specs = derive_adcs({{3, all}}, 4);
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].u_d() == 15);

  CHECK(derive_adcs({}, 4).empty());
  CHECK_THROWS(derive_adcs({{0, {}}}, 4));       // empty digit set
  CHECK_THROWS(derive_adcs({{0, {16}}}, 4));     // digit out of range
  CHECK_THROWS(derive_adcs({{0, {0, 3}}}, 4));   // digit 0 does not exist
}

TEST_CASE("simulate_adc hand-checked example") {
  AdcSpec spec{0, 4, {1, 2, 4, 7}};
  // 5 >= 1, 5 >= 2, 5 >= 4, 5 >= 7
  CHECK(simulate_adc(spec, 5) == std::vector<bool>{true, true, true, false});
  CHECK(simulate_adc(spec, 0) == std::vector<bool>{false, false, false, false});

  std::vector<int> all;
  for (int k = 1; k <= 15; ++k) {
    all.push_back(k);
  }
  AdcSpec full{1, 4, all};
  CHECK(simulate_adc(full, 15) == std::vector<bool>(15, true));
  CHECK(simulate_adc(full, 0) == std::vector<bool>(15, false));

  CHECK_THROWS(simulate_adc(spec, -1));
  CHECK_THROWS(simulate_adc(spec, 16));
}

TEST_CASE("retained outputs stay thermometer-consistent") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> retained;
    for (int k = 1; k <= 15; ++k) {
      if (rng() % 3 == 0) {
        retained.push_back(k);
      }
    }
    if (retained.empty()) {
      retained.push_back(1 + static_cast<int>(rng() % 15));
    }
    AdcSpec spec{0, 4, retained};
    for (int value = 0; value <= 15; ++value) {
      auto bits = simulate_adc(spec, value);
      for (std::size_t i = 1; i < bits.size(); ++i) {
        if (bits[i]) {
          CHECK(bits[i - 1]);  // a firing comparator implies all lower fire
        }
      }
    }
  }
}

TEST_CASE("ADC outputs drive the label logic to the tree's answer") {
  std::mt19937 rng(67);
  for (int trial = 0; trial < 6; ++trial) {
    auto ds = testutil::random_ds(rng, 70, 2, 3);
    DecisionTree tree = train_adc_aware(ds, 5, 0.01, trial + 1);
    LoweredTree lowered = lower_tree(tree);
    auto specs = derive_adcs(lowered.requirements, lowered.bits);

    int total_comparators = 0;
    for (const auto& spec : specs) {
      total_comparators += spec.u_d();
    }
    CHECK(static_cast<std::size_t>(total_comparators) == tree.selected_pairs().size());

    for (int a = 0; a <= 15; ++a) {
      for (int b = 0; b <= 15; ++b) {
        std::vector<int> sample{a, b};
        DigitValues digits = simulate_adc_bank(specs, sample);
        CHECK(evaluate_logic_on_digits(lowered.logic, digits) ==
              predict(tree, sample));
      }
    }
  }
}
