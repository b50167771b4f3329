#pragma once

#include <vector>

#include "unarydt/lowering.hpp"

namespace unarydt {

/// A flash converter stripped down to the comparators a tree actually reads:
/// comparator k sits at reference level k and is kept only when digit k is
/// required. u_d is the number of retained comparators.
struct AdcSpec {
  int feature = -1;
  int bits = 4;
  std::vector<int> retained;  // sorted ascending, in [1, 2^bits - 1]

  int u_d() const { return static_cast<int>(retained.size()); }
};

/// One spec per feature that has a digit requirement; features the tree
/// never reads get no converter at all.
std::vector<AdcSpec> derive_adcs(const std::vector<DigitRequirement>& requirements,
                                 int bits);

/// Behavioral model on the quantized grid: retained comparator k outputs
/// (value >= k). Returns one bit per retained comparator, in retained order.
std::vector<bool> simulate_adc(const AdcSpec& spec, int quantized_value);

/// Digit assignment for a whole sample, assembled from per-feature ADC
/// simulations. Feeding this into evaluate_logic_on_digits closes the
/// sensor-to-label path.
DigitValues simulate_adc_bank(const std::vector<AdcSpec>& specs,
                              std::span<const int> sample);

}  // namespace unarydt
