#pragma once

#include <string>
#include <vector>

#include "unarydt/adc.hpp"
#include "unarydt/lowering.hpp"
#include "unarydt/trainer.hpp"

namespace unarydt {

/// Technology constants, units mm^2 and mW. Comparator power is affine in
/// the reference level: power(k) = comparator_power_offset +
/// comparator_power_slope * k, fitted to the published extremes of a
/// four-output bespoke bank (0.047 mW lowest-order, 0.205 mW highest-order).
/// Area charges are per converter (base) plus per comparator, independent of
/// which levels are retained.
struct CostModelParams {
  double adc_base_area = 0.0;
  double comparator_area = 0.0;
  double comparator_power_offset = 0.0;
  double comparator_power_slope = 0.0;
  double conv_adc_area = 11.0;   // conventional 4-bit flash reference
  double conv_adc_power = 0.83;
  double gate_area = 0.0;   // per unit of the two-level-logic proxy
  double gate_power = 0.0;
  double power_budget = 2.0;  // harvester delivery capability

  void validate() const;
};

/// Defaults derived from the published anchor measurements. The comparator
/// power line comes from solving the two four-comparator anchors exactly.
/// Area constants are bounded from the conventional converter: 11 mm^2 minus
/// a 25% encoder allowance and a 1 mm^2 ladder, spread over 15 comparators —
/// the per-point area measurements are not published, so these two are
/// documented estimates, not fits. Logic gate costs are a literal-count
/// proxy, not synthesis results.
CostModelParams fit_default_params();

struct AreaPower {
  double area = 0.0;
  double power = 0.0;
};

/// area = base + comparator_area * u_d (level-independent);
/// power = sum over retained k of (offset + slope * k).
AreaPower adc_cost(const AdcSpec& spec, const CostModelParams& params);

/// Proxy cost of the two-level label logic: (literals + product terms +
/// driven labels) * per-unit gate constants.
AreaPower logic_cost(const LabelLogic& logic, const CostModelParams& params);

struct AdcReportEntry {
  int feature = -1;
  int u_d = 0;
  double area = 0.0;
  double power = 0.0;
};

struct HardwareReport {
  std::string dataset;
  std::string tree_hash;
  int bits = 4;
  std::vector<AdcReportEntry> adcs;
  double adc_area = 0.0;
  double adc_power = 0.0;
  double logic_area = 0.0;
  double logic_power = 0.0;
  double total_area = 0.0;
  double total_power = 0.0;
  int comparator_count = 0;
  int input_count = 0;
  double accuracy = 0.0;
  double power_budget = 2.0;
  bool meets_budget = false;
};

/// Assemble the full hardware report for one trained tree. The artifacts
/// must all come from that tree; mismatched digit sets are an error.
HardwareReport make_report(const DecisionTree& tree,
                           const std::vector<DigitRequirement>& requirements,
                           const LabelLogic& logic, const std::vector<AdcSpec>& adcs,
                           const CostModelParams& params, double accuracy);

}  // namespace unarydt
