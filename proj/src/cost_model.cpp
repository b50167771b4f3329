#include "unarydt/cost_model.hpp"

#include <set>
#include <stdexcept>

namespace unarydt {

void CostModelParams::validate() const {
  const double values[] = {adc_base_area,           comparator_area,
                           comparator_power_offset, comparator_power_slope,
                           conv_adc_area,           conv_adc_power,
                           gate_area,               gate_power,
                           power_budget};
  for (double v : values) {
    if (!(v > 0.0)) {
      throw std::invalid_argument("cost model parameters must all be positive");
    }
  }
}

CostModelParams fit_default_params() {
  CostModelParams p;

  // Affine comparator power a + b*k from the two 4-comparator anchors:
  //   sum_{k=1..4}   (a + b*k) = 0.047 mW  ->  4a + 10b = 0.047
  //   sum_{k=12..15} (a + b*k) = 0.205 mW  ->  4a + 54b = 0.205
  const double low_anchor = 0.047;
  const double high_anchor = 0.205;
  p.comparator_power_slope = (high_anchor - low_anchor) / 44.0;
  p.comparator_power_offset = (low_anchor - 10.0 * p.comparator_power_slope) / 4.0;

  // Area: ladder charged per converter; comparators share what is left of
  // the conventional converter after a 25% encoder allowance. Estimate, not
  // a fit — the per-point area measurements are not published.
  p.conv_adc_area = 11.0;
  p.conv_adc_power = 0.83;
  const double encoder_allowance = 0.25 * p.conv_adc_area;
  p.adc_base_area = 1.0;
  p.comparator_area = (p.conv_adc_area - encoder_allowance - p.adc_base_area) / 15.0;

  // Two-level logic proxy constants (per literal/term/label unit).
  p.gate_area = 0.01;
  p.gate_power = 0.001;

  p.power_budget = 2.0;
  p.validate();
  return p;
}

AreaPower adc_cost(const AdcSpec& spec, const CostModelParams& params) {
  AreaPower cost;
  cost.area = params.adc_base_area + params.comparator_area * spec.u_d();
  for (int k : spec.retained) {
    cost.power += params.comparator_power_offset + params.comparator_power_slope * k;
  }
  return cost;
}

AreaPower logic_cost(const LabelLogic& logic, const CostModelParams& params) {
  const std::size_t units =
      literal_count(logic) + term_count(logic) + active_label_count(logic);
  return {static_cast<double>(units) * params.gate_area,
          static_cast<double>(units) * params.gate_power};
}

HardwareReport make_report(const DecisionTree& tree,
                           const std::vector<DigitRequirement>& requirements,
                           const LabelLogic& logic, const std::vector<AdcSpec>& adcs,
                           const CostModelParams& params, double accuracy) {
  if (adcs.size() != requirements.size()) {
    throw std::invalid_argument("report: ADC list does not match digit requirements");
  }
  std::set<std::pair<int, int>> available;
  for (std::size_t i = 0; i < adcs.size(); ++i) {
    if (adcs[i].feature != requirements[i].feature ||
        adcs[i].retained != requirements[i].digits) {
      throw std::invalid_argument("report: ADC spec diverges from requirement");
    }
    for (int k : adcs[i].retained) {
      available.insert({adcs[i].feature, k});
    }
  }
  for (const auto& label_terms : logic.terms) {
    for (const auto& term : label_terms) {
      for (const Literal& lit : term) {
        if (available.count({lit.feature, lit.digit}) == 0) {
          throw std::invalid_argument("report: logic reads a digit no ADC produces");
        }
      }
    }
  }
  if (available.size() != tree.selected_pairs().size()) {
    throw std::invalid_argument("report: comparator set does not match the tree");
  }

  HardwareReport report;
  report.dataset = tree.dataset_name;
  report.tree_hash = tree_fingerprint(tree);
  report.bits = tree.bits;
  report.accuracy = accuracy;
  report.power_budget = params.power_budget;
  for (const auto& spec : adcs) {
    AreaPower cost = adc_cost(spec, params);
    report.adcs.push_back({spec.feature, spec.u_d(), cost.area, cost.power});
    report.adc_area += cost.area;
    report.adc_power += cost.power;
    report.comparator_count += spec.u_d();
  }
  report.input_count = static_cast<int>(adcs.size());
  AreaPower lcost = logic_cost(logic, params);
  report.logic_area = lcost.area;
  report.logic_power = lcost.power;
  report.total_area = report.adc_area + report.logic_area;
  report.total_power = report.adc_power + report.logic_power;
  report.meets_budget = report.total_power <= params.power_budget;
  return report;
}

}  // namespace unarydt
