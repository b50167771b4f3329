#include "unarydt/adc.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace unarydt {

std::vector<AdcSpec> derive_adcs(const std::vector<DigitRequirement>& requirements,
                                 int bits) {
  const int max_digit = (1 << bits) - 1;
  std::vector<AdcSpec> specs;
  specs.reserve(requirements.size());
  for (const auto& req : requirements) {
    if (req.digits.empty()) {
      throw std::invalid_argument("digit requirement for feature " +
                                  std::to_string(req.feature) + " is empty");
    }
    if (!std::is_sorted(req.digits.begin(), req.digits.end())) {
      throw std::invalid_argument("digit requirement must be sorted");
    }
    if (req.digits.front() < 1 || req.digits.back() > max_digit) {
      throw std::invalid_argument("digit out of range for " + std::to_string(bits) +
                                  "-bit converter");
    }
    specs.push_back({req.feature, bits, req.digits});
  }
  return specs;
}

std::vector<bool> simulate_adc(const AdcSpec& spec, int quantized_value) {
  const int max_level = (1 << spec.bits) - 1;
  if (quantized_value < 0 || quantized_value > max_level) {
    throw std::invalid_argument("quantized value " + std::to_string(quantized_value) +
                                " outside [0, " + std::to_string(max_level) + "]");
  }
  std::vector<bool> out;
  out.reserve(spec.retained.size());
  for (int k : spec.retained) {
    out.push_back(quantized_value >= k);
  }
  return out;
}

DigitValues simulate_adc_bank(const std::vector<AdcSpec>& specs,
                              std::span<const int> sample) {
  DigitValues digits;
  for (const auto& spec : specs) {
    if (spec.feature < 0 || spec.feature >= static_cast<int>(sample.size())) {
      throw std::invalid_argument("sample does not cover feature " +
                                  std::to_string(spec.feature));
    }
    auto bits = simulate_adc(spec, sample[static_cast<std::size_t>(spec.feature)]);
    for (std::size_t i = 0; i < spec.retained.size(); ++i) {
      digits.set(spec.feature, spec.retained[i], bits[i]);
    }
  }
  return digits;
}

}  // namespace unarydt
