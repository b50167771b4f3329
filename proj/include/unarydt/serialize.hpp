#pragma once

#include <json.hpp>
#include <string>

#include "unarydt/cost_model.hpp"
#include "unarydt/dataset.hpp"
#include "unarydt/explorer.hpp"
#include "unarydt/lowering.hpp"
#include "unarydt/netlist.hpp"
#include "unarydt/trainer.hpp"

namespace unarydt {

// All file artifacts use insertion-ordered JSON so identical inputs always
// produce identical bytes.
using json = nlohmann::ordered_json;

json tree_to_json(const DecisionTree& tree);
DecisionTree tree_from_json(const json& j);

json lowered_to_json(const LoweredTree& lowered);
LoweredTree lowered_from_json(const json& j);

json quantized_to_json(const QuantizedDataset& ds);
QuantizedDataset quantized_from_json(const json& j);

json params_to_json(const CostModelParams& params);
CostModelParams params_from_json(const json& j);
CostModelParams load_params(const std::string& path);

json report_to_json(const HardwareReport& report);
HardwareReport report_from_json(const json& j);

json netlist_to_json(const Netlist& netlist);
Netlist netlist_from_json(const json& j);

json exploration_to_json(const ExplorationResult& result, const ExplorationGrid& grid);

/// One CSV row per grid point plus a baseline row, stable column order.
std::string exploration_csv(const ExplorationResult& result);

/// Human-readable summary: baseline table and per-threshold selections with
/// reduction factors.
std::string exploration_markdown(const ExplorationResult& result);

void save_text(const std::string& path, const std::string& text);
std::string load_text(const std::string& path);
void save_json(const std::string& path, const json& j);
json load_json(const std::string& path);

}  // namespace unarydt
