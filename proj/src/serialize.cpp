#include "unarydt/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "unarydt/util.hpp"

namespace unarydt {

namespace {

constexpr const char* kTreeFormat = "unarydt-tree-v1";
constexpr const char* kQuantizedFormat = "unarydt-quantized-v1";
constexpr const char* kTechFormat = "unarydt-tech-v1";
constexpr const char* kNetlistFormat = "unarydt-netlist-v1";

void expect_format(const json& j, const char* format) {
  if (!j.is_object() || j.value("format", "") != format) {
    throw std::runtime_error(std::string("expected ") + format + " document");
  }
}

std::string cell_kind_name(CellKind kind) {
  switch (kind) {
    case CellKind::input:
      return "input";
    case CellKind::comparator:
      return "comparator";
    case CellKind::not_gate:
      return "not";
    case CellKind::and_gate:
      return "and";
    case CellKind::or_gate:
      return "or";
    case CellKind::output:
      return "output";
  }
  throw std::logic_error("unknown cell kind");
}

CellKind cell_kind_from_name(const std::string& name) {
  if (name == "input") return CellKind::input;
  if (name == "comparator") return CellKind::comparator;
  if (name == "not") return CellKind::not_gate;
  if (name == "and") return CellKind::and_gate;
  if (name == "or") return CellKind::or_gate;
  if (name == "output") return CellKind::output;
  throw std::runtime_error("unknown cell kind: " + name);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

json tree_to_json(const DecisionTree& tree) {
  json nodes = json::array();
  for (const auto& node : tree.nodes) {
    if (node.is_leaf()) {
      nodes.push_back({{"label", node.label}});
    } else {
      nodes.push_back({{"feature", node.feature},
                       {"threshold", node.threshold},
                       {"left", node.left},
                       {"right", node.right}});
    }
  }
  return json{{"format", kTreeFormat},
              {"dataset", tree.dataset_name},
              {"dataset_crc32", crc32_hex(tree.dataset_crc32)},
              {"bits", tree.bits},
              {"num_features", tree.num_features},
              {"num_labels", tree.num_labels},
              {"depth_limit", tree.depth_limit},
              {"tau", tree.tau},
              {"adc_aware", tree.adc_aware},
              {"seed", tree.seed},
              {"rng", tree.rng_name},
              {"fingerprint", tree_fingerprint(tree)},
              {"nodes", nodes}};
}

DecisionTree tree_from_json(const json& j) {
  expect_format(j, kTreeFormat);
  DecisionTree tree;
  tree.dataset_name = j.at("dataset").get<std::string>();
  tree.dataset_crc32 = parse_crc32_hex(j.at("dataset_crc32").get<std::string>());
  tree.bits = j.at("bits").get<int>();
  tree.num_features = j.at("num_features").get<int>();
  tree.num_labels = j.at("num_labels").get<int>();
  tree.depth_limit = j.at("depth_limit").get<int>();
  tree.tau = j.at("tau").get<double>();
  tree.adc_aware = j.at("adc_aware").get<bool>();
  tree.seed = j.at("seed").get<std::uint64_t>();
  tree.rng_name = j.at("rng").get<std::string>();
  for (const auto& node_json : j.at("nodes")) {
    TreeNode node;
    if (node_json.contains("label")) {
      node.label = node_json.at("label").get<int>();
    } else {
      node.feature = node_json.at("feature").get<int>();
      node.threshold = node_json.at("threshold").get<int>();
      node.left = node_json.at("left").get<int>();
      node.right = node_json.at("right").get<int>();
    }
    tree.nodes.push_back(node);
  }
  if (j.at("fingerprint").get<std::string>() != tree_fingerprint(tree)) {
    throw std::runtime_error("tree fingerprint mismatch — file corrupted?");
  }
  return tree;
}

json lowered_to_json(const LoweredTree& lowered) {
  json requirements = json::array();
  for (const auto& req : lowered.requirements) {
    requirements.push_back({{"feature", req.feature}, {"digits", req.digits}});
  }
  json labels = json::array();
  for (const auto& label_terms : lowered.logic.terms) {
    json terms = json::array();
    for (const auto& term : label_terms) {
      json literals = json::array();
      for (const Literal& lit : term) {
        literals.push_back({{"feature", lit.feature},
                            {"digit", lit.digit},
                            {"positive", lit.positive}});
      }
      terms.push_back(literals);
    }
    labels.push_back(terms);
  }
  return json{{"format", "unarydt-lowered-v1"},
              {"bits", lowered.bits},
              {"num_features", lowered.num_features},
              {"num_labels", lowered.logic.num_labels},
              {"requirements", requirements},
              {"terms_per_label", labels}};
}

LoweredTree lowered_from_json(const json& j) {
  expect_format(j, "unarydt-lowered-v1");
  LoweredTree lowered;
  lowered.bits = j.at("bits").get<int>();
  lowered.num_features = j.at("num_features").get<int>();
  lowered.logic.num_labels = j.at("num_labels").get<int>();
  for (const auto& req : j.at("requirements")) {
    lowered.requirements.push_back(
        {req.at("feature").get<int>(), req.at("digits").get<std::vector<int>>()});
  }
  for (const auto& terms : j.at("terms_per_label")) {
    std::vector<ProductTerm> label_terms;
    for (const auto& literals : terms) {
      ProductTerm term;
      for (const auto& lit : literals) {
        term.push_back({lit.at("feature").get<int>(), lit.at("digit").get<int>(),
                        lit.at("positive").get<bool>()});
      }
      label_terms.push_back(std::move(term));
    }
    lowered.logic.terms.push_back(std::move(label_terms));
  }
  if (static_cast<int>(lowered.logic.terms.size()) != lowered.logic.num_labels) {
    throw std::runtime_error("lowered form: term list does not match label count");
  }
  return lowered;
}

json quantized_to_json(const QuantizedDataset& ds) {
  json split = json::array();
  for (Partition p : ds.split) {
    split.push_back(p == Partition::train ? 0 : 1);
  }
  return json{{"format", kQuantizedFormat},
              {"name", ds.name},
              {"bits", ds.bits},
              {"seed", ds.seed},
              {"num_classes", ds.num_classes},
              {"feature_names", ds.feature_names},
              {"class_names", ds.class_names},
              {"source_crc32", crc32_hex(ds.source_crc32)},
              {"labels", ds.labels},
              {"split", split},
              {"features", ds.features}};
}

QuantizedDataset quantized_from_json(const json& j) {
  expect_format(j, kQuantizedFormat);
  QuantizedDataset ds;
  ds.name = j.at("name").get<std::string>();
  ds.bits = j.at("bits").get<int>();
  ds.seed = j.at("seed").get<std::uint64_t>();
  ds.num_classes = j.at("num_classes").get<int>();
  ds.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  ds.class_names = j.at("class_names").get<std::vector<std::string>>();
  ds.source_crc32 = parse_crc32_hex(j.at("source_crc32").get<std::string>());
  ds.labels = j.at("labels").get<std::vector<int>>();
  for (const auto& tag : j.at("split")) {
    ds.split.push_back(tag.get<int>() == 0 ? Partition::train : Partition::test);
  }
  ds.features = j.at("features").get<std::vector<std::vector<int>>>();
  return ds;
}

json params_to_json(const CostModelParams& params) {
  return json{
      {"format", kTechFormat},
      {"units", {{"area", "mm2"}, {"power", "mW"}}},
      {"adc",
       {{"base_area", params.adc_base_area},
        {"comparator_area", params.comparator_area},
        {"comparator_power_offset", params.comparator_power_offset},
        {"comparator_power_slope", params.comparator_power_slope},
        {"conventional_area", params.conv_adc_area},
        {"conventional_power", params.conv_adc_power}}},
      {"logic", {{"gate_area", params.gate_area}, {"gate_power", params.gate_power}}},
      {"power_budget_mw", params.power_budget},
      {"notes",
       "Comparator power offset/slope solve the published 4-comparator bank "
       "anchors (0.047 mW lowest-order, 0.205 mW highest-order). Area constants "
       "are estimates bounded by the 11 mm2 conventional converter less a 25% "
       "encoder allowance; per-point area measurements are not published. Logic "
       "gate costs are a literal-count proxy, not synthesis results."}};
}

CostModelParams params_from_json(const json& j) {
  expect_format(j, kTechFormat);
  CostModelParams p;
  const auto& adc = j.at("adc");
  p.adc_base_area = adc.at("base_area").get<double>();
  p.comparator_area = adc.at("comparator_area").get<double>();
  p.comparator_power_offset = adc.at("comparator_power_offset").get<double>();
  p.comparator_power_slope = adc.at("comparator_power_slope").get<double>();
  p.conv_adc_area = adc.at("conventional_area").get<double>();
  p.conv_adc_power = adc.at("conventional_power").get<double>();
  const auto& logic = j.at("logic");
  p.gate_area = logic.at("gate_area").get<double>();
  p.gate_power = logic.at("gate_power").get<double>();
  p.power_budget = j.at("power_budget_mw").get<double>();
  p.validate();
  return p;
}

CostModelParams load_params(const std::string& path) {
  return params_from_json(load_json(path));
}

json report_to_json(const HardwareReport& report) {
  json adcs = json::array();
  for (const auto& entry : report.adcs) {
    adcs.push_back({{"feature", entry.feature},
                    {"u_d", entry.u_d},
                    {"area", entry.area},
                    {"power", entry.power}});
  }
  return json{{"dataset", report.dataset},
              {"tree", report.tree_hash},
              {"bits", report.bits},
              {"accuracy", report.accuracy},
              {"adcs", adcs},
              {"adc_area", report.adc_area},
              {"adc_power", report.adc_power},
              {"logic_area", report.logic_area},
              {"logic_power", report.logic_power},
              {"total_area", report.total_area},
              {"total_power", report.total_power},
              {"comparators", report.comparator_count},
              {"inputs", report.input_count},
              {"power_budget_mw", report.power_budget},
              {"meets_budget", report.meets_budget}};
}

HardwareReport report_from_json(const json& j) {
  HardwareReport report;
  report.dataset = j.at("dataset").get<std::string>();
  report.tree_hash = j.at("tree").get<std::string>();
  report.bits = j.at("bits").get<int>();
  report.accuracy = j.at("accuracy").get<double>();
  for (const auto& entry : j.at("adcs")) {
    report.adcs.push_back({entry.at("feature").get<int>(), entry.at("u_d").get<int>(),
                           entry.at("area").get<double>(),
                           entry.at("power").get<double>()});
  }
  report.adc_area = j.at("adc_area").get<double>();
  report.adc_power = j.at("adc_power").get<double>();
  report.logic_area = j.at("logic_area").get<double>();
  report.logic_power = j.at("logic_power").get<double>();
  report.total_area = j.at("total_area").get<double>();
  report.total_power = j.at("total_power").get<double>();
  report.comparator_count = j.at("comparators").get<int>();
  report.input_count = j.at("inputs").get<int>();
  report.power_budget = j.at("power_budget_mw").get<double>();
  report.meets_budget = j.at("meets_budget").get<bool>();
  return report;
}

json netlist_to_json(const Netlist& netlist) {
  json cells = json::array();
  for (const Cell& cell : netlist.cells) {
    json c{{"id", cell.id}, {"kind", cell_kind_name(cell.kind)}};
    if (!cell.inputs.empty()) {
      c["inputs"] = cell.inputs;
    }
    if (cell.feature >= 0) {
      c["feature"] = cell.feature;
    }
    if (cell.level >= 0) {
      c["level"] = cell.level;
    }
    cells.push_back(c);
  }
  return json{{"format", kNetlistFormat},
              {"dataset", netlist.dataset},
              {"tree", netlist.tree_hash},
              {"bits", netlist.bits},
              {"features", netlist.num_features},
              {"labels", netlist.num_labels},
              {"comparators", netlist.comparator_count},
              {"cells", cells}};
}

Netlist netlist_from_json(const json& j) {
  expect_format(j, kNetlistFormat);
  Netlist n;
  n.dataset = j.at("dataset").get<std::string>();
  n.tree_hash = j.at("tree").get<std::string>();
  n.bits = j.at("bits").get<int>();
  n.num_features = j.at("features").get<int>();
  n.num_labels = j.at("labels").get<int>();
  n.comparator_count = j.at("comparators").get<int>();
  for (const auto& cell_json : j.at("cells")) {
    Cell cell;
    cell.id = cell_json.at("id").get<std::string>();
    cell.kind = cell_kind_from_name(cell_json.at("kind").get<std::string>());
    if (cell_json.contains("inputs")) {
      cell.inputs = cell_json.at("inputs").get<std::vector<std::string>>();
    }
    cell.feature = cell_json.value("feature", -1);
    cell.level = cell_json.value("level", -1);
    n.cells.push_back(std::move(cell));
  }
  return n;
}

json exploration_to_json(const ExplorationResult& result, const ExplorationGrid& grid) {
  json points = json::array();
  for (const auto& point : result.grid_points) {
    points.push_back({{"tau", point.tau},
                      {"depth", point.depth},
                      {"seed", point.seed},
                      {"accuracy", point.accuracy},
                      {"report", report_to_json(point.report)},
                      {"tree", tree_to_json(point.tree)}});
  }
  json selected = json::array();
  for (const auto& sel : result.selected) {
    json entry{{"loss_threshold", sel.loss_threshold},
               {"kept_unaware_design", sel.grid_index < 0}};
    if (sel.grid_index >= 0) {
      const auto& point =
          result.grid_points[static_cast<std::size_t>(sel.grid_index)];
      entry["grid_index"] = sel.grid_index;
      entry["tau"] = point.tau;
      entry["depth"] = point.depth;
      entry["seed"] = point.seed;
      entry["accuracy"] = point.accuracy;
    } else {
      entry["accuracy"] = result.baseline.accuracy;
    }
    const HardwareReport& report = selected_report(result, sel);
    ReductionFactors vs = compare_reports(report, result.baseline.report);
    entry["report"] = report_to_json(report);
    entry["reduction_vs_unaware"] = {{"area_factor", vs.area_factor},
                                     {"power_factor", vs.power_factor}};
    selected.push_back(entry);
  }
  return json{
      {"format", "unarydt-exploration-v1"},
      {"protocol",
       {{"tau_values", grid.tau_values},
        {"depth_values", grid.depth_values},
        {"seeds", grid.seeds},
        {"loss_thresholds", grid.loss_thresholds},
        {"rng", Rng::name()}}},
      {"baseline",
       {{"depth", result.baseline.depth},
        {"seed", result.baseline.seed},
        {"accuracy", result.baseline.accuracy},
        {"report", report_to_json(result.baseline.report)},
        {"tree", tree_to_json(result.baseline.tree)}}},
      {"grid", points},
      {"selected", selected}};
}

std::string exploration_csv(const ExplorationResult& result) {
  std::ostringstream out;
  out << "kind,tau,depth,seed,accuracy,comparators,inputs,adc_area,adc_power,"
         "logic_area,logic_power,total_area,total_power,meets_budget\n";
  auto row = [&out](const std::string& kind, double tau, int depth,
                    std::uint64_t seed, double accuracy, const HardwareReport& r) {
    out << kind << "," << format_double(tau) << "," << depth << "," << seed << ","
        << format_double(accuracy) << "," << r.comparator_count << ","
        << r.input_count << "," << format_double(r.adc_area) << ","
        << format_double(r.adc_power) << "," << format_double(r.logic_area) << ","
        << format_double(r.logic_power) << "," << format_double(r.total_area) << ","
        << format_double(r.total_power) << "," << (r.meets_budget ? 1 : 0) << "\n";
  };
  row("baseline", 0.0, result.baseline.depth, result.baseline.seed,
      result.baseline.accuracy, result.baseline.report);
  for (const auto& point : result.grid_points) {
    row("grid", point.tau, point.depth, point.seed, point.accuracy, point.report);
  }
  return out.str();
}

std::string exploration_markdown(const ExplorationResult& result) {
  std::ostringstream out;
  const auto& b = result.baseline;
  out << "## " << b.report.dataset << "\n\n";
  out << "### Conventional training (best depth/seed)\n\n";
  out << "| Acc (%) | #Comp. | #Inputs | ADC Area (mm2) | Total Area (mm2) | "
         "ADC Power (mW) | Total Power (mW) |\n";
  out << "|---|---|---|---|---|---|---|\n";
  out << "| " << format_double(b.accuracy * 100.0) << " | "
      << b.report.comparator_count << " | " << b.report.input_count << " | "
      << format_double(b.report.adc_area) << " | "
      << format_double(b.report.total_area) << " | "
      << format_double(b.report.adc_power) << " | "
      << format_double(b.report.total_power) << " |\n\n";

  out << "### Hardware-aware selections\n\n";
  out << "| Loss budget | tau | depth | Acc (%) | #Comp. | Area (mm2) | Power (mW) "
         "| Area red. | Power red. | Self-powered |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& sel : result.selected) {
    out << "| " << format_double(sel.loss_threshold * 100.0) << "% | ";
    if (sel.grid_index < 0) {
      // nothing in the sweep met the accuracy floor; the unaware design stays
      const auto& r = b.report;
      out << "(kept unaware) | " << b.depth << " | "
          << format_double(b.accuracy * 100.0) << " | " << r.comparator_count
          << " | " << format_double(r.total_area) << " | "
          << format_double(r.total_power) << " | 1x | 1x | "
          << (r.meets_budget ? "yes" : "no") << " |\n";
      continue;
    }
    const auto& p = result.grid_points[static_cast<std::size_t>(sel.grid_index)];
    ReductionFactors vs = compare_reports(p.report, b.report);
    out << format_double(p.tau) << " | " << p.depth << " | "
        << format_double(p.accuracy * 100.0) << " | " << p.report.comparator_count
        << " | " << format_double(p.report.total_area) << " | "
        << format_double(p.report.total_power) << " | "
        << format_double(vs.area_factor) << "x | " << format_double(vs.power_factor)
        << "x | " << (p.report.meets_budget ? "yes" : "no") << " |\n";
  }
  return out.str();
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing " + path);
  }
}

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void save_json(const std::string& path, const json& j) {
  save_text(path, j.dump(2) + "\n");
}

json load_json(const std::string& path) {
  return json::parse(load_text(path));
}

}  // namespace unarydt
