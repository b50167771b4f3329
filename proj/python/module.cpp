#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unarydt/adc.hpp"
#include "unarydt/cost_model.hpp"
#include "unarydt/dataset.hpp"
#include "unarydt/explorer.hpp"
#include "unarydt/gini.hpp"
#include "unarydt/lowering.hpp"
#include "unarydt/netlist.hpp"
#include "unarydt/serialize.hpp"
#include "unarydt/trainer.hpp"

namespace py = pybind11;
using namespace unarydt;

namespace {

Partition parse_partition(const std::string& name) {
  if (name == "train") {
    return Partition::train;
  }
  if (name == "test") {
    return Partition::test;
  }
  throw std::invalid_argument("partition must be 'train' or 'test'");
}

}  // namespace

PYBIND11_MODULE(unarydt, m) {
  m.doc() = "bespoke unary decision-tree classifier toolkit";

  py::class_<RawDataset>(m, "RawDataset")
      .def_readonly("name", &RawDataset::name)
      .def_readonly("feature_names", &RawDataset::feature_names)
      .def_readonly("features", &RawDataset::features)
      .def_readonly("labels", &RawDataset::labels)
      .def_property_readonly("num_samples", &RawDataset::num_samples)
      .def_property_readonly("num_features", &RawDataset::num_features)
      .def_property_readonly("num_classes", &RawDataset::num_classes);

  py::class_<QuantizedDataset>(m, "QuantizedDataset")
      .def_readonly("name", &QuantizedDataset::name)
      .def_readonly("bits", &QuantizedDataset::bits)
      .def_readonly("features", &QuantizedDataset::features)
      .def_readonly("labels", &QuantizedDataset::labels)
      .def_readonly("seed", &QuantizedDataset::seed)
      .def_readonly("num_classes", &QuantizedDataset::num_classes)
      .def_readonly("feature_names", &QuantizedDataset::feature_names)
      .def_readonly("class_names", &QuantizedDataset::class_names)
      .def_property_readonly("num_samples", &QuantizedDataset::num_samples)
      .def("partition_indices", [](const QuantizedDataset& ds, const std::string& p) {
        return ds.partition_indices(parse_partition(p));
      });

  m.def(
      "load_csv",
      [](const std::string& path, const std::string& label_column, bool has_header,
         int label_index) {
        CsvSchema schema;
        schema.label_column = label_column;
        schema.has_header = has_header;
        schema.label_index = label_index;
        return load_csv(path, schema);
      },
      py::arg("path"), py::arg("label_column") = "class",
      py::arg("has_header") = true, py::arg("label_index") = -1);
  m.def("normalize_quantize", &normalize_quantize, py::arg("dataset"),
        py::arg("bits"));
  m.def("make_quantized", &make_quantized, py::arg("dataset"), py::arg("bits"));
  m.def("split_train_test", &split_train_test, py::arg("dataset"), py::arg("seed"));

  py::class_<SplitCandidate>(m, "SplitCandidate")
      .def_readonly("feature", &SplitCandidate::feature)
      .def_readonly("threshold", &SplitCandidate::threshold)
      .def_readonly("gini", &SplitCandidate::gini);
  m.def("gini_of_partition", &gini_of_partition, py::arg("labels_left"),
        py::arg("labels_right"));
  m.def("enumerate_candidates", &enumerate_candidates, py::arg("node_samples"),
        py::arg("dataset"));

  py::class_<DecisionTree>(m, "DecisionTree")
      .def_readonly("bits", &DecisionTree::bits)
      .def_readonly("num_features", &DecisionTree::num_features)
      .def_readonly("num_labels", &DecisionTree::num_labels)
      .def_readonly("depth_limit", &DecisionTree::depth_limit)
      .def_readonly("tau", &DecisionTree::tau)
      .def_readonly("adc_aware", &DecisionTree::adc_aware)
      .def_readonly("seed", &DecisionTree::seed)
      .def_property_readonly("height", &DecisionTree::height)
      .def_property_readonly("num_nodes",
                             [](const DecisionTree& t) { return t.nodes.size(); })
      .def("selected_pairs",
           [](const DecisionTree& t) {
             std::vector<std::pair<int, int>> pairs;
             for (const auto& p : t.selected_pairs()) {
               pairs.push_back(p);
             }
             return pairs;
           })
      .def("to_json", [](const DecisionTree& t) { return tree_to_json(t).dump(2); })
      .def_static("from_json", [](const std::string& text) {
        return tree_from_json(json::parse(text));
      });

  m.def("train_baseline", &train_baseline, py::arg("dataset"), py::arg("depth"),
        py::arg("seed"));
  m.def("train_adc_aware", &train_adc_aware, py::arg("dataset"), py::arg("depth"),
        py::arg("tau"), py::arg("seed"));
  m.def(
      "predict",
      [](const DecisionTree& tree, const std::vector<int>& sample) {
        return predict(tree, sample);
      },
      py::arg("tree"), py::arg("sample"));
  m.def(
      "accuracy",
      [](const DecisionTree& tree, const QuantizedDataset& ds,
         const std::string& partition) {
        return accuracy(tree, ds, parse_partition(partition));
      },
      py::arg("tree"), py::arg("dataset"), py::arg("partition") = "test");

  py::class_<DigitRequirement>(m, "DigitRequirement")
      .def_readonly("feature", &DigitRequirement::feature)
      .def_readonly("digits", &DigitRequirement::digits);
  py::class_<Literal>(m, "Literal")
      .def_readonly("feature", &Literal::feature)
      .def_readonly("digit", &Literal::digit)
      .def_readonly("positive", &Literal::positive);
  py::class_<LabelLogic>(m, "LabelLogic")
      .def_readonly("num_labels", &LabelLogic::num_labels)
      .def_readonly("terms", &LabelLogic::terms);
  py::class_<LoweredTree>(m, "LoweredTree")
      .def_readonly("bits", &LoweredTree::bits)
      .def_readonly("requirements", &LoweredTree::requirements)
      .def_readonly("logic", &LoweredTree::logic);

  m.def("lower_tree", &lower_tree, py::arg("tree"));
  m.def(
      "evaluate_logic",
      [](const LoweredTree& lowered, const std::vector<int>& sample) {
        return evaluate_logic(lowered, sample);
      },
      py::arg("lowered"), py::arg("sample"));
  m.def(
      "comparison_relation",
      [](const std::string& op, int threshold, int bits) {
        CmpOp parsed;
        if (op == ">=") {
          parsed = CmpOp::ge;
        } else if (op == ">") {
          parsed = CmpOp::gt;
        } else if (op == "<") {
          parsed = CmpOp::lt;
        } else if (op == "<=") {
          parsed = CmpOp::le;
        } else {
          throw std::invalid_argument("op must be one of >=, >, <, <=");
        }
        DigitRef ref = comparison_relation(parsed, threshold, bits);
        return std::make_pair(ref.digit, ref.positive);
      },
      py::arg("op"), py::arg("threshold"), py::arg("bits") = 4);

  py::class_<AdcSpec>(m, "AdcSpec")
      .def(py::init([](int feature, std::vector<int> retained, int bits) {
             return AdcSpec{feature, bits, std::move(retained)};
           }),
           py::arg("feature"), py::arg("retained"), py::arg("bits") = 4)
      .def_readonly("feature", &AdcSpec::feature)
      .def_readonly("bits", &AdcSpec::bits)
      .def_readonly("retained", &AdcSpec::retained)
      .def_property_readonly("u_d", &AdcSpec::u_d);
  m.def("derive_adcs", &derive_adcs, py::arg("requirements"), py::arg("bits"));
  m.def("simulate_adc", &simulate_adc, py::arg("spec"), py::arg("value"));

  py::class_<CostModelParams>(m, "CostModelParams")
      .def_readwrite("adc_base_area", &CostModelParams::adc_base_area)
      .def_readwrite("comparator_area", &CostModelParams::comparator_area)
      .def_readwrite("comparator_power_offset",
                     &CostModelParams::comparator_power_offset)
      .def_readwrite("comparator_power_slope",
                     &CostModelParams::comparator_power_slope)
      .def_readwrite("gate_area", &CostModelParams::gate_area)
      .def_readwrite("gate_power", &CostModelParams::gate_power)
      .def_readwrite("power_budget", &CostModelParams::power_budget);
  m.def("fit_default_params", &fit_default_params);

  py::class_<AreaPower>(m, "AreaPower")
      .def_readonly("area", &AreaPower::area)
      .def_readonly("power", &AreaPower::power);
  m.def("adc_cost", &adc_cost, py::arg("spec"), py::arg("params"));
  m.def("logic_cost", &logic_cost, py::arg("logic"), py::arg("params"));

  py::class_<HardwareReport>(m, "HardwareReport")
      .def_readonly("dataset", &HardwareReport::dataset)
      .def_readonly("accuracy", &HardwareReport::accuracy)
      .def_readonly("adc_area", &HardwareReport::adc_area)
      .def_readonly("adc_power", &HardwareReport::adc_power)
      .def_readonly("logic_area", &HardwareReport::logic_area)
      .def_readonly("logic_power", &HardwareReport::logic_power)
      .def_readonly("total_area", &HardwareReport::total_area)
      .def_readonly("total_power", &HardwareReport::total_power)
      .def_readonly("comparator_count", &HardwareReport::comparator_count)
      .def_readonly("input_count", &HardwareReport::input_count)
      .def_readonly("meets_budget", &HardwareReport::meets_budget)
      .def("to_json", [](const HardwareReport& r) { return report_to_json(r).dump(2); });
  m.def("make_report", &make_report, py::arg("tree"), py::arg("requirements"),
        py::arg("logic"), py::arg("adcs"), py::arg("params"), py::arg("accuracy"));

  py::class_<ExplorationGrid>(m, "ExplorationGrid")
      .def(py::init<>())
      .def_readwrite("tau_values", &ExplorationGrid::tau_values)
      .def_readwrite("depth_values", &ExplorationGrid::depth_values)
      .def_readwrite("seeds", &ExplorationGrid::seeds)
      .def_readwrite("loss_thresholds", &ExplorationGrid::loss_thresholds);
  m.def("default_grid", &default_grid);

  py::class_<GridPoint>(m, "GridPoint")
      .def_readonly("tau", &GridPoint::tau)
      .def_readonly("depth", &GridPoint::depth)
      .def_readonly("seed", &GridPoint::seed)
      .def_readonly("accuracy", &GridPoint::accuracy)
      .def_readonly("tree", &GridPoint::tree)
      .def_readonly("report", &GridPoint::report);
  py::class_<BaselineSelection>(m, "BaselineSelection")
      .def_readonly("depth", &BaselineSelection::depth)
      .def_readonly("seed", &BaselineSelection::seed)
      .def_readonly("accuracy", &BaselineSelection::accuracy)
      .def_readonly("tree", &BaselineSelection::tree)
      .def_readonly("report", &BaselineSelection::report);
  py::class_<Selection>(m, "Selection")
      .def_readonly("loss_threshold", &Selection::loss_threshold)
      .def_readonly("grid_index", &Selection::grid_index);
  py::class_<ExplorationResult>(m, "ExplorationResult")
      .def_readonly("baseline", &ExplorationResult::baseline)
      .def_readonly("grid_points", &ExplorationResult::grid_points)
      .def_readonly("selected", &ExplorationResult::selected);

  m.def("run_baseline_selection", &run_baseline_selection, py::arg("dataset"),
        py::arg("depths"), py::arg("seeds"), py::arg("params"));
  m.def("run_sweep", &run_sweep, py::arg("dataset"), py::arg("grid"),
        py::arg("params"), py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());

  py::class_<ReductionFactors>(m, "ReductionFactors")
      .def_readonly("area_factor", &ReductionFactors::area_factor)
      .def_readonly("power_factor", &ReductionFactors::power_factor);
  m.def("compare_reports", &compare_reports, py::arg("ours"), py::arg("baseline"));

  py::class_<Netlist>(m, "Netlist")
      .def_readonly("dataset", &Netlist::dataset)
      .def_readonly("bits", &Netlist::bits)
      .def_readonly("num_features", &Netlist::num_features)
      .def_readonly("num_labels", &Netlist::num_labels)
      .def_readonly("comparator_count", &Netlist::comparator_count)
      .def_property_readonly("num_cells",
                             [](const Netlist& n) { return n.cells.size(); })
      .def("to_json", [](const Netlist& n) { return netlist_to_json(n).dump(2); });
  m.def(
      "emit_netlist",
      [](const DecisionTree& tree, const std::vector<AdcSpec>& adcs,
         const LabelLogic& logic) { return emit_netlist(tree, adcs, logic); },
      py::arg("tree"), py::arg("adcs"), py::arg("logic"));
  m.def(
      "simulate_netlist",
      [](const Netlist& netlist, const std::vector<int>& sample) {
        return simulate_netlist(netlist, sample);
      },
      py::arg("netlist"), py::arg("sample"));
  m.def("to_structural_hdl", &to_structural_hdl, py::arg("netlist"));
  m.def("export_structural_hdl", &export_structural_hdl, py::arg("netlist"),
        py::arg("path"));
}
