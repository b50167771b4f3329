#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "unarydt/adc.hpp"
#include "unarydt/explorer.hpp"
#include "unarydt/fetch.hpp"
#include "unarydt/lowering.hpp"
#include "unarydt/netlist.hpp"
#include "unarydt/serialize.hpp"
#include "unarydt/util.hpp"

namespace fs = std::filesystem;
using namespace unarydt;

namespace {

void log_event(json fields) {
  std::cerr << fields.dump() << "\n";
}

// "a:b" / "a:b:step" inclusive ranges, or comma-separated lists
std::vector<double> parse_double_grid(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) {
    return out;
  }
  if (text.find(':') != std::string::npos) {
    double start = 0.0, stop = 0.0, step = 1.0;
    std::size_t first = text.find(':');
    std::size_t second = text.find(':', first + 1);
    start = std::stod(text.substr(0, first));
    if (second == std::string::npos) {
      stop = std::stod(text.substr(first + 1));
    } else {
      stop = std::stod(text.substr(first + 1, second - first - 1));
      step = std::stod(text.substr(second + 1));
    }
    if (step <= 0.0) {
      throw CLI::ValidationError("grid step must be positive");
    }
    for (double v = start; v <= stop + step * 1e-9; v += step) {
      out.push_back(v);
    }
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      out.push_back(std::stod(item));
    }
  }
  return out;
}

std::vector<int> parse_int_grid(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_double_grid(text)) {
    out.push_back(static_cast<int>(v));
  }
  return out;
}

struct DatasetOptions {
  std::string dataset;
  std::string manifest_path;
  std::string label_column = "class";
  int label_index = -1;
  bool no_header = false;
  int bits = 4;
  std::uint64_t split_seed = 42;
};

void add_dataset_options(CLI::App* cmd, DatasetOptions& opts) {
  cmd->add_option("--dataset", opts.dataset,
                  "dataset name from the manifest, or a CSV path")
      ->required();
  cmd->add_option("--manifest", opts.manifest_path,
                  "dataset manifest (default: data/manifest.json when present)");
  cmd->add_option("--label", opts.label_column, "label column name");
  cmd->add_option("--label-index", opts.label_index, "label column index");
  cmd->add_flag("--no-header", opts.no_header, "CSV has no header row");
  cmd->add_option("--bits", opts.bits, "quantization precision")
      ->check(CLI::Range(1, 16));
  cmd->add_option("--split-seed", opts.split_seed, "train/test split seed");
}

QuantizedDataset prepare_dataset(const DatasetOptions& opts) {
  std::optional<DatasetManifest> manifest;
  std::string manifest_path = opts.manifest_path;
  if (manifest_path.empty() && fs::exists("data/manifest.json")) {
    manifest_path = "data/manifest.json";
  }
  if (!manifest_path.empty() && fs::exists(manifest_path)) {
    manifest = load_manifest(manifest_path);
  }
  CsvSchema schema;
  schema.has_header = !opts.no_header;
  schema.label_column = opts.label_column;
  schema.label_index = opts.label_index;
  RawDataset raw = open_dataset(manifest, opts.dataset, schema);
  log_event({{"event", "dataset_loaded"},
             {"name", raw.name},
             {"samples", raw.num_samples()},
             {"features", raw.num_features()},
             {"classes", raw.num_classes()},
             {"crc32", crc32_hex(raw.source_crc32)}});
  return split_train_test(make_quantized(raw, opts.bits), opts.split_seed);
}

CostModelParams load_tech(const std::string& path) {
  if (path.empty()) {
    return fit_default_params();
  }
  return load_params(path);
}

json dataset_config_json(const DatasetOptions& opts) {
  return json{{"dataset", opts.dataset},
              {"label", opts.label_column},
              {"label_index", opts.label_index},
              {"no_header", opts.no_header},
              {"bits", opts.bits},
              {"split_seed", opts.split_seed}};
}

void write_run_manifest(const std::string& out_dir, const std::string& command,
                        json config, const QuantizedDataset* ds) {
  json manifest{{"command", command},
                {"config", config},
                {"config_crc32", crc32_hex(crc32(config.dump()))},
                {"rng", Rng::name()}};
  if (ds != nullptr) {
    manifest["dataset_name"] = ds->name;
    manifest["dataset_crc32"] = crc32_hex(ds->source_crc32);
  }
  save_json((fs::path(out_dir) / "run_manifest.json").string(), manifest);
}

std::string loss_tag(double loss) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", loss * 100.0);
  return std::string(buf) + "pct";
}

int cmd_fetch(const std::string& manifest_path, const std::string& name, bool all) {
  DatasetManifest manifest = load_manifest(manifest_path);
  std::vector<const ManifestEntry*> wanted;
  if (all) {
    for (const auto& entry : manifest.entries) {
      wanted.push_back(&entry);
    }
  } else {
    const ManifestEntry* entry = manifest.find(name);
    if (entry == nullptr) {
      throw std::runtime_error("dataset '" + name + "' not in manifest");
    }
    wanted.push_back(entry);
  }
  for (const ManifestEntry* entry : wanted) {
    std::string local = fetch_dataset(manifest, *entry);
    log_event({{"event", "dataset_ready"}, {"name", entry->name}, {"path", local}});
    std::cout << entry->name << ": " << local << "\n";
  }
  return 0;
}

int cmd_train(const DatasetOptions& data_opts, int depth, double tau, bool adc_aware,
              std::uint64_t seed, const std::string& tech_path,
              const std::string& out_dir) {
  QuantizedDataset ds = prepare_dataset(data_opts);
  CostModelParams params = load_tech(tech_path);
  fs::create_directories(out_dir);

  DecisionTree tree = adc_aware ? train_adc_aware(ds, depth, tau, seed)
                                : train_baseline(ds, depth, seed);
  GridPoint evaluated = evaluate_design(std::move(tree), ds, params);

  save_json((fs::path(out_dir) / "tree.json").string(),
            tree_to_json(evaluated.tree));
  save_json((fs::path(out_dir) / "report.json").string(),
            report_to_json(evaluated.report));
  json config = dataset_config_json(data_opts);
  config["depth"] = depth;
  config["adc_aware"] = adc_aware;
  config["tau"] = tau;
  config["seed"] = seed;
  config["tech_config"] = tech_path;
  write_run_manifest(out_dir, "train", config, &ds);
  log_event({{"event", "train_done"},
             {"accuracy", evaluated.accuracy},
             {"comparators", evaluated.report.comparator_count},
             {"total_power_mw", evaluated.report.total_power}});
  std::cout << "accuracy " << evaluated.accuracy << ", "
            << evaluated.report.comparator_count << " comparators, "
            << evaluated.report.total_power << " mW total\n";
  return 0;
}

struct GridArgs {
  std::string tau_grid, depth_grid, seed_grid, loss_list;
  bool tau_set = false, depth_set = false, seed_set = false, loss_set = false;
};

int cmd_explore(const DatasetOptions& data_opts, const GridArgs& args,
                double budget_mw, const std::string& tech_path,
                const std::string& out_dir, int jobs) {
  ExplorationGrid grid = default_grid();
  if (args.tau_set) {
    grid.tau_values = parse_double_grid(args.tau_grid);
  }
  if (args.depth_set) {
    grid.depth_values = parse_int_grid(args.depth_grid);
  }
  if (args.seed_set) {
    grid.seeds.clear();
    for (int s : parse_int_grid(args.seed_grid)) {
      grid.seeds.push_back(static_cast<std::uint64_t>(s));
    }
  }
  if (args.loss_set) {
    grid.loss_thresholds = parse_double_grid(args.loss_list);
  }
  grid.validate();

  QuantizedDataset ds = prepare_dataset(data_opts);
  CostModelParams params = load_tech(tech_path);
  if (budget_mw > 0.0) {
    params.power_budget = budget_mw;
  }
  fs::create_directories(out_dir);

  const auto start = std::chrono::steady_clock::now();
  ExplorationResult result = run_sweep(ds, grid, params, jobs);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  log_event({{"event", "sweep_done"},
             {"grid_points", result.grid_points.size()},
             {"elapsed_ms", elapsed}});

  save_json((fs::path(out_dir) / "exploration.json").string(),
            exploration_to_json(result, grid));
  save_text((fs::path(out_dir) / "exploration.csv").string(),
            exploration_csv(result));
  save_text((fs::path(out_dir) / "summary.md").string(),
            exploration_markdown(result));
  save_json((fs::path(out_dir) / "baseline_tree.json").string(),
            tree_to_json(result.baseline.tree));
  for (const auto& sel : result.selected) {
    const DecisionTree& tree =
        sel.grid_index < 0
            ? result.baseline.tree
            : result.grid_points[static_cast<std::size_t>(sel.grid_index)].tree;
    save_json((fs::path(out_dir) /
               ("selected_loss" + loss_tag(sel.loss_threshold) + "_tree.json"))
                  .string(),
              tree_to_json(tree));
  }

  json config = dataset_config_json(data_opts);
  config["tau_values"] = grid.tau_values;
  config["depth_values"] = grid.depth_values;
  config["seeds"] = grid.seeds;
  config["loss_thresholds"] = grid.loss_thresholds;
  config["budget_mw"] = params.power_budget;
  config["tech_config"] = tech_path;
  config["jobs"] = jobs;
  write_run_manifest(out_dir, "explore", config, &ds);

  std::cout << "baseline accuracy " << result.baseline.accuracy << " (depth "
            << result.baseline.depth << "), " << result.grid_points.size()
            << " grid points\n";
  for (const auto& sel : result.selected) {
    std::cout << "loss " << sel.loss_threshold * 100.0 << "%: ";
    if (sel.grid_index < 0) {
      const auto& r = result.baseline.report;
      std::cout << "kept unaware design, power " << r.total_power << " mW, "
                << (r.meets_budget ? "self-powered" : "over budget") << "\n";
      continue;
    }
    const auto& p = result.grid_points[static_cast<std::size_t>(sel.grid_index)];
    ReductionFactors vs = compare_reports(p.report, result.baseline.report);
    std::cout << "tau " << p.tau << " depth " << p.depth << " acc " << p.accuracy
              << " power " << p.report.total_power << " mW (" << vs.power_factor
              << "x), " << (p.report.meets_budget ? "self-powered" : "over budget")
              << "\n";
  }
  return 0;
}

int cmd_emit(const std::string& tree_path, const std::string& out_dir) {
  DecisionTree tree = tree_from_json(load_json(tree_path));
  LoweredTree lowered = lower_tree(tree);
  std::vector<AdcSpec> adcs = derive_adcs(lowered.requirements, lowered.bits);
  Netlist netlist = emit_netlist(tree, adcs, lowered.logic);

  fs::create_directories(out_dir);
  save_json((fs::path(out_dir) / "netlist.json").string(), netlist_to_json(netlist));
  export_structural_hdl(netlist, (fs::path(out_dir) / "netlist.v").string());

  json config{{"tree", tree_path},
              {"tree_crc32", crc32_hex(crc32_file(tree_path))}};
  write_run_manifest(out_dir, "emit", config, nullptr);
  log_event({{"event", "emit_done"},
             {"comparators", netlist.comparator_count},
             {"cells", netlist.cells.size()}});
  std::cout << netlist.comparator_count << " comparators, " << netlist.cells.size()
            << " cells\n";
  return 0;
}

int cmd_report(const std::string& ours_path, const std::string& baseline_path) {
  HardwareReport ours = report_from_json(load_json(ours_path));
  HardwareReport baseline = report_from_json(load_json(baseline_path));
  ReductionFactors factors = compare_reports(ours, baseline);
  log_event({{"event", "compare_done"},
             {"area_factor", factors.area_factor},
             {"power_factor", factors.power_factor}});
  std::printf("area reduction: %.3gx\npower reduction: %.3gx\n", factors.area_factor,
              factors.power_factor);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bespoke unary decision-tree classifier toolkit"};
  app.require_subcommand(1);

  // fetch
  auto* fetch = app.add_subcommand("fetch", "download/verify manifest datasets");
  std::string fetch_manifest = "data/manifest.json";
  std::string fetch_name;
  bool fetch_all = false;
  fetch->add_option("--manifest", fetch_manifest, "manifest file");
  fetch->add_option("--name", fetch_name, "dataset to fetch");
  fetch->add_flag("--all", fetch_all, "fetch every manifest entry");

  // train
  auto* train = app.add_subcommand("train", "train one tree and price it");
  DatasetOptions train_data;
  add_dataset_options(train, train_data);
  int train_depth = 4;
  double train_tau = 0.0;
  std::uint64_t train_seed = 1;
  std::string train_tech, train_out = "out";
  train->add_option("--depth", train_depth, "depth limit")->required();
  auto* tau_opt = train->add_option("--tau", train_tau,
                                    "Gini slack; enables hardware-aware training");
  train->add_option("--seed", train_seed, "training seed");
  train->add_option("--tech-config", train_tech, "technology config JSON");
  train->add_option("--out", train_out, "output directory");

  // explore
  auto* explore = app.add_subcommand("explore", "hyperparameter sweep and selection");
  DatasetOptions explore_data;
  add_dataset_options(explore, explore_data);
  GridArgs grid_args;
  std::string explore_tech;
  std::string explore_out = "out";
  double budget_mw = 0.0;
  int jobs = 1;
  auto* tau_grid_opt = explore->add_option("--tau-grid", grid_args.tau_grid,
                                           "tau grid, list or start:stop:step");
  auto* depth_grid_opt = explore->add_option(
      "--depths", grid_args.depth_grid, "depth grid, list or start:stop[:step]");
  auto* seed_grid_opt =
      explore->add_option("--seeds", grid_args.seed_grid, "seed list or range");
  auto* loss_opt = explore->add_option("--loss", grid_args.loss_list,
                                       "accuracy-loss thresholds (fractions)");
  explore->add_option("--budget-mw", budget_mw, "power budget in mW");
  explore->add_option("--tech-config", explore_tech, "technology config JSON");
  explore->add_option("--out", explore_out, "output directory");
  explore->add_option("--jobs", jobs, "parallel workers")->check(CLI::Range(1, 256));

  // emit
  auto* emit = app.add_subcommand("emit", "netlist + structural HDL from a tree");
  std::string emit_tree, emit_out = "out";
  emit->add_option("--tree", emit_tree, "tree JSON file")->required();
  emit->add_option("--out", emit_out, "output directory");

  // report
  auto* report = app.add_subcommand("report", "reduction factors between two reports");
  std::string ours_path, baseline_path;
  report->add_option("--ours", ours_path, "our report JSON")->required();
  report->add_option("--baseline", baseline_path, "baseline report JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (fetch->parsed()) {
      if (!fetch_all && fetch_name.empty()) {
        throw CLI::ValidationError("fetch needs --name or --all");
      }
      return cmd_fetch(fetch_manifest, fetch_name, fetch_all);
    }
    if (train->parsed()) {
      return cmd_train(train_data, train_depth, train_tau, tau_opt->count() > 0,
                       train_seed, train_tech, train_out);
    }
    if (explore->parsed()) {
      grid_args.tau_set = tau_grid_opt->count() > 0;
      grid_args.depth_set = depth_grid_opt->count() > 0;
      grid_args.seed_set = seed_grid_opt->count() > 0;
      grid_args.loss_set = loss_opt->count() > 0;
      return cmd_explore(explore_data, grid_args, budget_mw, explore_tech,
                         explore_out, jobs);
    }
    if (emit->parsed()) {
      return cmd_emit(emit_tree, emit_out);
    }
    if (report->parsed()) {
      return cmd_report(ours_path, baseline_path);
    }
  } catch (const std::exception& e) {
    log_event({{"event", "error"}, {"message", e.what()}});
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
