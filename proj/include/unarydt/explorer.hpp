#pragma once

#include <cstdint>
#include <vector>

#include "unarydt/cost_model.hpp"
#include "unarydt/dataset.hpp"
#include "unarydt/trainer.hpp"

namespace unarydt {

struct ExplorationGrid {
  std::vector<double> tau_values;
  std::vector<int> depth_values;
  std::vector<std::uint64_t> seeds;
  std::vector<double> loss_thresholds;

  void validate() const;
};

/// The stock protocol: tau 0..0.03 step 0.005, depth 2..8, five seeds,
/// accuracy-loss thresholds 0% / 1% / 5%.
ExplorationGrid default_grid();

struct BaselineSelection {
  int depth = 0;
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  DecisionTree tree;
  HardwareReport report;
};

struct GridPoint {
  double tau = 0.0;
  int depth = 0;
  std::uint64_t seed = 0;  // best-accuracy seed for this (tau, depth)
  double accuracy = 0.0;
  DecisionTree tree;
  HardwareReport report;
};

/// Winner for one loss threshold. grid_index -1 means no sweep point met
/// the accuracy floor and the hardware-unaware baseline design is retained
/// unchanged (possible at desk scale, where 1% can be less than one test
/// sample).
struct Selection {
  double loss_threshold = 0.0;
  int grid_index = -1;
};

struct ExplorationResult {
  BaselineSelection baseline;
  std::vector<GridPoint> grid_points;  // ordered by (tau, depth)
  std::vector<Selection> selected;     // one per loss threshold
};

/// Train the conventional tree at every (depth, seed), score on the test
/// partition, and keep the most accurate run; ties resolve to the smallest
/// depth, then the smallest seed.
BaselineSelection run_baseline_selection(const QuantizedDataset& ds,
                                         const std::vector<int>& depths,
                                         const std::vector<std::uint64_t>& seeds,
                                         const CostModelParams& params);

/// Full brute-force sweep. Each (tau, depth) point retains its best-accuracy
/// seed. Points are independent and evaluated by `jobs` workers; the result
/// is keyed by grid coordinates so it does not depend on completion order.
/// For each loss threshold the qualifying point with the lowest total power
/// wins (ties: smaller area, then smaller tau, then smaller depth).
ExplorationResult run_sweep(const QuantizedDataset& ds, const ExplorationGrid& grid,
                            const CostModelParams& params, int jobs = 1);

struct ReductionFactors {
  double area_factor = 1.0;
  double power_factor = 1.0;
};

/// Report of the design a selection stands for: the winning grid point, or
/// the baseline when the selection fell back.
const HardwareReport& selected_report(const ExplorationResult& result,
                                      const Selection& selection);

/// How many times smaller `ours` is than `baseline` in total area/power.
ReductionFactors compare_reports(const HardwareReport& ours,
                                 const HardwareReport& baseline);

/// Lower, derive converters, price, and cross-check one trained tree.
/// Shared by the baseline path and every grid point.
GridPoint evaluate_design(DecisionTree tree, const QuantizedDataset& ds,
                          const CostModelParams& params);

}  // namespace unarydt
