#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace unarydt {

/// How to interpret a CSV file: header presence and which column holds the
/// class label. When the file has a header the label column is found by
/// name; `label_index`, when non-negative, overrides the name lookup.
struct CsvSchema {
  bool has_header = true;
  std::string label_column = "class";
  int label_index = -1;
};

struct RawDataset {
  std::string name;
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> features;  // [sample][feature]
  std::vector<std::string> labels;
  std::uint32_t source_crc32 = 0;

  std::size_t num_samples() const { return features.size(); }
  std::size_t num_features() const { return feature_names.size(); }
  int num_classes() const;
};

enum class Partition : std::uint8_t { train = 0, test = 1 };

/// Dataset with features quantized to the N-bit grid: integer q stands for
/// the Q0.N value q/2^N. Labels are dense ids in [0, num_classes), assigned
/// by lexicographic order of the original class names.
struct QuantizedDataset {
  std::string name;
  int bits = 4;
  std::vector<std::vector<int>> features;  // values in [0, 2^bits - 1]
  std::vector<int> labels;
  std::vector<Partition> split;
  std::uint64_t seed = 0;
  int num_classes = 0;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;
  std::uint32_t source_crc32 = 0;

  std::size_t num_samples() const { return features.size(); }
  std::size_t num_features() const { return feature_names.size(); }
  int max_level() const { return (1 << bits) - 1; }
  std::vector<int> partition_indices(Partition p) const;
};

RawDataset load_csv(const std::string& path, const CsvSchema& schema = {});

/// Per-feature min-max scaling to [0,1] over the full dataset, then
/// rounding (half-up) onto the (2^bits - 1)-point grid. Constant columns
/// map to 0 everywhere.
std::vector<std::vector<int>> normalize_quantize(const RawDataset& ds, int bits);

/// normalize_quantize plus label encoding; all samples start tagged train.
QuantizedDataset make_quantized(const RawDataset& ds, int bits);

/// Stratified, seed-deterministic 70%/30% split. Per-class train counts are
/// allocated by largest remainder so the train total is round(0.7 * n).
QuantizedDataset split_train_test(const QuantizedDataset& ds, std::uint64_t seed);

}  // namespace unarydt
