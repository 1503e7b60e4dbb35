#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dsrr {

struct RowOrigin {
  std::string file;
  std::size_t row = 0;  // 0-based data row in the source file
};

/// Column-major table of named real-valued features with one label per row.
struct FeatureTable {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> columns;  // columns[j].size() == rows()
  std::vector<std::string> labels;
  std::vector<double> timestamps;  // empty when the source had none
  std::vector<RowOrigin> provenance;
  std::string label_name = "class1";

  std::size_t rows() const { return labels.size(); }
  std::size_t features() const { return columns.size(); }
  double at(std::size_t row, std::size_t col) const { return columns[col][row]; }
  bool has_timestamps() const { return !timestamps.empty(); }

  std::vector<std::string> label_set() const;  // sorted unique
  FeatureTable select_rows(std::span<const std::size_t> idx) const;
  FeatureTable select_columns(std::span<const std::size_t> idx) const;
  void append(const FeatureTable& other);  // same feature names required
};

/// One label-normalization rule. `pattern` is matched case-insensitively;
/// with `prefix` set it matches any label starting with it.
struct LabelRule {
  std::string pattern;
  std::string canonical;
  bool prefix = false;
};

std::vector<LabelRule> default_label_rules();
std::string normalize_label(std::string_view raw, std::span<const LabelRule> rules);

struct FeatureSchema {
  // Empty = take every column not claimed as label or timestamp.
  std::vector<std::string> feature_names;
  std::string label_column = "class1";
  // Empty = auto-detect a column literally named "timestamp".
  std::string timestamp_column;
  std::vector<LabelRule> label_rules = default_label_rules();

  /// The 23 ISCX flow features (duration, fiat/biat totals and extremes,
  /// flowiat/active/idle statistics, byte and packet rates).
  static FeatureSchema iscx();
};

struct LoadStats {
  std::size_t dropped_rows = 0;  // non-finite or unparseable rows
};

/// Reads a comma-separated file with a header row. Rows with non-finite or
/// unparseable numerics are dropped and counted; labels are normalized via
/// the schema's rules; rows are stably sorted by timestamp when one exists.
/// Leading '#' comment lines are skipped.
FeatureTable load_flow_csv(const std::filesystem::path& path,
                           const FeatureSchema& schema = {},
                           LoadStats* stats = nullptr);

/// Writes the table in the dialect the loader reads. A non-empty `comment`
/// goes first as a "# ..." line. Floats carry 17 significant digits.
void write_flow_csv(const std::filesystem::path& path, const FeatureTable& table,
                    const std::string& comment = "");

struct SplitIndices {
  std::vector<std::size_t> train, test;
};

/// Seeded per-class shuffle; train takes round(class_count * fraction) rows
/// of each class; both parts keep the original relative row order.
SplitIndices stratified_indices(std::span<const std::string> labels,
                                double train_fraction, std::uint64_t seed);
std::pair<FeatureTable, FeatureTable> stratified_split(const FeatureTable& table,
                                                       double train_fraction,
                                                       std::uint64_t seed);

struct RegimeParams {
  double level = 0.0;
  double variance = 1.0;
  double burst_amplitude = 0.0;
};

/// Alternating-block generator: even blocks are stationary NonVPN noise, odd
/// blocks are VPN noise with a level burst over the first tenth of the block.
/// Raw values barely separate the classes; the blockwise R/S derivative does.
struct SynthConfig {
  std::size_t n_blocks = 40;
  std::size_t block_len = 50;
  std::size_t n_features = 4;
  RegimeParams non_vpn{};                // even blocks
  RegimeParams vpn{0.0, 1.0, 10.0};      // odd blocks
  std::uint64_t seed = 0;

  void validate() const;
};

FeatureTable synth_generate(const SynthConfig& config);

}  // namespace dsrr
