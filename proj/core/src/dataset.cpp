#include "dsrr/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dsrr/errors.hpp"
#include "dsrr/rng.hpp"

namespace dsrr {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.emplace_back(trim(line.substr(start)));
      break;
    }
    cells.emplace_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

bool parse_double(std::string_view cell, double& out) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && !cell.empty();
}

void format_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::vector<std::string> FeatureTable::label_set() const {
  std::set<std::string> s(labels.begin(), labels.end());
  return {s.begin(), s.end()};
}

FeatureTable FeatureTable::select_rows(std::span<const std::size_t> idx) const {
  FeatureTable out;
  out.feature_names = feature_names;
  out.label_name = label_name;
  out.columns.resize(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    out.columns[j].reserve(idx.size());
    for (std::size_t i : idx) out.columns[j].push_back(columns[j][i]);
  }
  out.labels.reserve(idx.size());
  for (std::size_t i : idx) out.labels.push_back(labels[i]);
  if (has_timestamps()) {
    out.timestamps.reserve(idx.size());
    for (std::size_t i : idx) out.timestamps.push_back(timestamps[i]);
  }
  if (!provenance.empty()) {
    out.provenance.reserve(idx.size());
    for (std::size_t i : idx) out.provenance.push_back(provenance[i]);
  }
  return out;
}

FeatureTable FeatureTable::select_columns(std::span<const std::size_t> idx) const {
  FeatureTable out;
  out.labels = labels;
  out.timestamps = timestamps;
  out.provenance = provenance;
  out.label_name = label_name;
  out.feature_names.reserve(idx.size());
  out.columns.reserve(idx.size());
  for (std::size_t j : idx) {
    out.feature_names.push_back(feature_names[j]);
    out.columns.push_back(columns[j]);
  }
  return out;
}

void FeatureTable::append(const FeatureTable& other) {
  if (feature_names != other.feature_names) {
    throw SchemaError("FeatureTable::append: feature names differ");
  }
  if (has_timestamps() != other.has_timestamps() && rows() > 0) {
    throw SchemaError("FeatureTable::append: timestamp presence differs");
  }
  for (std::size_t j = 0; j < columns.size(); ++j) {
    columns[j].insert(columns[j].end(), other.columns[j].begin(), other.columns[j].end());
  }
  labels.insert(labels.end(), other.labels.begin(), other.labels.end());
  timestamps.insert(timestamps.end(), other.timestamps.begin(), other.timestamps.end());
  provenance.insert(provenance.end(), other.provenance.begin(), other.provenance.end());
}

std::vector<LabelRule> default_label_rules() {
  return {{"vpn", "VPN", false}, {"non", "NonVPN", true}};
}

std::string normalize_label(std::string_view raw, std::span<const LabelRule> rules) {
  const std::string lowered = to_lower(trim(raw));
  for (const LabelRule& rule : rules) {
    if (rule.prefix ? lowered.starts_with(rule.pattern) : lowered == rule.pattern) {
      return rule.canonical;
    }
  }
  return std::string(trim(raw));
}

FeatureSchema FeatureSchema::iscx() {
  FeatureSchema schema;
  schema.feature_names = {
      "duration",
      "total_fiat", "min_fiat", "max_fiat", "mean_fiat",
      "total_biat", "min_biat", "max_biat", "mean_biat",
      "min_flowiat", "max_flowiat", "mean_flowiat", "std_flowiat",
      "min_active", "mean_active", "max_active", "std_active",
      "min_idle", "mean_idle", "max_idle", "std_idle",
      "flowBytesPerSecond", "flowPktsPerSecond",
  };
  schema.label_column = "class1";
  return schema;
}

FeatureTable load_flow_csv(const std::filesystem::path& path, const FeatureSchema& schema,
                           LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());

  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;
    have_header = true;
    break;
  }
  if (!have_header) throw DataError(path.string() + ": empty file");

  const std::vector<std::string> header = split_csv_line(line);
  std::vector<std::string> lowered(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) lowered[i] = to_lower(header[i]);

  auto find_column = [&](const std::string& name) -> std::size_t {
    const std::string want = to_lower(name);
    for (std::size_t i = 0; i < lowered.size(); ++i) {
      if (lowered[i] == want) return i;
    }
    return header.size();
  };

  const std::size_t label_idx = find_column(schema.label_column);
  if (label_idx == header.size()) {
    throw SchemaError(path.string() + ": missing label column '" + schema.label_column + "'");
  }

  std::size_t ts_idx = header.size();
  if (!schema.timestamp_column.empty()) {
    ts_idx = find_column(schema.timestamp_column);
    if (ts_idx == header.size()) {
      throw SchemaError(path.string() + ": missing timestamp column '" +
                        schema.timestamp_column + "'");
    }
  } else {
    ts_idx = find_column("timestamp");  // auto-detect, absent is fine
  }

  FeatureTable table;
  std::vector<std::size_t> feature_idx;
  if (!schema.feature_names.empty()) {
    for (const std::string& name : schema.feature_names) {
      const std::size_t idx = find_column(name);
      if (idx == header.size()) {
        throw SchemaError(path.string() + ": missing feature column '" + name + "'");
      }
      feature_idx.push_back(idx);
      table.feature_names.push_back(name);
    }
  } else {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i == label_idx || i == ts_idx) continue;
      feature_idx.push_back(i);
      table.feature_names.push_back(header[i]);
    }
  }
  if (feature_idx.empty()) throw SchemaError(path.string() + ": no feature columns");

  table.label_name = header[label_idx];
  table.columns.resize(feature_idx.size());
  const bool has_ts = ts_idx != header.size();

  std::size_t dropped = 0;
  std::size_t data_row = 0;
  std::vector<double> row_values(feature_idx.size());
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const std::size_t origin_row = data_row++;

    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      ++dropped;
      continue;
    }
    bool ok = true;
    for (std::size_t j = 0; j < feature_idx.size() && ok; ++j) {
      double v;
      ok = parse_double(cells[feature_idx[j]], v) && std::isfinite(v);
      row_values[j] = v;
    }
    double ts = 0.0;
    if (ok && has_ts) ok = parse_double(cells[ts_idx], ts) && std::isfinite(ts);
    if (!ok) {
      ++dropped;
      continue;
    }

    for (std::size_t j = 0; j < feature_idx.size(); ++j) {
      table.columns[j].push_back(row_values[j]);
    }
    table.labels.push_back(normalize_label(cells[label_idx], schema.label_rules));
    if (has_ts) table.timestamps.push_back(ts);
    table.provenance.push_back({path.string(), origin_row});
  }

  if (stats != nullptr) stats->dropped_rows = dropped;
  if (table.rows() == 0) throw DataError(path.string() + ": no usable rows");

  if (has_ts) {
    std::vector<std::size_t> order(table.rows());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return table.timestamps[a] < table.timestamps[b];
    });
    table = table.select_rows(order);
  }
  return table;
}

void write_flow_csv(const std::filesystem::path& path, const FeatureTable& table,
                    const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());

  std::string buf;
  if (!comment.empty()) {
    buf += "# ";
    buf += comment;
    buf += '\n';
  }
  for (std::size_t j = 0; j < table.feature_names.size(); ++j) {
    if (j > 0) buf += ',';
    buf += table.feature_names[j];
  }
  if (table.has_timestamps()) buf += ",timestamp";
  buf += ',';
  buf += table.label_name;
  buf += '\n';

  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t j = 0; j < table.features(); ++j) {
      if (j > 0) buf += ',';
      format_double(buf, table.columns[j][i]);
    }
    if (table.has_timestamps()) {
      buf += ',';
      format_double(buf, table.timestamps[i]);
    }
    buf += ',';
    buf += table.labels[i];
    buf += '\n';
  }
  out << buf;
  if (!out) throw DataError("write failed: " + path.string());
}

SplitIndices stratified_indices(std::span<const std::string> labels, double train_fraction,
                                std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("stratified split: train_fraction must be in (0, 1)");
  }

  std::vector<std::string> classes;
  {
    std::set<std::string> s(labels.begin(), labels.end());
    classes.assign(s.begin(), s.end());
  }

  SplitIndices out;
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == classes[ci]) idx.push_back(i);
    }
    if (idx.size() < 2) {
      throw DataError("stratified split: class '" + classes[ci] + "' has fewer than 2 rows");
    }
    Rng rng(derive_seed(seed, ci));
    rng.shuffle(idx);
    const auto n_train = static_cast<std::size_t>(
        std::llround(static_cast<double>(idx.size()) * train_fraction));
    out.train.insert(out.train.end(), idx.begin(), idx.begin() + static_cast<long>(n_train));
    out.test.insert(out.test.end(), idx.begin() + static_cast<long>(n_train), idx.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<FeatureTable, FeatureTable> stratified_split(const FeatureTable& table,
                                                       double train_fraction,
                                                       std::uint64_t seed) {
  const SplitIndices idx = stratified_indices(table.labels, train_fraction, seed);
  return {table.select_rows(idx.train), table.select_rows(idx.test)};
}

void SynthConfig::validate() const {
  if (n_blocks < 1) throw std::invalid_argument("SynthConfig: n_blocks must be >= 1");
  if (block_len < 2) throw std::invalid_argument("SynthConfig: block_len must be >= 2");
  if (n_features < 1) throw std::invalid_argument("SynthConfig: n_features must be >= 1");
  if (non_vpn.variance < 0 || vpn.variance < 0) {
    throw std::invalid_argument("SynthConfig: variances must be >= 0");
  }
}

FeatureTable synth_generate(const SynthConfig& config) {
  config.validate();
  const std::size_t n = config.n_blocks * config.block_len;
  const std::size_t burst_len = std::max<std::size_t>(1, config.block_len / 10);

  FeatureTable table;
  table.columns.resize(config.n_features);
  for (std::size_t j = 0; j < config.n_features; ++j) {
    table.feature_names.push_back("f" + std::to_string(j));
    Rng rng(derive_seed(config.seed, j));
    std::vector<double>& col = table.columns[j];
    col.reserve(n);
    for (std::size_t b = 0; b < config.n_blocks; ++b) {
      const RegimeParams& regime = (b % 2 == 1) ? config.vpn : config.non_vpn;
      const double sigma = std::sqrt(regime.variance);
      for (std::size_t i = 0; i < config.block_len; ++i) {
        double v = regime.level + sigma * rng.normal();
        if (i < burst_len) v += regime.burst_amplitude;
        col.push_back(v);
      }
    }
  }

  table.labels.reserve(n);
  table.provenance.reserve(n);
  for (std::size_t b = 0; b < config.n_blocks; ++b) {
    const char* label = (b % 2 == 1) ? "VPN" : "NonVPN";
    for (std::size_t i = 0; i < config.block_len; ++i) {
      table.labels.emplace_back(label);
      table.provenance.push_back({"synth", b * config.block_len + i});
    }
  }
  return table;
}

}  // namespace dsrr
