// dsrr: blockwise rescaled-range derivative features for flow records, with
// correlation pruning, classical learners and Pr/Rc/F1 evaluation.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dsrr/dataset.hpp"
#include "dsrr/errors.hpp"
#include "dsrr/json_io.hpp"
#include "dsrr/model_io.hpp"
#include "dsrr/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct IoOptions {
  std::vector<std::string> inputs;
  std::string schema;  // empty = infer from header, "iscx", or a schema file
  std::string label_col;
  std::string timestamp_col;
};

struct DsrrFlags {
  std::size_t window = 40;
  std::size_t step = 1;
  std::string edge = "shrink";
  std::string mode = "replace";

  dsrr::DsrrConfig to_config() const {
    dsrr::DsrrConfig config;
    config.window = window;
    config.step = step;
    config.edge = edge == "drop" ? dsrr::EdgePolicy::kDrop : dsrr::EdgePolicy::kShrink;
    config.mode = mode == "augment" ? dsrr::TransformMode::kAugment
                                    : dsrr::TransformMode::kReplace;
    return config;
  }
};

struct ModelFlags {
  std::string model = "rf";
  std::size_t k = 5;
  std::size_t trees = 100;
  std::size_t max_depth = 0;  // 0 = unlimited
  std::size_t min_leaf = 1;
  std::size_t features_per_split = 0;  // 0 = ceil(sqrt(F))
  bool no_bootstrap = false;

  dsrr::ModelKind kind() const {
    if (model == "knn") return dsrr::ModelKind::kKnn;
    if (model == "tree") return dsrr::ModelKind::kTree;
    return dsrr::ModelKind::kForest;
  }
  dsrr::TreeConfig tree_config() const {
    return {max_depth == 0 ? dsrr::kUnlimitedDepth : max_depth, min_leaf};
  }
  dsrr::ForestConfig forest_config() const {
    dsrr::ForestConfig config;
    config.n_trees = trees;
    config.max_depth = max_depth == 0 ? dsrr::kUnlimitedDepth : max_depth;
    config.min_leaf = min_leaf;
    config.features_per_split = features_per_split;
    config.bootstrap = !no_bootstrap;
    return config;
  }
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

dsrr::FeatureSchema parse_schema_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dsrr::SchemaError("cannot open schema file " + path);
  dsrr::FeatureSchema schema;
  schema.label_column.clear();
  std::string line;
  while (std::getline(in, line)) {
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw dsrr::SchemaError("schema file: expected 'key = value', got '" + text + "'");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key == "label_column") {
      schema.label_column = value;
    } else if (key == "timestamp_column") {
      schema.timestamp_column = value;
    } else if (key == "features") {
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        const std::string name = trim(item);
        if (!name.empty()) schema.feature_names.push_back(name);
      }
    } else {
      throw dsrr::SchemaError("schema file: unknown key '" + key + "'");
    }
  }
  if (schema.label_column.empty()) schema.label_column = "class1";
  return schema;
}

dsrr::FeatureSchema resolve_schema(const IoOptions& io) {
  dsrr::FeatureSchema schema;
  if (io.schema == "iscx") {
    schema = dsrr::FeatureSchema::iscx();
  } else if (!io.schema.empty()) {
    schema = parse_schema_file(io.schema);
  }
  if (!io.label_col.empty()) schema.label_column = io.label_col;
  if (!io.timestamp_col.empty()) schema.timestamp_column = io.timestamp_col;
  return schema;
}

// Applies "key = value" lines to the options of the parsed subcommand.
// Values given on the command line win; file values only fill the gaps.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dsrr::DataError("cannot open config file " + path);
  std::string line;
  while (std::getline(in, line)) {
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config file: expected 'key = value', got '" + text + "'");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    CLI::Option* option = cmd->get_option_no_throw("--" + key);
    if (option == nullptr) {
      throw std::invalid_argument("config file: unknown key '" + key + "'");
    }
    if (option->count() > 0) continue;
    option->add_result(value.empty() ? "true" : value);
    option->run_callback();
  }
}

void require_value(bool present, const char* what) {
  if (!present) {
    throw std::invalid_argument(std::string("missing required option ") + what);
  }
}

// Multiple --input files concatenate in argument order; each file is ordered
// by its own timestamp column first (when present).
dsrr::FeatureTable load_inputs(const IoOptions& io, std::size_t* dropped_total) {
  require_value(!io.inputs.empty(), "--input");
  const dsrr::FeatureSchema schema = resolve_schema(io);
  dsrr::FeatureTable table;
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < io.inputs.size(); ++i) {
    dsrr::LoadStats stats;
    dsrr::FeatureTable part = dsrr::load_flow_csv(io.inputs[i], schema, &stats);
    dropped += stats.dropped_rows;
    if (i == 0) {
      table = std::move(part);
    } else {
      table.append(part);
    }
  }
  if (dropped_total != nullptr) *dropped_total = dropped;
  return table;
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw dsrr::DataError("cannot write " + path.string());
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw dsrr::DataError("write failed: " + path.string());
}

void print_load_summary(const dsrr::FeatureTable& table, std::size_t dropped) {
  std::printf("rows: %zu (%zu dropped), features: %zu\n", table.rows(), dropped,
              table.features());
}

void print_partial_summary(const dsrr::TransformStats& stats) {
  if (stats.partial_samples == 0) {
    std::printf("partial block: none\n");
  } else {
    std::printf("partial block: %zu samples (%s)\n", stats.partial_samples,
                stats.partial_dropped ? "zero-filled" : "shrunk");
  }
}

std::string dsrr_comment(const DsrrFlags& flags) {
  return "dsrr: w=" + std::to_string(flags.window) + ",a=" + std::to_string(flags.step) +
         ",mode=" + flags.mode;
}

// --- subcommand runners ----------------------------------------------------

struct TransformArgs {
  IoOptions io;
  DsrrFlags dsrr;
  std::string out;
};

int run_transform(const TransformArgs& args) {
  require_value(!args.out.empty(), "--out");
  std::size_t dropped = 0;
  const dsrr::FeatureTable table = load_inputs(args.io, &dropped);
  print_load_summary(table, dropped);

  dsrr::TransformStats stats;
  const dsrr::FeatureTable out = dsrr::transform_table(table, args.dsrr.to_config(), &stats);
  print_partial_summary(stats);

  dsrr::write_flow_csv(args.out, out, dsrr_comment(args.dsrr));
  std::printf("wrote %s (%zu rows)\n", args.out.c_str(), out.rows());
  return 0;
}

struct CorrelateArgs {
  IoOptions io;
  double tau_threshold = 0.87;
  int bins = 10;
  bool no_phik_one = false;
  std::string out = "correlation.json";
  std::string matrix_prefix;  // default: out path without extension
};

int run_correlate(const CorrelateArgs& args) {
  std::size_t dropped = 0;
  const dsrr::FeatureTable table = load_inputs(args.io, &dropped);
  print_load_summary(table, dropped);

  dsrr::PruneOptions options;
  options.tau_threshold = args.tau_threshold;
  options.n_bins = args.bins;
  options.drop_phik_one = !args.no_phik_one;
  const dsrr::PruneResult result = dsrr::prune_features(table, options);

  write_text_file(args.out, dsrr::to_json(result.report));
  const std::string prefix =
      args.matrix_prefix.empty() ? fs::path(args.out).replace_extension("").string()
                                 : args.matrix_prefix;
  write_text_file(prefix + "_phi_k.csv",
                  dsrr::matrix_csv(result.report.phi_k, result.report.feature_names));
  write_text_file(prefix + "_kendall_tau.csv",
                  dsrr::matrix_csv(result.report.kendall, result.report.feature_names));

  std::printf("kept %zu of %zu features\n", result.kept.size(), table.features());
  for (const dsrr::DroppedFeature& d : result.report.dropped) {
    std::printf("dropped %s (%s vs %s)\n", d.name.c_str(),
                dsrr::drop_reason_name(d.reason).c_str(),
                result.report.feature_names[d.against].c_str());
  }
  std::printf("wrote %s\n", args.out.c_str());
  return 0;
}

struct TrainArgs {
  IoOptions io;
  ModelFlags model;
  std::uint64_t seed = 0;
  std::string out = "model.json";
};

int run_train(const TrainArgs& args) {
  std::size_t dropped = 0;
  const dsrr::FeatureTable table = load_inputs(args.io, &dropped);
  print_load_summary(table, dropped);

  dsrr::AnyModel model;
  switch (args.model.kind()) {
    case dsrr::ModelKind::kKnn:
      model = dsrr::knn_fit(table, args.model.k);
      break;
    case dsrr::ModelKind::kTree:
      model = dsrr::tree_fit(table, args.model.tree_config());
      break;
    case dsrr::ModelKind::kForest: {
      dsrr::ForestConfig config = args.model.forest_config();
      config.master_seed = args.seed;
      model = dsrr::forest_fit(table, config);
      break;
    }
  }
  dsrr::save_model(args.out, model);
  std::printf("trained %s on %zu rows, wrote %s\n", dsrr::model_kind(model).c_str(),
              table.rows(), args.out.c_str());
  return 0;
}

struct EvaluateArgs {
  IoOptions io;
  std::string model_file;
  std::string out = "metrics.json";
  std::string csv_out;
  std::string method;  // CSV row tag; defaults to the model kind
};

int run_evaluate(const EvaluateArgs& args) {
  require_value(!args.model_file.empty(), "--model-file");
  std::size_t dropped = 0;
  const dsrr::FeatureTable table = load_inputs(args.io, &dropped);
  print_load_summary(table, dropped);

  const dsrr::AnyModel model = dsrr::load_model(args.model_file);
  const std::vector<std::string> predictions = dsrr::model_predict(model, table);
  const dsrr::MetricsReport report = dsrr::metrics(dsrr::confusion(table.labels, predictions));

  write_text_file(args.out, dsrr::to_json(report));
  const std::string method = args.method.empty() ? dsrr::model_kind(model) : args.method;
  if (!args.csv_out.empty()) {
    write_text_file(args.csv_out, dsrr::metrics_csv_header() + "\n" +
                                      dsrr::metrics_csv_row(method, 0, 0, report));
  }
  std::printf("%s: precision %.4f recall %.4f f1 %.4f accuracy %.4f\n", method.c_str(),
              report.precision, report.recall, report.f1, report.accuracy);
  return 0;
}

struct PipelineArgs {
  IoOptions io;
  DsrrFlags dsrr;
  ModelFlags model;
  double train_fraction = 0.7;
  std::uint64_t seed = 0;
  double tau_threshold = 0.87;
  int bins = 10;
  bool no_prune = false;
  bool no_phik_one = false;
  bool baseline = false;
  bool transform_after_split = false;
  std::string out = "metrics.json";
  std::string csv_out;
  std::string correlation_out;
};

dsrr::PipelineOptions pipeline_options(const PipelineArgs& args, bool apply_dsrr) {
  dsrr::PipelineOptions options;
  options.dsrr = args.dsrr.to_config();
  options.apply_dsrr = apply_dsrr;
  options.transform_after_split = args.transform_after_split;
  options.prune = !args.no_prune;
  options.prune_options.tau_threshold = args.tau_threshold;
  options.prune_options.n_bins = args.bins;
  options.prune_options.drop_phik_one = !args.no_phik_one;
  options.model = args.model.kind();
  options.knn_k = args.model.k;
  options.tree = args.model.tree_config();
  options.forest = args.model.forest_config();
  options.train_fraction = args.train_fraction;
  options.seed = args.seed;
  return options;
}

int run_pipeline_cmd(const PipelineArgs& args) {
  std::size_t dropped = 0;
  const dsrr::FeatureTable table = load_inputs(args.io, &dropped);
  print_load_summary(table, dropped);

  struct Run {
    std::string method;
    dsrr::PipelineRun result;
  };
  std::vector<Run> runs;
  if (args.baseline) {
    const dsrr::PipelineOptions raw = pipeline_options(args, false);
    runs.push_back({dsrr::method_label(raw), dsrr::run_pipeline(table, raw)});
  }
  const dsrr::PipelineOptions main_options = pipeline_options(args, true);
  runs.push_back({dsrr::method_label(main_options), dsrr::run_pipeline(table, main_options)});

  // Combined JSON document, one entry per run.
  std::string json = "{\"runs\":[";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (i > 0) json += ',';
    json += "{\"method\":\"" + runs[i].method + "\"";
    json += ",\"w\":" + std::to_string(args.dsrr.window);
    json += ",\"a\":" + std::to_string(args.dsrr.step);
    json += ",\"train_rows\":" + std::to_string(runs[i].result.train_rows);
    json += ",\"test_rows\":" + std::to_string(runs[i].result.test_rows);
    json += ",\"kept_features\":[";
    for (std::size_t j = 0; j < runs[i].result.kept_features.size(); ++j) {
      if (j > 0) json += ',';
      json += '"' + runs[i].result.kept_features[j] + '"';
    }
    json += "],\"metrics\":" + dsrr::to_json(runs[i].result.metrics) + "}";
  }
  json += "]}";
  write_text_file(args.out, json);

  if (!args.csv_out.empty()) {
    std::string csv = dsrr::metrics_csv_header() + "\n";
    for (const Run& run : runs) {
      csv += dsrr::metrics_csv_row(run.method, args.dsrr.window, args.dsrr.step,
                                   run.result.metrics) +
             "\n";
    }
    write_text_file(args.csv_out, csv);
  }
  if (!args.correlation_out.empty()) {
    const dsrr::PipelineRun& last = runs.back().result;
    if (last.correlation.has_value()) {
      write_text_file(args.correlation_out, dsrr::to_json(*last.correlation));
    }
  }

  std::printf("%-18s %9s %9s %9s %9s\n", "method", "precision", "recall", "f1", "accuracy");
  for (const Run& run : runs) {
    const dsrr::MetricsReport& m = run.result.metrics;
    std::printf("%-18s %9.4f %9.4f %9.4f %9.4f\n", run.method.c_str(), m.precision, m.recall,
                m.f1, m.accuracy);
  }
  if (args.baseline && runs.size() == 2) {
    std::printf("accuracy gain over raw features: %+.4f\n",
                runs[1].result.metrics.accuracy - runs[0].result.metrics.accuracy);
  }
  std::printf("wrote %s\n", args.out.c_str());
  return 0;
}

struct SynthArgs {
  std::size_t blocks = 40;
  std::size_t block_len = 50;
  std::size_t features = 4;
  double level0 = 0.0, level1 = 0.0;
  double var0 = 1.0, var1 = 1.0;
  double burst0 = 0.0, burst1 = 10.0;
  std::uint64_t seed = 0;
  std::string out = "synth.csv";
};

int run_synth(const SynthArgs& args) {
  dsrr::SynthConfig config;
  config.n_blocks = args.blocks;
  config.block_len = args.block_len;
  config.n_features = args.features;
  config.non_vpn = {args.level0, args.var0, args.burst0};
  config.vpn = {args.level1, args.var1, args.burst1};
  config.seed = args.seed;
  const dsrr::FeatureTable table = dsrr::synth_generate(config);
  dsrr::write_flow_csv(args.out, table);
  std::printf("wrote %s (%zu rows, %zu features)\n", args.out.c_str(), table.rows(),
              table.features());
  return 0;
}

// --- option wiring ----------------------------------------------------------

void add_io_options(CLI::App* cmd, IoOptions& io) {
  cmd->add_option("--input,-i", io.inputs, "Input CSV file(s), concatenated in order");
  cmd->add_option("--schema", io.schema,
                  "Feature schema: 'iscx', a schema file, or omit to infer from the header");
  cmd->add_option("--label-col", io.label_col, "Label column name (default class1)");
  cmd->add_option("--timestamp-col", io.timestamp_col, "Timestamp column name");
}

void add_dsrr_options(CLI::App* cmd, DsrrFlags& flags) {
  cmd->add_option("--window,-w", flags.window, "Block size w (default 40)");
  cmd->add_option("--step,-a", flags.step, "Prefix step a (default 1)");
  cmd->add_option("--edge", flags.edge, "Trailing partial block policy")
      ->check(CLI::IsMember({"shrink", "drop"}));
  cmd->add_option("--mode", flags.mode, "Column handling")
      ->check(CLI::IsMember({"replace", "augment"}));
}

void add_model_options(CLI::App* cmd, ModelFlags& flags) {
  cmd->add_option("--model", flags.model, "Classifier (default rf)")
      ->check(CLI::IsMember({"knn", "tree", "rf"}));
  cmd->add_option("--k", flags.k, "kNN neighbour count (default 5)");
  cmd->add_option("--trees", flags.trees, "Forest size (default 100)");
  cmd->add_option("--max-depth", flags.max_depth, "Tree depth cap, 0 = unlimited");
  cmd->add_option("--min-leaf", flags.min_leaf, "Minimum samples per leaf (default 1)");
  cmd->add_option("--features-per-split", flags.features_per_split,
                  "Features tried per split, 0 = ceil(sqrt(F))");
  cmd->add_flag("--no-bootstrap", flags.no_bootstrap, "Train each tree on the full set");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DSRR flow-feature toolkit: rescaled-range derivative features, "
               "correlation pruning, classical classifiers"};
  app.require_subcommand(1);

  std::string config_path;
  auto add_config_option = [&config_path](CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "Read defaults from a 'key = value' file; flags override");
  };

  TransformArgs transform_args;
  auto* transform = app.add_subcommand("transform", "Apply the blockwise R/S derivative");
  add_io_options(transform, transform_args.io);
  add_dsrr_options(transform, transform_args.dsrr);
  transform->add_option("--out,-o", transform_args.out, "Output CSV");
  add_config_option(transform);

  CorrelateArgs correlate_args;
  auto* correlate = app.add_subcommand("correlate", "Phi_k / Kendall-tau analysis and pruning");
  add_io_options(correlate, correlate_args.io);
  correlate->add_option("--tau-threshold", correlate_args.tau_threshold,
                        "Drop pairs with |tau| above this (default 0.87)");
  correlate->add_option("--bins", correlate_args.bins, "Quantile bins for phi_k (default 10)");
  correlate->add_flag("--no-phik-one", correlate_args.no_phik_one,
                      "Skip the phi_k == 1 duplicate drop");
  correlate->add_option("--out,-o", correlate_args.out, "Report JSON path");
  correlate->add_option("--matrix-prefix", correlate_args.matrix_prefix,
                        "Prefix for the matrix CSVs (default: report path stem)");
  add_config_option(correlate);

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "Fit a model on a feature CSV");
  add_io_options(train, train_args.io);
  add_model_options(train, train_args.model);
  train->add_option("--seed", train_args.seed, "Master seed (default 0)");
  train->add_option("--out,-o", train_args.out, "Model JSON path");
  add_config_option(train);

  EvaluateArgs evaluate_args;
  auto* evaluate = app.add_subcommand("evaluate", "Score a saved model on a feature CSV");
  add_io_options(evaluate, evaluate_args.io);
  evaluate->add_option("--model-file", evaluate_args.model_file, "Model JSON path");
  evaluate->add_option("--out,-o", evaluate_args.out, "Metrics JSON path");
  evaluate->add_option("--csv-out", evaluate_args.csv_out, "Optional metrics CSV row");
  evaluate->add_option("--method-name", evaluate_args.method, "Method tag for the CSV row");
  add_config_option(evaluate);

  PipelineArgs pipeline_args;
  auto* pipeline = app.add_subcommand(
      "pipeline", "Full chain: transform, prune, split, fit, evaluate");
  add_io_options(pipeline, pipeline_args.io);
  add_dsrr_options(pipeline, pipeline_args.dsrr);
  add_model_options(pipeline, pipeline_args.model);
  pipeline->add_option("--train-fraction", pipeline_args.train_fraction,
                       "Stratified train share (default 0.7)");
  pipeline->add_option("--seed", pipeline_args.seed, "Master seed (default 0)");
  pipeline->add_option("--tau-threshold", pipeline_args.tau_threshold,
                       "Kendall prune threshold (default 0.87)");
  pipeline->add_option("--bins", pipeline_args.bins, "Quantile bins for phi_k (default 10)");
  pipeline->add_flag("--no-prune", pipeline_args.no_prune, "Skip correlation pruning");
  pipeline->add_flag("--no-phik-one", pipeline_args.no_phik_one,
                     "Skip the phi_k == 1 duplicate drop");
  pipeline->add_flag("--baseline", pipeline_args.baseline,
                     "Also run the raw-feature pipeline for comparison");
  pipeline->add_flag("--transform-after-split", pipeline_args.transform_after_split,
                     "Transform the train and test parts separately");
  pipeline->add_option("--out,-o", pipeline_args.out, "Metrics JSON path");
  pipeline->add_option("--csv-out", pipeline_args.csv_out, "Metrics CSV path");
  pipeline->add_option("--correlation-out", pipeline_args.correlation_out,
                       "Correlation report JSON path");
  add_config_option(pipeline);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate burst-vs-noise benchmark data");
  synth->add_option("--blocks", synth_args.blocks, "Number of alternating blocks (default 40)");
  synth->add_option("--block-len", synth_args.block_len, "Samples per block (default 50)");
  synth->add_option("--features", synth_args.features, "Feature columns (default 4)");
  synth->add_option("--level0", synth_args.level0, "NonVPN level (default 0)");
  synth->add_option("--level1", synth_args.level1, "VPN level (default 0)");
  synth->add_option("--var0", synth_args.var0, "NonVPN variance (default 1)");
  synth->add_option("--var1", synth_args.var1, "VPN variance (default 1)");
  synth->add_option("--burst0", synth_args.burst0, "NonVPN burst amplitude (default 0)");
  synth->add_option("--burst1,--burst", synth_args.burst1, "VPN burst amplitude (default 10)");
  synth->add_option("--seed", synth_args.seed, "Generator seed (default 0)");
  synth->add_option("--out,-o", synth_args.out, "Output CSV");
  add_config_option(synth);

  try {
    app.parse(argc, argv);
    CLI::App* active = nullptr;
    for (CLI::App* cmd : {transform, correlate, train, evaluate, pipeline, synth}) {
      if (cmd->parsed()) active = cmd;
    }
    if (active == nullptr) return kExitUsage;
    if (!config_path.empty()) apply_config_file(active, config_path);
    if (active == transform) return run_transform(transform_args);
    if (active == correlate) return run_correlate(correlate_args);
    if (active == train) return run_train(train_args);
    if (active == evaluate) return run_evaluate(evaluate_args);
    if (active == pipeline) return run_pipeline_cmd(pipeline_args);
    return run_synth(synth_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const dsrr::DataError& e) {
    std::cerr << "dsrr: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "dsrr: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "dsrr: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
