#include "dsrr/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dsrr/errors.hpp"
#include "json_writer.hpp"

namespace dsrr {

namespace {

constexpr int kFormatVersion = 1;
// Unlimited depth serializes as 0 to keep the document readable.
constexpr std::uint64_t kDepthUnlimitedJson = 0;

std::uint64_t depth_to_json(std::size_t depth) {
  return depth == kUnlimitedDepth ? kDepthUnlimitedJson : static_cast<std::uint64_t>(depth);
}
std::size_t depth_from_json(std::uint64_t depth) {
  return depth == kDepthUnlimitedJson ? kUnlimitedDepth : static_cast<std::size_t>(depth);
}

void write_strings(internal::JsonWriter& w, const std::vector<std::string>& values) {
  w.begin_array();
  for (const std::string& s : values) w.string(s);
  w.end_array();
}

void write_nodes(internal::JsonWriter& w, const std::vector<TreeNode>& nodes) {
  w.begin_array();
  for (const TreeNode& node : nodes) {
    w.begin_object();
    w.key("feature");
    w.integer(node.feature);
    w.key("threshold");
    w.number(node.threshold);
    w.key("left");
    w.integer(node.left);
    w.key("right");
    w.integer(node.right);
    w.key("counts");
    w.begin_array();
    for (std::int64_t c : node.class_counts) w.integer(c);
    w.end_array();
    w.key("label");
    w.integer(node.label);
    w.end_object();
  }
  w.end_array();
}

std::vector<TreeNode> read_nodes(const nlohmann::json& j) {
  std::vector<TreeNode> nodes;
  nodes.reserve(j.size());
  for (const auto& nj : j) {
    TreeNode node;
    node.feature = nj.at("feature").get<std::int32_t>();
    node.threshold = nj.at("threshold").get<double>();
    node.left = nj.at("left").get<std::int32_t>();
    node.right = nj.at("right").get<std::int32_t>();
    node.class_counts = nj.at("counts").get<std::vector<std::int64_t>>();
    node.label = nj.at("label").get<std::int32_t>();
    nodes.push_back(std::move(node));
  }
  if (nodes.empty()) throw DataError("model: tree without nodes");
  return nodes;
}

}  // namespace

std::string model_kind(const AnyModel& model) {
  if (std::holds_alternative<KnnModel>(model)) return "knn";
  if (std::holds_alternative<TreeModel>(model)) return "tree";
  return "forest";
}

std::string model_to_json(const AnyModel& model) {
  internal::JsonWriter w;
  w.begin_object();
  w.key("format");
  w.string("dsrr-model");
  w.key("version");
  w.integer(kFormatVersion);
  w.key("kind");
  w.string(model_kind(model));

  if (const auto* knn = std::get_if<KnnModel>(&model)) {
    w.key("k");
    w.uinteger(knn->k);
    w.key("feature_names");
    write_strings(w, knn->feature_names);
    w.key("classes");
    write_strings(w, knn->classes);
    w.key("mean");
    w.begin_array();
    for (double v : knn->mean) w.number(v);
    w.end_array();
    w.key("scale");
    w.begin_array();
    for (double v : knn->scale) w.number(v);
    w.end_array();
    w.key("rows");
    w.begin_array();
    for (const auto& row : knn->rows) {
      w.begin_array();
      for (double v : row) w.number(v);
      w.end_array();
    }
    w.end_array();
    w.key("row_classes");
    w.begin_array();
    for (std::int32_t c : knn->row_classes) w.integer(c);
    w.end_array();
  } else if (const auto* tree = std::get_if<TreeModel>(&model)) {
    w.key("feature_names");
    write_strings(w, tree->feature_names);
    w.key("classes");
    write_strings(w, tree->classes);
    w.key("nodes");
    write_nodes(w, tree->nodes);
  } else {
    const auto& forest = std::get<ForestModel>(model);
    w.key("n_trees");
    w.uinteger(forest.config.n_trees);
    w.key("max_depth");
    w.uinteger(depth_to_json(forest.config.max_depth));
    w.key("min_leaf");
    w.uinteger(forest.config.min_leaf);
    w.key("features_per_split");
    w.uinteger(forest.config.features_per_split);
    w.key("bootstrap");
    w.boolean(forest.config.bootstrap);
    w.key("master_seed");
    w.uinteger(forest.config.master_seed);
    w.key("tree_seeds");
    w.begin_array();
    for (std::uint64_t s : forest.tree_seeds) w.uinteger(s);
    w.end_array();
    w.key("feature_names");
    write_strings(w, forest.feature_names);
    w.key("classes");
    write_strings(w, forest.classes);
    w.key("trees");
    w.begin_array();
    for (const auto& tree_nodes : forest.trees) write_nodes(w, tree_nodes);
    w.end_array();
  }
  w.end_object();
  return w.take();
}

AnyModel model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model: invalid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "dsrr-model") {
      throw DataError("model: not a dsrr-model document");
    }
    if (j.at("version").get<int>() != kFormatVersion) {
      throw DataError("model: unsupported version");
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "knn") {
      KnnModel m;
      m.k = j.at("k").get<std::size_t>();
      m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
      m.classes = j.at("classes").get<std::vector<std::string>>();
      m.mean = j.at("mean").get<std::vector<double>>();
      m.scale = j.at("scale").get<std::vector<double>>();
      m.rows = j.at("rows").get<std::vector<std::vector<double>>>();
      m.row_classes = j.at("row_classes").get<std::vector<std::int32_t>>();
      if (m.rows.size() != m.row_classes.size() || m.k < 1 || m.k > m.rows.size()) {
        throw DataError("model: inconsistent knn document");
      }
      return m;
    }
    if (kind == "tree") {
      TreeModel m;
      m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
      m.classes = j.at("classes").get<std::vector<std::string>>();
      m.nodes = read_nodes(j.at("nodes"));
      return m;
    }
    if (kind == "forest") {
      ForestModel m;
      m.config.n_trees = j.at("n_trees").get<std::size_t>();
      m.config.max_depth = depth_from_json(j.at("max_depth").get<std::uint64_t>());
      m.config.min_leaf = j.at("min_leaf").get<std::size_t>();
      m.config.features_per_split = j.at("features_per_split").get<std::size_t>();
      m.config.bootstrap = j.at("bootstrap").get<bool>();
      m.config.master_seed = j.at("master_seed").get<std::uint64_t>();
      m.tree_seeds = j.at("tree_seeds").get<std::vector<std::uint64_t>>();
      m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
      m.classes = j.at("classes").get<std::vector<std::string>>();
      for (const auto& tj : j.at("trees")) m.trees.push_back(read_nodes(tj));
      if (m.trees.empty() || m.trees.size() != m.config.n_trees) {
        throw DataError("model: inconsistent forest document");
      }
      return m;
    }
    throw DataError("model: unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model: malformed document: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const AnyModel& model) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << model_to_json(model) << '\n';
  if (!out) throw DataError("write failed: " + path.string());
}

AnyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

std::vector<std::string> model_predict(const AnyModel& model, const FeatureTable& data) {
  if (const auto* knn = std::get_if<KnnModel>(&model)) return knn_predict(*knn, data);
  if (const auto* tree = std::get_if<TreeModel>(&model)) return tree_predict(*tree, data);
  return forest_predict(std::get<ForestModel>(model), data);
}

}  // namespace dsrr
