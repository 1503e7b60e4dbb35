#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "dsrr/classifiers.hpp"

namespace dsrr {

using AnyModel = std::variant<KnnModel, TreeModel, ForestModel>;

// Versioned JSON document: {"format":"dsrr-model","version":1,"kind":...}.
std::string model_to_json(const AnyModel& model);
AnyModel model_from_json(const std::string& text);  // throws DataError

void save_model(const std::filesystem::path& path, const AnyModel& model);
AnyModel load_model(const std::filesystem::path& path);

std::vector<std::string> model_predict(const AnyModel& model, const FeatureTable& data);
std::string model_kind(const AnyModel& model);  // "knn" | "tree" | "forest"

}  // namespace dsrr
